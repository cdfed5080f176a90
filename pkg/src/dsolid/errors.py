"""Exception types shared across the package."""

from __future__ import annotations


class DsolidError(Exception):
    """Base class for every error raised by this package."""


class ModulusError(DsolidError):
    """Mixed cyclotomic moduli in a single arithmetic operation."""


class SignatureError(DsolidError):
    """Monomial symmetries over different ambient signatures were combined."""


class BoundExceeded(DsolidError):
    """Group closure grew past the configured element bound."""


class DivisibilityError(DsolidError):
    """A requested subgroup order does not divide the group order."""


class SubgroupError(DsolidError):
    """An argument expected to be a subgroup is not one."""


class NormalityError(DsolidError):
    """A quotient was requested by a non-normal subgroup."""


class NotASymmetry(DsolidError):
    """A transformation does not preserve the defining polynomial."""


class NotDiagonal(DsolidError):
    """Eigenvalues were requested for a non-diagonal matrix."""


class ConventionMismatch(DsolidError):
    """A declared conjugation relation holds only under the opposite
    permutation-direction convention."""


class InvalidScenario(DsolidError):
    """Cover data that violates the genus bookkeeping relation."""


class UnsupportedParameter(DsolidError):
    """A parameter outside the implemented finite range."""


class InternalInconsistency(DsolidError):
    """An exact invariant failed; indicates a bug, not bad input."""


class ReducibleSummand(DsolidError):
    """An operation requiring irreducible summands received a reducible one."""


class CertificateError(DsolidError):
    """Malformed, empty, or non-validating certificate data."""


class ModelError(DsolidError):
    """Base class for model-file problems (maps to CLI exit code 2)."""


class ModelSyntaxError(ModelError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DegreeError(ModelError):
    """A defining-polynomial term is not quasi-homogeneous of the required degree."""


class UnknownVariableError(ModelError):
    """The defining polynomial mentions a variable outside the coordinate list."""

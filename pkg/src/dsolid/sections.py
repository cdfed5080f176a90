"""Action of a monomial symmetry group on the ten degree-2 section monomials.

For a degree-4 hypersurface in P(1,1,1,1,2) the sections of the anticanonical
sheaf are modeled by the ten degree-2 monomials in the weight-1 coordinates.
A symmetry g acts on a monomial m by the twisted substitution

    rho(g)(m) = (m o g) * lambda(g) / det(g),

where m o g substitutes x_i -> zeta^e_i x_perm[i], lambda(g) is the scalar by
which g rescales the defining polynomial, and det(g) is the determinant of
the 5x5 coordinate matrix (permutation sign times the product of all
coordinate scalars).  The twist makes the class of g modulo weighted
rescaling act consistently, and rho is a homomorphism for the composition
order used by :mod:`dsolid.groups`.

The basis order is frozen: the four squares x1^2..x4^2, then the cyclically
adjacent products x1x2, x2x3, x3x4, x1x4, then the diagonal pair x1x3, x2x4.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .cyclotomic import CycInt, RootOfUnity
from .errors import (
    InternalInconsistency,
    NotASymmetry,
    NotDiagonal,
    ReducibleSummand,
    SignatureError,
)
from .groups import AmbientSignature, GroupTable, MonomialSymmetry


@dataclass(frozen=True)
class QuarticTerm:
    """One term of the defining polynomial: coefficient * x^multi * y^power."""

    coefficient: int
    x_powers: tuple[int, ...]
    y_power: int

    def weighted_degree(self) -> int:
        return sum(self.x_powers) + 2 * self.y_power


@dataclass(frozen=True)
class VarietyModel:
    """A quasi-homogeneous degree-4 hypersurface in P(1,...,1,2)."""

    signature: AmbientSignature
    terms: tuple[QuarticTerm, ...]

    def __post_init__(self):
        zero_x = (0,) * self.signature.x_count
        has_y2 = False
        for term in self.terms:
            if term.weighted_degree() != 4:
                raise ValueError(
                    f"term {term} has weighted degree {term.weighted_degree()}, expected 4"
                )
            if term.x_powers == zero_x and term.y_power == 2:
                has_y2 = term.coefficient == 1
        if not has_y2:
            raise ValueError("the defining polynomial must contain y^2 with coefficient 1")


def degree2_basis(signature: AmbientSignature) -> tuple[tuple[int, ...], ...]:
    """The frozen ordering of the degree-2 monomials in x1..x4."""
    if signature.x_count != 4:
        raise SignatureError("the section basis is defined for four weight-1 coordinates")
    squares = [tuple(2 if j == i else 0 for j in range(4)) for i in range(4)]
    adjacent = [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (1, 0, 0, 1)]
    diagonal = [(1, 0, 1, 0), (0, 1, 0, 1)]
    return tuple(squares + adjacent + diagonal)


def basis_names(signature: AmbientSignature) -> tuple[str, ...]:
    names = []
    for mono in degree2_basis(signature):
        parts = []
        for i, e in enumerate(mono):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        names.append("*".join(parts))
    return tuple(names)


@dataclass(frozen=True)
class RepMatrix:
    """A generalized permutation matrix: basis vector j maps to
    zeta^exponents[j] times basis vector targets[j]."""

    modulus: int
    targets: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.targets) != list(range(len(self.targets))):
            raise ValueError("targets must form a bijection")
        object.__setattr__(
            self, "exponents", tuple(e % self.modulus for e in self.exponents)
        )

    @classmethod
    def identity(cls, modulus: int, dim: int) -> "RepMatrix":
        return cls(modulus, tuple(range(dim)), (0,) * dim)

    @property
    def dimension(self) -> int:
        return len(self.targets)

    def __mul__(self, other: "RepMatrix") -> "RepMatrix":
        """Matrix product; ``other`` acts first."""
        if self.modulus != other.modulus:
            raise SignatureError("mixed moduli in representation matrices")
        targets = tuple(self.targets[other.targets[j]] for j in range(self.dimension))
        exps = tuple(
            other.exponents[j] + self.exponents[other.targets[j]]
            for j in range(self.dimension)
        )
        return RepMatrix(self.modulus, targets, exps)

    def is_identity(self) -> bool:
        return self.targets == tuple(range(self.dimension)) and not any(self.exponents)

    def is_identity_on(self, subset) -> bool:
        return all(self.targets[j] == j and self.exponents[j] == 0 for j in subset)

    def is_diagonal_on(self, subset) -> bool:
        return all(self.targets[j] == j for j in subset)

    def dual(self) -> "RepMatrix":
        """Contragredient: the scalar attached to each basis line inverts."""
        return RepMatrix(self.modulus, self.targets, tuple(-e for e in self.exponents))

    def trace(self, subset=None) -> CycInt:
        indices = range(self.dimension) if subset is None else subset
        total = CycInt.zero(self.modulus)
        for j in indices:
            if self.targets[j] == j:
                total = total + CycInt.root(self.modulus, self.exponents[j])
        return total

    def scalar_on(self, subset) -> RootOfUnity | None:
        """The common scalar on the subset, or None when not scalar."""
        subset = list(subset)
        if not self.is_diagonal_on(subset):
            return None
        values = {self.exponents[j] for j in subset}
        if len(values) != 1:
            return None
        return RootOfUnity(self.modulus, values.pop())

    def eigen_exponents(self, subset) -> tuple[int, ...]:
        subset = list(subset)
        if not self.is_diagonal_on(subset):
            raise NotDiagonal("matrix does not act diagonally on the requested basis lines")
        return tuple(self.exponents[j] for j in subset)


def _substitute_monomial(perm, x_exponents, modulus, monomial):
    """Image data of a monomial under x_i -> zeta^e_i x_perm[i]."""
    image = [0] * len(monomial)
    scalar = 0
    for i, power in enumerate(monomial):
        if power:
            image[perm[i]] += power
            scalar += power * x_exponents[i]
    return tuple(image), scalar % modulus


def _semi_invariance_exponent_raw(perm, x_exponents, y_exponent, model: VarietyModel) -> int:
    n = model.signature.modulus
    term_lookup = {(t.x_powers, t.y_power): t.coefficient for t in model.terms}
    common: int | None = None
    for term in model.terms:
        image, scalar = _substitute_monomial(perm, x_exponents, n, term.x_powers)
        scalar = (scalar + term.y_power * y_exponent) % n
        target = term_lookup.get((image, term.y_power))
        if target is None:
            raise NotASymmetry(
                f"term x^{term.x_powers} y^{term.y_power} is mapped outside the polynomial"
            )
        ratio = term.coefficient  # need coefficient * zeta^scalar == lambda * target
        if ratio == target:
            pass
        elif ratio == -target:
            scalar = (scalar + n // 2) % n
        else:
            raise NotASymmetry(
                f"coefficient ratio {ratio}/{target} is not a root of unity at modulus {n}"
            )
        if common is None:
            common = scalar
        elif common != scalar:
            raise NotASymmetry(
                f"terms rescale inconsistently: zeta^{common} versus zeta^{scalar}"
            )
    if common is None:
        raise NotASymmetry("the defining polynomial has no terms")
    return common


def _determinant_exponent_raw(perm, x_exponents, y_exponent, modulus) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    scalar = (sum(x_exponents) + y_exponent) % modulus
    if sign < 0:
        scalar = (scalar + modulus // 2) % modulus
    return scalar


def _induced_action_raw(perm, x_exponents, y_exponent, model: VarietyModel) -> RepMatrix:
    """The section matrix from raw transformation data.

    Works on any representative of the rescaling class; the twist by
    lambda(g)/det(g) cancels the rescaling exactly, which the tests check.
    """
    n = model.signature.modulus
    basis = degree2_basis(model.signature)
    index = {m: i for i, m in enumerate(basis)}
    lam = _semi_invariance_exponent_raw(perm, x_exponents, y_exponent, model)
    det = _determinant_exponent_raw(perm, x_exponents, y_exponent, n)
    twist = (lam - det) % n
    targets, exps = [], []
    for mono in basis:
        image, scalar = _substitute_monomial(perm, x_exponents, n, mono)
        targets.append(index[image])
        exps.append((scalar + twist) % n)
    return RepMatrix(n, tuple(targets), tuple(exps))


def semi_invariance_scalar(g: MonomialSymmetry, model: VarietyModel) -> RootOfUnity:
    """The unique lambda with (defining polynomial) o g = lambda * (polynomial)."""
    if g.signature != model.signature:
        raise SignatureError("transformation and variety live in different ambient spaces")
    exponent = _semi_invariance_exponent_raw(g.perm, g.x_exponents, g.y_exponent, model)
    return RootOfUnity(model.signature.modulus, exponent)


def induced_action(g: MonomialSymmetry, model: VarietyModel) -> RepMatrix:
    if g.signature != model.signature:
        raise SignatureError("transformation and variety live in different ambient spaces")
    return _induced_action_raw(g.perm, g.x_exponents, g.y_exponent, model)


class Character:
    """Trace function of a section action, one exact value per group element."""

    def __init__(self, group: GroupTable, values):
        self.group = group
        self.values = tuple(values)
        if len(self.values) != group.order:
            raise ValueError("one character value per group element required")

    @property
    def dimension(self) -> int:
        d = self.values[0].as_integer()
        if d is None:
            raise InternalInconsistency("character value at the identity is not an integer")
        return d

    def inner_product(self, other: "Character") -> int:
        """(1/|G|) sum over g of chi1(g) * conj(chi2(g)), exactly."""
        if self.group is not other.group and self.group.elements != other.group.elements:
            raise ValueError("characters over different groups")
        n = self.group.order
        total = CycInt.zero(self.values[0].modulus)
        for a, b in zip(self.values, other.values):
            total = total + a * b.conjugate()
        plain = total.as_integer()
        if plain is None or plain % n != 0:
            raise InternalInconsistency(
                "character inner product did not land in |G| * Z; the representation data is corrupt"
            )
        return plain // n

    def norm(self) -> int:
        return self.inner_product(self)


def inner_product(chi1: Character, chi2: Character) -> int:
    return chi1.inner_product(chi2)


class SectionAction:
    """The bundle of section matrices for every element of a symmetry group."""

    def __init__(self, group: GroupTable, matrices, model: VarietyModel | None = None):
        self.group = group
        self.matrices = tuple(matrices)
        self.model = model
        if len(self.matrices) != group.order:
            raise ValueError("one matrix per group element required")

    @classmethod
    def build(cls, group: GroupTable, model: VarietyModel) -> "SectionAction":
        matrices = [induced_action(g, model) for g in group.elements]
        return cls(group, matrices, model)

    @property
    def modulus(self) -> int:
        return self.matrices[0].modulus

    @property
    def dimension(self) -> int:
        return self.matrices[0].dimension

    def matrix(self, element) -> RepMatrix:
        i = element if isinstance(element, int) else self.group.index(element)
        return self.matrices[i]

    def dual(self) -> "SectionAction":
        return SectionAction(self.group, [m.dual() for m in self.matrices], self.model)

    @cached_property
    def summands(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the basis into orbits of the monomial supports,
        ordered by smallest basis index."""
        dim = self.dimension
        parent = list(range(dim))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in self.matrices:
            for j in range(dim):
                a, b = find(j), find(m.targets[j])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        blocks: dict[int, list[int]] = {}
        for j in range(dim):
            blocks.setdefault(find(j), []).append(j)
        return tuple(tuple(blocks[root]) for root in sorted(blocks))

    def character(self, subset=None) -> Character:
        indices = tuple(range(self.dimension)) if subset is None else tuple(subset)
        return Character(self.group, [m.trace(indices) for m in self.matrices])

    def kernel(self, subset=None) -> GroupTable:
        indices = tuple(range(self.dimension)) if subset is None else tuple(subset)
        positions = [
            i for i, m in enumerate(self.matrices) if m.is_identity_on(indices)
        ]
        return self.group.subgroup(positions)

    def central_scalar(self, subset, element) -> RootOfUnity | None:
        return self.matrix(element).scalar_on(subset)

    def eigen_exponents(self, subset, element) -> tuple[int, ...]:
        return self.matrix(element).eigen_exponents(subset)

    def is_homomorphism_on(self, pairs) -> bool:
        table = self.group.table
        for i, j in pairs:
            if self.matrices[table[i][j]] != self.matrices[i] * self.matrices[j]:
                return False
        return True


def decompose(group: GroupTable, model: VarietyModel) -> tuple[tuple[int, ...], ...]:
    return SectionAction.build(group, model).summands


def attainable_invariant_dims(characters) -> frozenset[int] | None:
    """Dimensions of invariant subspaces of a multiplicity-free sum.

    Every summand must have norm 1 (raises ReducibleSummand otherwise).  When
    two summands are isomorphic the invariant subspaces form continuous
    families and no finite answer exists; None signals that indeterminacy.
    Otherwise invariant subspaces are exactly the partial sums, so the answer
    is the set of subset sums of the dimensions.
    """
    characters = list(characters)
    for chi in characters:
        if chi.norm() != 1:
            raise ReducibleSummand("attainable dimensions require irreducible summands")
    for a in range(len(characters)):
        for b in range(a + 1, len(characters)):
            if characters[a].inner_product(characters[b]) != 0:
                return None
    sums = {0}
    for chi in characters:
        d = chi.dimension
        sums |= {s + d for s in sums}
    return frozenset(sums)


def all_primitive(roots) -> bool:
    """True when every root of unity in the list has full order."""
    return all(r.is_primitive() for r in roots)

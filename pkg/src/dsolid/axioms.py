"""The declared axiom catalog.

Every certificate leaf of method ``axiom`` references exactly one identifier
from this closed catalog.  These are the non-finite mathematical inputs of
the verification: classical facts about curves, abelian varieties and their
automorphisms that no finite computation can witness.  Everything else in a
certificate is a re-executable computation or a finite exhaustion.
"""

from __future__ import annotations

from .errors import CertificateError

AXIOM_CATALOG: dict[str, str] = {
    "AX-PGL2": (
        "A finite 2-subgroup of the automorphism group of the projective line is "
        "cyclic or dihedral, with orbit sizes: cyclic of order m has at most two "
        "fixed points and free orbits of size m; dihedral of order 2m (m >= 3) has "
        "at most one orbit of size 2, at most two of size m and free orbits of "
        "size 2m; the Klein four-group has at most three orbits of size 2 and free "
        "orbits of size 4."
    ),
    "AX-POINT-STAB": (
        "The stabilizer of a point in a finite group acting faithfully on a smooth "
        "curve is cyclic."
    ),
    "AX-ELLIPTIC": (
        "A point stabilizer of a finite group acting faithfully on an elliptic "
        "curve has 2-part of order at most 4."
    ),
    "AX-HYPER": (
        "Every genus-2 curve is hyperelliptic; the hyperelliptic involution is "
        "central in the automorphism group and acts as minus the identity on "
        "canonical sections; the canonical degree-2 map to the projective line has "
        "exactly 6 branch points, permuted by every automorphism."
    ),
    "AX-CANON-FAITHFUL": (
        "For a curve of genus at least 2, the action of its automorphism group on "
        "the canonical sections is faithful."
    ),
    "AX-SCHUR": (
        "In an irreducible complex representation the center of the group acts by "
        "scalar matrices; a finite group with a reducible 2-dimensional faithful "
        "representation has abelian image, the representation being a sum of two "
        "characters."
    ),
    "AX-QUOTIENT-FAITHFUL": (
        "For a curve with an action of a group of order 2^k * 5 whose Sylow "
        "5-subgroup is normal, the quotient 2-group acts faithfully on the "
        "quotient curve and permutes the branch points of the quotient map."
    ),
    "AX-TORELLI": (
        "For a smooth curve C of genus at least 1, the automorphism group of the "
        "Jacobian J(C) as a polarized abelian variety is Aut(C) when C is "
        "hyperelliptic and Aut(C) x {+1, -1} otherwise; an automorphism of a "
        "polarized abelian variety acting trivially on the tangent space at the "
        "origin is the identity."
    ),
    "AX-PPAV-DECOMP": (
        "A principally polarized abelian variety is a direct sum of indecomposable "
        "principally polarized factors, uniquely up to permutation; any group of "
        "automorphisms permutes the factors and preserves the induced "
        "decomposition of the tangent space at the origin; the Jacobian of a "
        "genus-g curve is such a factor of dimension g."
    ),
    "AX-ELLIPTIC-PPAV": (
        "The automorphism group of a principally polarized elliptic curve is "
        "cyclic of order at most 6; in particular it contains no element of "
        "order 5."
    ),
    "AX-CENTRAL-ORBIT": (
        "If a central element stabilizes every member of a transitively permuted "
        "family of tangent lines spanning the space, it acts on each line by the "
        "same character, hence on the whole space by a scalar."
    ),
    "AX-HODGE": (
        "The tangent space at the origin of the intermediate Jacobian of the "
        "double solid is equivariantly isomorphic to the dual of the space of "
        "anticanonical sections."
    ),
    "AX-CG": (
        "A smooth projective threefold whose intermediate Jacobian is not a direct "
        "sum of Jacobians of curves is not rational."
    ),
}


def axiom_statement(axiom_id: str) -> str:
    try:
        return AXIOM_CATALOG[axiom_id]
    except KeyError:
        raise CertificateError(f"unknown axiom identifier {axiom_id!r}") from None


def validate_axiom_ids(ids) -> None:
    unknown = sorted(set(ids) - set(AXIOM_CATALOG))
    if unknown:
        raise CertificateError(f"axiom identifiers outside the declared catalog: {unknown}")

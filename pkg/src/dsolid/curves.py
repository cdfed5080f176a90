"""Genus bookkeeping and exclusion arguments for 2-group actions on curves.

The cover situation: a curve C of genus g >= 2 carries a group of order
2^k * 5 with normal Sylow 5-subgroup.  Writing C' = C / Syl5, g' = g(C') and
n for the number of branch points, the Riemann-Hurwitz count for the degree-5
cyclic quotient reads g + 4 = 5 g' + 2 n.  The quotient 2-group of order 2^k
acts faithfully on C' and permutes the branch points, so each scenario
(g, g', n) below a claimed genus bound is refuted by one of three finite
arguments:

* g' = 0: no invariant n-point set exists on the projective line for any
  2-group of that order (orbit-size catalogs for cyclic and dihedral groups);
* g' = 1: a point stabilizer on an elliptic curve would exceed the order-4
  bound on 2-parts of elliptic point stabilizers;
* g' = 2: the image in Aut(P^1) under the canonical map (kernel of order at
  most 2) would need an invariant 6-point set, and has none.

Orbit catalogs are hard data justified by the classification of finite
subgroups of Aut(P^1); every refutation carries its exhausted combination
list, never bare prose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidScenario, UnsupportedParameter
from .groups import GroupTable

ELLIPTIC_STABILIZER_2PART_BOUND = 4


@dataclass(frozen=True)
class HurwitzScenario:
    """One (k, g, g', n) cover scenario; validates the genus relation."""

    k: int
    g: int
    g_prime: int
    n: int

    def __post_init__(self):
        if min(self.g, self.g_prime, self.n) < 0:
            raise InvalidScenario("genus data must be nonnegative")
        if self.g + 4 != 5 * self.g_prime + 2 * self.n:
            raise InvalidScenario(
                f"g + 4 = {self.g + 4} but 5g' + 2n = {5 * self.g_prime + 2 * self.n}"
            )

    def as_json(self):
        return {"k": self.k, "g": self.g, "g_prime": self.g_prime, "n": self.n}


def hurwitz_genus(g_prime: int, n: int) -> int:
    """Solve g + 4 = 5 g' + 2 n for g."""
    if g_prime < 0 or n < 0:
        raise InvalidScenario("genus data must be nonnegative")
    g = 5 * g_prime + 2 * n - 4
    if g < 0:
        raise InvalidScenario(f"g' = {g_prime}, n = {n} would force genus {g}")
    return g


@dataclass(frozen=True)
class OrbitCatalog:
    """Available orbit sizes of a finite 2-subgroup of Aut(P^1).

    ``entries`` lists (orbit size, maximum number of orbits), with None for
    the unconstrained generic size.  The tables: a cyclic group of order m
    has at most two fixed points and free orbits of size m; a dihedral group
    of order 2m (m >= 3) has at most one orbit of size 2, at most two of size
    m and generic orbits of size 2m; the Klein four-group has at most three
    orbits of size 2 and generic orbits of size 4.
    """

    kind: str
    order: int
    entries: tuple[tuple[int, int | None], ...]

    @property
    def label(self) -> str:
        if self.kind == "dihedral" and self.order == 4:
            return "klein"
        return f"{self.kind}({self.order})"

    def solutions(self, n: int):
        """All multisets of available orbit sizes summing to n, within caps."""
        capped = [(size, cap) for size, cap in self.entries if cap is not None]
        free = [size for size, cap in self.entries if cap is None]
        out = []
        for counts in itertools.product(*[range(cap + 1) for _, cap in capped]):
            used = sum(c * size for c, (size, _) in zip(counts, capped))
            remainder = n - used
            if remainder < 0 or remainder % free[0] != 0:
                continue
            orbits: list[int] = []
            for c, (size, _) in zip(counts, capped):
                orbits.extend([size] * c)
            orbits.extend([free[0]] * (remainder // free[0]))
            out.append(tuple(sorted(orbits)))
        return out

    def exhaustion(self, n: int):
        """The full grid of capped-count attempts, for refutation evidence."""
        capped = [(size, cap) for size, cap in self.entries if cap is not None]
        free = [size for size, cap in self.entries if cap is None]
        grid = []
        for counts in itertools.product(*[range(cap + 1) for _, cap in capped]):
            used = sum(c * size for c, (size, _) in zip(counts, capped))
            grid.append(
                {
                    "capped_counts": list(counts),
                    "remainder": n - used,
                    "free_size": free[0],
                    "admissible": n - used >= 0 and (n - used) % free[0] == 0,
                }
            )
        return grid


def p1_orbit_catalogs(order: int) -> tuple[OrbitCatalog, ...]:
    """The catalogs a 2-group of the given order can realize on P^1."""
    if order < 2:
        raise UnsupportedParameter("catalogs exist for group order >= 2")
    catalogs = [OrbitCatalog("cyclic", order, ((1, 2), (order, None)))]
    if order == 4:
        catalogs.append(OrbitCatalog("dihedral", 4, ((2, 3), (4, None))))
    elif order >= 8:
        half = order // 2
        catalogs.append(OrbitCatalog("dihedral", order, ((2, 1), (half, 2), (order, None))))
    return tuple(catalogs)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness_kind: str | None = None
    witness: tuple[int, ...] | None = None
    refutations: tuple = ()
    axioms: tuple[str, ...] = ()

    def as_json(self):
        return {
            "feasible": self.feasible,
            "witness_kind": self.witness_kind,
            "witness": list(self.witness) if self.witness else None,
            "refutations": list(self.refutations),
            "axioms": sorted(self.axioms),
        }


def p1_invariant_set_feasible(order: int, n: int, catalogs=None) -> Feasibility:
    """Can some 2-group of this order on P^1 leave an n-point set invariant?"""
    if catalogs is None:
        catalogs = p1_orbit_catalogs(order)
    for catalog in catalogs:
        solutions = catalog.solutions(n)
        if solutions:
            return Feasibility(
                True, witness_kind=catalog.label, witness=solutions[0], axioms=("AX-PGL2",)
            )
    refutations = tuple(
        {"catalog": catalog.label, "n": n, "grid": catalog.exhaustion(n)}
        for catalog in catalogs
    )
    return Feasibility(False, refutations=refutations, axioms=("AX-PGL2",))


def elliptic_invariant_set_feasible(order: int, n: int) -> Feasibility:
    """Can a 2-group of this order act on an elliptic curve leaving an
    n-point set invariant?

    A point of the invariant set has orbit size a power of 2 at most n, so
    some stabilizer has order at least order / 2^floor(log2 n); stabilizers
    on an elliptic curve have 2-part at most 4.
    """
    if order < 2:
        raise UnsupportedParameter("order must be at least 2")
    if n < 1:
        raise UnsupportedParameter("the invariant set must be non-empty")
    largest_orbit = 1
    while largest_orbit * 2 <= min(n, order):
        largest_orbit *= 2
    min_stabilizer = order // largest_orbit
    evidence = {
        "largest_possible_orbit": largest_orbit,
        "min_stabilizer_order": min_stabilizer,
        "stabilizer_bound": ELLIPTIC_STABILIZER_2PART_BOUND,
    }
    if min_stabilizer > ELLIPTIC_STABILIZER_2PART_BOUND:
        return Feasibility(False, refutations=(evidence,), axioms=("AX-ELLIPTIC",))
    return Feasibility(
        True, witness_kind="stabilizer-bound", witness=(min_stabilizer,), axioms=("AX-ELLIPTIC",)
    )


@dataclass(frozen=True)
class Exclusion:
    excluded: bool
    reasons: tuple = ()
    axioms: tuple[str, ...] = ()

    def as_json(self):
        return {
            "excluded": self.excluded,
            "reasons": list(self.reasons),
            "axioms": sorted(self.axioms),
        }


def genus2_canonical_exclusion(order: int) -> Exclusion:
    """Rule out a faithful 2-group of this order on a genus-2 curve.

    The group maps to Aut(P^1) through the canonical degree-2 map with kernel
    of order at most 2 (only the hyperelliptic involution acts trivially),
    and the image must leave the 6 branch points invariant.  Excluded when
    both candidate image orders fail the P^1 feasibility check.
    """
    if order < 2:
        raise UnsupportedParameter("order must be at least 2")
    reasons = []
    excluded = True
    for image_order in (order, order // 2):
        if image_order <= 1:
            reasons.append({"image_order": image_order, "feasible": True, "note": "trivial image"})
            excluded = False
            continue
        verdict = p1_invariant_set_feasible(image_order, 6)
        reasons.append({"image_order": image_order, "feasible": verdict.feasible,
                        "evidence": verdict.as_json()})
        if verdict.feasible:
            excluded = False
    return Exclusion(excluded, tuple(reasons), axioms=("AX-HYPER", "AX-PGL2"))


GENUS_BOUNDS = {2: 3, 4: 6, 5: 11}


@dataclass(frozen=True)
class ScenarioVerdict:
    scenario: HurwitzScenario
    route: str
    excluded: bool
    evidence: dict

    def as_json(self):
        return {
            "scenario": self.scenario.as_json(),
            "route": self.route,
            "excluded": self.excluded,
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class GenusBoundResult:
    k: int
    bound: int
    scenarios: tuple  # one entry per genus value, each a tuple of ScenarioVerdict
    counterexample: HurwitzScenario | None
    axioms: tuple[str, ...]

    @property
    def scenario_count(self) -> int:
        return len(self.scenarios)

    def as_json(self):
        return {
            "k": self.k,
            "bound": self.bound,
            "scenario_count": self.scenario_count,
            "scenarios": [
                {"g": genus, "solutions": [v.as_json() for v in verdicts]}
                for genus, verdicts in self.scenarios
            ],
            "counterexample": self.counterexample.as_json() if self.counterexample else None,
            "axioms": sorted(self.axioms),
        }


def genus_scenarios(k: int, bound: int):
    """All (g, [(g', n)...]) with 2 <= g < bound and g + 4 = 5g' + 2n."""
    out = []
    for g in range(2, bound):
        solutions = []
        for g_prime in range((g + 4) // 5 + 1):
            rest = g + 4 - 5 * g_prime
            if rest >= 0 and rest % 2 == 0:
                solutions.append((g_prime, rest // 2))
        out.append((g, solutions))
    return out


def min_genus_bound(k: int) -> GenusBoundResult:
    """Certify the least genus bound for a 2^k * 5 action by exhausting and
    refuting every scenario with smaller genus."""
    if k not in GENUS_BOUNDS:
        raise UnsupportedParameter(f"supported exponents are {sorted(GENUS_BOUNDS)}, got {k}")
    order = 2**k
    bound = GENUS_BOUNDS[k]
    axioms = {"AX-QUOTIENT-FAITHFUL"}
    scenario_rows = []
    counterexample = None
    for g, solutions in genus_scenarios(k, bound):
        verdicts = []
        for g_prime, n in solutions:
            scenario = HurwitzScenario(k, g, g_prime, n)
            if g_prime == 0:
                verdict = p1_invariant_set_feasible(order, n)
                row = ScenarioVerdict(scenario, "p1", not verdict.feasible, verdict.as_json())
            elif g_prime == 1:
                verdict = elliptic_invariant_set_feasible(order, n)
                row = ScenarioVerdict(scenario, "elliptic", not verdict.feasible, verdict.as_json())
            elif g_prime == 2:
                exclusion = genus2_canonical_exclusion(order)
                row = ScenarioVerdict(scenario, "genus2", exclusion.excluded, exclusion.as_json())
            else:
                row = ScenarioVerdict(
                    scenario, "none", False, {"note": "no exclusion routine for g' >= 3"}
                )
            axioms.update(row.evidence.get("axioms", ()))
            verdicts.append(row)
            if not row.excluded and counterexample is None:
                counterexample = scenario
        scenario_rows.append((g, tuple(verdicts)))
    return GenusBoundResult(k, bound, tuple(scenario_rows), counterexample, tuple(sorted(axioms)))


@dataclass(frozen=True)
class WeierstrassForcing:
    order: int
    partitions: tuple[tuple[int, ...], ...]
    every_partition_has_small_part: bool
    forced_cyclic_order: int

    def as_json(self):
        return {
            "order": self.order,
            "partitions": [list(p) for p in self.partitions],
            "every_partition_has_small_part": self.every_partition_has_small_part,
            "forced_cyclic_order": self.forced_cyclic_order,
        }


def weierstrass_orbit_argument(order: int) -> WeierstrassForcing:
    """A 2-group of this order permuting the 6 Weierstrass points of a
    genus-2 curve fixes one of them up to index 2, forcing a cyclic point
    stabilizer of order order/2.

    Verified by exhausting the partitions of 6 into power-of-2 orbit sizes
    dividing the order: every one contains a part of size at most 2.
    """
    if order < 2:
        raise UnsupportedParameter("order must be at least 2")
    sizes = [s for s in (1, 2, 4) if order % s == 0]
    partitions = sorted(
        set(_partitions_into(6, tuple(sorted(sizes, reverse=True))))
    )
    return WeierstrassForcing(
        order,
        tuple(partitions),
        all(min(p) <= 2 for p in partitions),
        order // 2,
    )


def _partitions_into(total: int, sizes: tuple[int, ...]):
    if total == 0:
        yield ()
        return
    for i, s in enumerate(sizes):
        if s <= total:
            for rest in _partitions_into(total - s, sizes[i:]):
                yield tuple(sorted((s,) + rest))


def genus2_group_exclusion(group: GroupTable) -> Exclusion:
    """Rule out a faithful action of a 2-group on a genus-2 curve.

    Both positions of the hyperelliptic involution tau are covered, so the
    verdict does not depend on whether tau lies in the group:

    * tau inside: tau is a central involution and the quotient by it embeds
      into Aut(P^1); an abelian 2-subgroup there is cyclic or Klein, so the
      branch is refuted when every candidate quotient is abelian but neither.
    * tau outside: the action on canonical sections is faithful and its image
      contains no nontrivial scalar; irreducibility would force a trivial
      center, reducibility an abelian group.  Refuted when the group is
      nonabelian with nontrivial center.
    """
    order = group.order
    if order & (order - 1):
        raise UnsupportedParameter("the hypothetical acting group must be a 2-group")
    reasons = []

    central_involutions = [
        i
        for i in range(1, order)
        if group.element_order(i) == 2
        and all(group.table[i][j] == group.table[j][i] for j in range(order))
    ]
    derived = group.derived_subgroup()
    derived_set = frozenset(derived.parent_positions)
    inside_branch = True
    candidates = []
    for t in central_involutions:
        quotient = group.quotient(group.subgroup([0, t]))
        q_abelian = quotient.is_abelian()
        entry = {
            "involution_position": t,
            "generates_derived_subgroup": frozenset([0, t]) == derived_set,
            "quotient_order": quotient.order,
            "quotient_abelian": q_abelian,
            "quotient_cyclic": quotient.is_cyclic(),
            "quotient_klein": quotient.is_klein_four(),
        }
        if q_abelian:
            entry["quotient_invariants"] = list(quotient.abelian_invariants())
        ruled_out = q_abelian and not entry["quotient_cyclic"] and not entry["quotient_klein"]
        entry["ruled_out"] = ruled_out
        candidates.append(entry)
        if not ruled_out:
            inside_branch = False
    # no central involution means tau cannot lie inside: vacuously excluded
    reasons.append(
        {
            "branch": "involution-inside",
            "central_involutions": central_involutions,
            "candidates": candidates,
            "excluded": inside_branch,
        }
    )

    nonabelian = not group.is_abelian()
    center_order = group.center().order
    outside_branch = nonabelian and center_order > 1
    reasons.append(
        {
            "branch": "involution-outside",
            "nonabelian": nonabelian,
            "center_order": center_order,
            "excluded": outside_branch,
        }
    )

    return Exclusion(
        inside_branch and outside_branch,
        tuple(reasons),
        axioms=("AX-CANON-FAITHFUL", "AX-HYPER", "AX-PGL2", "AX-SCHUR"),
    )

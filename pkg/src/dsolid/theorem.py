"""Case-by-case verification that no orbit structure on the factors of the
polarized abelian variety is compatible with a sum of Jacobians.

The orchestrator replays a fixed script of six exclusion arguments, one per
admissible orbit size m (the divisors of the group order that do not exceed
the tangent dimension).  Every step is either a named re-executable
computation over the model, a finite combinatorial exhaustion, or a reference
into the declared axiom catalog; the output is a claim tree per case plus a
theorem-level certificate.

Computations run through a registry keyed by operation name, so a
certificate leaf (operation, arguments, result, digest) can be re-executed
and compared byte for byte.  The registry also supports test-side fault
injection: an override for an operation is consulted before the memo, and a
perturbed fact flips every case that consumes it to Failed.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor

from .axioms import axiom_statement
from .certificates import (
    CaseCertificate,
    ClaimNode,
    TheoremCertificate,
    canonical_json,
    digest_inputs,
)
from .curves import genus2_group_exclusion, min_genus_bound, weierstrass_orbit_argument
from .errors import DsolidError
from .groups import GroupTable, closure
from .modelfile import ParsedModel
from .sections import SectionAction, attainable_invariant_dims, semi_invariance_scalar


def enumerate_orbit_sizes(group_order: int, total_dim: int) -> tuple[int, ...]:
    """Divisors of the group order that fit inside the tangent dimension."""
    if group_order < 1 or total_dim < 0:
        raise ValueError("group order must be positive and dimension nonnegative")
    return tuple(m for m in range(1, total_dim + 1) if group_order % m == 0)


class ProofContext:
    """Everything the case scripts consume: the group, the section action and
    its dual, and a memoized registry of named operations."""

    def __init__(self, model: ParsedModel, max_closure: int = 10**6):
        self.model = model
        for name in model.generator_names:
            semi_invariance_scalar(model.generators[name], model.variety)
        model.check_relations()
        self.group = closure(
            model.generator_list(), names=list(model.generator_names), bound=max_closure
        )
        self.sections = SectionAction.build(self.group, model.variety)
        self.tangent = self.sections.dual()
        self._memo: dict[tuple[str, str], object] = {}
        self._overrides: dict[tuple[str, str], object] = {}
        self._lock = threading.Lock()

    def with_override(self, operation: str, arguments, value) -> "ProofContext":
        """A copy whose named operation returns the given value: test-side
        fault injection.  Only the overridden operation is affected."""
        clone = object.__new__(ProofContext)
        clone.__dict__.update(self.__dict__)
        clone._overrides = dict(self._overrides)
        clone._overrides[(operation, canonical_json(list(arguments)))] = value
        return clone

    def run(self, operation: str, *args):
        key = (operation, canonical_json(list(args)))
        if key in self._overrides:
            return self._overrides[key]
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = OPERATIONS[operation](self, *args)
        with self._lock:
            self._memo.setdefault(key, value)
        return value

    # ---- deterministic element selectors ---------------------------------

    def _positions(self, sub: GroupTable) -> list[int]:
        return list(sub.parent_positions)

    def _max_order_position(self) -> int:
        orders = [self.group.element_order(i) for i in range(self.group.order)]
        top = max(orders)
        return orders.index(top)

    def _order5_subgroups(self):
        return self.group.subgroups_of_order(5) if self.group.order % 5 == 0 else []

    def _sylow5_generator(self) -> int:
        subs = self._order5_subgroups()
        if len(subs) != 1:
            raise DsolidError("no unique order-5 subgroup; the script does not apply")
        return self._positions(subs[0])[1]

    def _center_generator(self) -> int:
        center = self.group.center()
        positions = self._positions(center)
        for p in positions:
            if self.group.close_positions([p]) == frozenset(positions):
                return p
        raise DsolidError("the center is not cyclic; the script does not apply")


# ---------------------------------------------------------------------- ops

def _op_group_order(ctx):
    return ctx.group.order


def _op_element_orders(ctx):
    return list(ctx.group.element_orders())


def _op_relation_checks(ctx):
    out = []
    for rel in ctx.model.relations:
        out.append(
            {"conjugator": rel.conjugator, "base": rel.base, "power": rel.power, "holds": True}
        )
    # ProofContext construction already raised on a failing relation
    return {"declared": out, "all_hold": True}


def _subgroup_json(ctx, sub: GroupTable):
    return sorted(sub.parent_positions)


def _op_center(ctx):
    center = ctx.group.center()
    positions = _subgroup_json(ctx, center)
    cyclic = center.is_cyclic()
    value = {"positions": positions, "order": center.order, "cyclic": cyclic}
    if cyclic:
        generator = ctx._center_generator()
        value["generator_position"] = generator
        value["generator_word"] = ctx.group.word(generator)
    return value


def _op_derived_subgroup(ctx):
    derived = ctx.group.derived_subgroup()
    return {"positions": _subgroup_json(ctx, derived), "order": derived.order}


def _op_sylow_facts(ctx, p):
    sylow = ctx.group.sylow(p)
    return {
        "prime": p,
        "order": sylow.order,
        "positions": _subgroup_json(ctx, sylow),
        "normal": ctx.group.is_normal(sylow),
    }


def _op_subgroups_of_order(ctx, k):
    return [_subgroup_json(ctx, h) for h in ctx.group.subgroups_of_order(k)]


def _op_normal_subgroups_of_order(ctx, k):
    return [_subgroup_json(ctx, h) for h in ctx.group.normal_subgroups_of_order(k)]


def _op_unique_order5_subgroup(ctx):
    subs = ctx._order5_subgroups()
    value = {"count": len(subs)}
    if len(subs) == 1:
        value["positions"] = _subgroup_json(ctx, subs[0])
        value["generator_position"] = ctx._sylow5_generator()
        value["generator_word"] = ctx.group.word(ctx._sylow5_generator())
    return value


def _op_maximal_cyclic_subgroup(ctx):
    top = ctx._max_order_position()
    order = ctx.group.element_order(top)
    positions = sorted(ctx.group.close_positions([top]))
    same_order = [
        i for i in range(ctx.group.order) if ctx.group.element_order(i) == order
    ]
    unique = all(ctx.group.close_positions([i]) == frozenset(positions) for i in same_order)
    return {
        "order": order,
        "positions": positions,
        "generator_position": top,
        "generator_word": ctx.group.word(top),
        "unique": unique,
    }


def _op_no_central_order2_complement(ctx):
    entries = []
    for sub in ctx.group.normal_subgroups_of_order(2):
        complements = ctx.group.direct_product_complements(sub)
        entries.append(
            {
                "normal_order2": _subgroup_json(ctx, sub),
                "complement_count": len(complements),
            }
        )
    return {"entries": entries, "all_empty": all(e["complement_count"] == 0 for e in entries)}


def _op_subgroups_contain(ctx, k, which):
    if which == "center":
        target = _subgroup_json(ctx, ctx.group.center())
    elif which == "derived":
        target = _subgroup_json(ctx, ctx.group.derived_subgroup())
    elif which == "order5":
        target = _op_unique_order5_subgroup(ctx)["positions"]
    else:
        raise DsolidError(f"unknown containment target {which!r}")
    target_set = set(target)
    subs = [_subgroup_json(ctx, h) for h in ctx.group.subgroups_of_order(k)]
    return {
        "order": k,
        "count": len(subs),
        "target": target,
        "all_contain": all(target_set <= set(h) for h in subs),
    }


def _op_order5_normal_in_subgroups(ctx, k):
    info = _op_unique_order5_subgroup(ctx)
    if info["count"] != 1:
        raise DsolidError("no unique order-5 subgroup")
    target = set(info["positions"])
    entries = []
    for h in ctx.group.subgroups_of_order(k):
        h_positions = _subgroup_json(ctx, h)
        contains = target <= set(h_positions)
        normal_inside = False
        if contains:
            local = h.subgroup([h_positions.index(p) for p in sorted(target)])
            normal_inside = h.is_normal(local)
        entries.append(
            {"subgroup": h_positions, "contains": contains, "normal_inside": normal_inside}
        )
    return {"entries": entries, "all_ok": all(e["contains"] and e["normal_inside"] for e in entries)}


def _op_central_involution_complements(ctx, k):
    """For each order-k subgroup H and each central involution t of H, the
    number of direct-product complements of <t> inside H."""
    entries = []
    for h in ctx.group.subgroups_of_order(k):
        h_positions = _subgroup_json(ctx, h)
        involutions = [
            i
            for i in range(1, h.order)
            if h.element_order(i) == 2
            and all(h.table[i][j] == h.table[j][i] for j in range(h.order))
        ]
        counts = []
        for t in involutions:
            complements = h.direct_product_complements(h.subgroup([0, t]))
            counts.append(len(complements))
        entries.append(
            {
                "subgroup": h_positions,
                "central_involutions": [h_positions[t] for t in involutions],
                "complement_counts": counts,
            }
        )
    return {
        "entries": entries,
        "all_empty": all(c == 0 for e in entries for c in e["complement_counts"]),
    }


def _op_stabilizer_cyclic_intersections(ctx, m):
    maximal = _op_maximal_cyclic_subgroup(ctx)
    cyclic = set(maximal["positions"])
    k = ctx.group.order // m
    entries = []
    for h in ctx.group.subgroups_of_order(k):
        h_positions = _subgroup_json(ctx, h)
        inter = sorted(cyclic & set(h_positions))
        entries.append(
            {
                "subgroup": h_positions,
                "intersection_order": len(inter),
                "span_order": len(ctx.group.close_positions(set(h_positions) | cyclic)),
            }
        )
    lower = (k * maximal["order"]) // ctx.group.order
    return {"entries": entries, "intersection_lower_bound": lower}


def _op_centralizer_of_sylow5_generator(ctx):
    generator = ctx._sylow5_generator()
    centralizer = ctx.group.centralizer(generator)
    return {
        "generator_position": generator,
        "positions": _subgroup_json(ctx, centralizer),
        "order": centralizer.order,
        "group_order": ctx.group.order,
    }


def _op_center_contains_sylow5_generator(ctx):
    generator = ctx._sylow5_generator()
    center_positions = _op_center(ctx)["positions"]
    return {"generator_position": generator, "contains": generator in center_positions}


def _op_quotient_facts(ctx, kernel_positions):
    kernel = ctx.group.subgroup(kernel_positions)
    quotient = ctx.group.quotient(kernel)
    value = {
        "kernel_order": kernel.order,
        "order": quotient.order,
        "abelian": quotient.is_abelian(),
        "cyclic": quotient.is_cyclic(),
    }
    derived = quotient.derived_subgroup()
    value["derived_order"] = derived.order
    abelianization = quotient.quotient(derived)
    value["abelianization_order"] = abelianization.order
    value["abelianization_invariants"] = list(abelianization.abelian_invariants())
    return value


def _op_genus2_exclusion_of_quotient(ctx, kernel_positions):
    kernel = ctx.group.subgroup(kernel_positions)
    quotient = ctx.group.quotient(kernel)
    verdict = genus2_group_exclusion(quotient)
    value = verdict.as_json()
    value["quotient_order"] = quotient.order
    return value


def _op_tangent_dimension(ctx):
    return ctx.tangent.dimension


def _op_summands(ctx):
    return [list(s) for s in ctx.tangent.summands]


def _op_summand_dimensions(ctx):
    return [len(s) for s in ctx.tangent.summands]


def _op_character_norms(ctx):
    return [ctx.tangent.character(s).norm() for s in ctx.tangent.summands]


def _op_pairwise_inner_products(ctx):
    chars = [ctx.tangent.character(s) for s in ctx.tangent.summands]
    out = []
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            out.append({"pair": [i, j], "value": chars[i].inner_product(chars[j])})
    return out


def _op_representation_kernel(ctx):
    kernel = ctx.tangent.kernel()
    return {"order": kernel.order, "positions": _subgroup_json(ctx, kernel)}


def _op_summand_kernels(ctx):
    out = []
    for i, s in enumerate(ctx.tangent.summands):
        kernel = ctx.tangent.kernel(s)
        out.append(
            {"summand": i, "order": kernel.order, "positions": _subgroup_json(ctx, kernel)}
        )
    return out


def _op_attainable_dims(ctx):
    chars = [ctx.tangent.character(s) for s in ctx.tangent.summands]
    dims = attainable_invariant_dims(chars)
    if dims is None:
        return "indeterminate"
    return sorted(dims)


def _op_invariant_subspaces_with_kernel(ctx):
    """Nonzero invariant subspaces (subset sums) with nontrivial pointwise
    stabilizer, with the stabilizer attached."""
    summands = ctx.tangent.summands
    out = []
    for mask in range(1, 1 << len(summands)):
        subset = [i for i in range(len(summands)) if mask >> i & 1]
        indices = [j for i in subset for j in summands[i]]
        kernel = ctx.tangent.kernel(indices)
        if kernel.order > 1:
            out.append(
                {
                    "summands": subset,
                    "dimension": len(indices),
                    "kernel_order": kernel.order,
                    "kernel_positions": _subgroup_json(ctx, kernel),
                }
            )
    out.sort(key=lambda e: (e["dimension"], e["summands"]))
    return out


def _op_subsets_of_dimension(ctx, d):
    summands = ctx.tangent.summands
    out = []
    for mask in range(1, 1 << len(summands)):
        subset = [i for i in range(len(summands)) if mask >> i & 1]
        if sum(len(summands[i]) for i in subset) == d:
            out.append(subset)
    out.sort()
    return out


def _op_orbit_factor_dimensions(ctx, m):
    dim = ctx.tangent.dimension
    attainable = _op_attainable_dims(ctx)
    details = []
    admissible = []
    for d in range(1, dim // m + 1):
        total = m * d
        ok = total == dim or (attainable != "indeterminate" and total in attainable)
        details.append({"factor_dim": d, "orbit_dim": total, "admissible": ok})
        if ok:
            admissible.append(d)
    return {"m": m, "admissible": admissible, "details": details}


def _op_orbit_stabilizer_order(ctx, m):
    order = ctx.group.order
    two_part = 1
    while order % (two_part * 2) == 0:
        two_part *= 2
    return {
        "m": m,
        "stabilizer_order": order // m,
        "two_part_of_group_order": two_part,
        "stabilizer_is_full_two_part": order // m == two_part,
    }


def _op_orbit_block_options(ctx):
    """Blocks a size-2 orbit can carve out of the summands, given that some
    block contains a summand of maximal dimension."""
    summands = ctx.tangent.summands
    dims = [len(s) for s in summands]
    top = max(dims)
    options = []
    for mask in range(1, 1 << len(summands)):
        subset = [i for i in range(len(summands)) if mask >> i & 1]
        if not any(dims[i] == top for i in subset):
            continue
        dimension = sum(dims[i] for i in subset)
        options.append(
            {
                "summands": subset,
                "dimension": dimension,
                "factor_dimension": dimension // 2 if dimension % 2 == 0 else None,
            }
        )
    options.sort(key=lambda e: (e["dimension"], e["summands"]))
    return options


def _op_generator_section_matrix(ctx, name):
    matrix = ctx.sections.matrix(ctx.model.generators[name])
    return {
        "generator": name,
        "targets": list(matrix.targets),
        "exponents": list(matrix.exponents),
        "diagonal": matrix.targets == tuple(range(matrix.dimension)),
    }


def _op_tangent_scalars_by_summand(ctx, position):
    if position is None:
        raise DsolidError("no canonical element is available for this model")
    out = []
    for s in ctx.tangent.summands:
        scalar = ctx.tangent.central_scalar(s, position)
        out.append(None if scalar is None else scalar.exponent)
    return out


def _op_tangent_eigen_exponents(ctx, position, subset):
    if position is None:
        raise DsolidError("no canonical element is available for this model")
    indices = [j for i in subset for j in ctx.tangent.summands[i]]
    return list(ctx.tangent.eigen_exponents(indices, position))


def _op_homomorphism_check(ctx):
    gens = [ctx.group.index(g) for g in ctx.model.generator_list()]
    pairs = [(g, h) for g in gens for h in gens]
    pairs += [(g, i) for g in gens for i in range(ctx.group.order)]
    pairs += [(i, g) for g in gens for i in range(ctx.group.order)]
    ok = ctx.tangent.is_homomorphism_on(pairs) and ctx.sections.is_homomorphism_on(pairs)
    return {"pairs_checked": len(pairs), "ok": ok}


def _op_min_genus_bound(ctx, k):
    return min_genus_bound(k).as_json()


def _op_weierstrass(ctx, order):
    return weierstrass_orbit_argument(order).as_json()


def _op_enumerate_orbit_sizes(ctx):
    return list(enumerate_orbit_sizes(ctx.group.order, ctx.tangent.dimension))


def _op_genus_vs_bound(ctx, k, max_genus_source):
    bound = min_genus_bound(k).bound
    if max_genus_source == "tangent_dimension":
        max_genus = ctx.tangent.dimension
    elif max_genus_source == "half_tangent_dimension":
        max_genus = ctx.tangent.dimension // 2
    elif max_genus_source == "two":
        max_genus = 2
    else:
        raise DsolidError(f"unknown genus source {max_genus_source!r}")
    return {"k": k, "bound": bound, "max_genus": max_genus, "excludes": max_genus < bound}


OPERATIONS = {
    "group_order": _op_group_order,
    "element_orders": _op_element_orders,
    "relation_checks": _op_relation_checks,
    "center": _op_center,
    "derived_subgroup": _op_derived_subgroup,
    "sylow_facts": _op_sylow_facts,
    "subgroups_of_order": _op_subgroups_of_order,
    "normal_subgroups_of_order": _op_normal_subgroups_of_order,
    "unique_order5_subgroup": _op_unique_order5_subgroup,
    "maximal_cyclic_subgroup": _op_maximal_cyclic_subgroup,
    "no_central_order2_complement": _op_no_central_order2_complement,
    "subgroups_contain": _op_subgroups_contain,
    "order5_normal_in_subgroups": _op_order5_normal_in_subgroups,
    "central_involution_complements": _op_central_involution_complements,
    "stabilizer_cyclic_intersections": _op_stabilizer_cyclic_intersections,
    "centralizer_of_sylow5_generator": _op_centralizer_of_sylow5_generator,
    "center_contains_sylow5_generator": _op_center_contains_sylow5_generator,
    "quotient_facts": _op_quotient_facts,
    "genus2_exclusion_of_quotient": _op_genus2_exclusion_of_quotient,
    "tangent_dimension": _op_tangent_dimension,
    "summands": _op_summands,
    "summand_dimensions": _op_summand_dimensions,
    "character_norms": _op_character_norms,
    "pairwise_inner_products": _op_pairwise_inner_products,
    "representation_kernel": _op_representation_kernel,
    "summand_kernels": _op_summand_kernels,
    "attainable_dims": _op_attainable_dims,
    "invariant_subspaces_with_kernel": _op_invariant_subspaces_with_kernel,
    "subsets_of_dimension": _op_subsets_of_dimension,
    "orbit_factor_dimensions": _op_orbit_factor_dimensions,
    "orbit_stabilizer_order": _op_orbit_stabilizer_order,
    "orbit_block_options": _op_orbit_block_options,
    "generator_section_matrix": _op_generator_section_matrix,
    "tangent_scalars_by_summand": _op_tangent_scalars_by_summand,
    "tangent_eigen_exponents": _op_tangent_eigen_exponents,
    "homomorphism_check": _op_homomorphism_check,
    "min_genus_bound": _op_min_genus_bound,
    "weierstrass_orbit_argument": _op_weierstrass,
    "enumerate_orbit_sizes": _op_enumerate_orbit_sizes,
    "genus_vs_bound": _op_genus_vs_bound,
}


# -------------------------------------------------------------- claim trees

def _computed(ctx, parent, claim_id, statement, operation, *args, check=None,
              method="computation"):
    try:
        value = ctx.run(operation, *args)
        result = value
        try:
            ok = bool(check(value)) if check is not None else True
        except Exception as err:  # a malformed fact is a failure, not a crash
            ok, result = False, {"error": f"check failed: {err}", "value": value}
    except DsolidError as err:
        ok, result, value = False, {"error": str(err)}, None
    node = ClaimNode(
        claim_id,
        statement,
        method,
        ok=ok,
        operation=operation,
        arguments=list(args),
        inputs_digest=digest_inputs(operation, list(args)),
        result=result,
    )
    _attach_cited_axioms(node)
    parent.children.append(node)
    return value


def _axiom(parent, claim_id, axiom_id, note=""):
    statement = axiom_statement(axiom_id)
    if note:
        statement = f"{statement} Instantiated here: {note}"
    node = ClaimNode(claim_id, statement, "axiom", ok=True, axiom_id=axiom_id)
    parent.children.append(node)
    return node


def _branch(parent, claim_id, statement):
    node = ClaimNode(claim_id, statement, "combinatorial", ok=True)
    parent.children.append(node)
    return node


def _attach_cited_axioms(node: ClaimNode):
    """Curve-theoretic results cite the axioms their catalogs rest on; turn
    those citations into explicit axiom leaves under the computation."""
    cited = _collect_axiom_citations(node.result)
    for i, axiom_id in enumerate(sorted(cited)):
        node.children.append(
            ClaimNode(
                f"{node.claim_id}.axiom{i}",
                axiom_statement(axiom_id),
                "axiom",
                ok=True,
                axiom_id=axiom_id,
            )
        )


def _collect_axiom_citations(value) -> set[str]:
    found: set[str] = set()
    if isinstance(value, dict):
        for key, sub in value.items():
            if key == "axioms" and isinstance(sub, list):
                found.update(sub)
            else:
                found |= _collect_axiom_citations(sub)
    elif isinstance(value, list):
        for sub in value:
            found |= _collect_axiom_citations(sub)
    return found


def _finish_case(m: int, root: ClaimNode) -> CaseCertificate:
    ok = all(node.ok for node in root.walk())
    return CaseCertificate(m, "Excluded" if ok else "Failed", root)


def _case_root(m: int, statement: str) -> ClaimNode:
    return ClaimNode(f"case-m{m}", statement, "combinatorial", ok=True)


def _case_m1(ctx: ProofContext) -> CaseCertificate:
    root = _case_root(1, "no factor of the decomposition is stabilized by the whole group")
    _axiom(root, "m1.decomposition", "AX-PPAV-DECOMP",
           "an orbit of size 1 is a factor stabilized by the whole group")
    _axiom(root, "m1.tangent-model", "AX-HODGE",
           "tangent facts below are read off the dual of the section action")
    product = _branch(
        root, "m1.no-z2-product",
        "the group is not a direct product of an order-2 and an index-2 subgroup",
    )
    _computed(
        ctx, product, "m1.no-z2-product.complements",
        "no normal order-2 subgroup admits a direct-product complement",
        "no_central_order2_complement",
        check=lambda v: v["all_empty"],
    )
    faithful = _branch(
        root, "m1.faithful-branch",
        "a faithful action on the invariant factor would give a faithful curve "
        "action of the whole group, which the genus bound forbids",
    )
    _axiom(faithful, "m1.faithful-branch.torelli", "AX-TORELLI",
           "a faithful action on the Jacobian factor transfers to the curve; the "
           "non-hyperelliptic alternative would split off an order-2 direct factor, "
           "which m1.no-z2-product rules out")
    _computed(
        ctx, faithful, "m1.faithful-branch.sylow5",
        "the Sylow 5-subgroup is normal, as the genus bound requires",
        "sylow_facts", 5,
        check=lambda v: v["normal"],
    )
    _computed(
        ctx, faithful, "m1.faithful-branch.genus-bound",
        "every cover scenario below genus 11 for a 2^5*5 action is refuted",
        "min_genus_bound", 5,
        check=lambda v: v["counterexample"] is None,
    )
    _computed(
        ctx, faithful, "m1.faithful-branch.genus-too-small",
        "the factor's genus is at most the tangent dimension, below the bound",
        "genus_vs_bound", 5, "tangent_dimension",
        check=lambda v: v["excludes"],
        method="combinatorial",
    )
    nonfaithful = _branch(
        root, "m1.nonfaithful-branch",
        "a non-faithful action forces the tangent space of the factor to be the "
        "unique invariant subspace with nontrivial pointwise stabilizer",
    )
    options = _computed(
        ctx, nonfaithful, "m1.nonfaithful-branch.kernel-options",
        "the invariant subspaces with nontrivial pointwise stabilizer, each of "
        "dimension 2, so the factor is a genus-2 Jacobian",
        "invariant_subspaces_with_kernel",
        check=lambda v: all(e["dimension"] == 2 for e in v),
    )
    for i, option in enumerate(options or []):
        branch = _branch(
            nonfaithful, f"m1.nonfaithful-branch.option{i}",
            f"tangent space on summands {option['summands']}: the group modulo the "
            f"order-{option['kernel_order']} stabilizer acts faithfully on a genus-2 curve",
        )
        _axiom(branch, f"m1.nonfaithful-branch.option{i}.hyper", "AX-HYPER",
               "a genus-2 curve is hyperelliptic")
        _axiom(branch, f"m1.nonfaithful-branch.option{i}.torelli", "AX-TORELLI",
               "for the hyperelliptic factor the Jacobian automorphisms are exactly "
               "the curve automorphisms, and tangent-trivial automorphisms are trivial, "
               "so the quotient by the pointwise stabilizer acts faithfully")
        _computed(
            ctx, branch, f"m1.nonfaithful-branch.option{i}.exclusion",
            "no faithful action of that quotient 2-group exists on a genus-2 curve",
            "genus2_exclusion_of_quotient", option["kernel_positions"],
            check=lambda v: v["excluded"],
        )
    return _finish_case(1, root)


def _case_m2(ctx: ProofContext) -> CaseCertificate:
    root = _case_root(
        2,
        "orbits of size 2 (the only size left once 1, 4, 5, 8 and 10 are excluded) "
        "are also impossible",
    )
    _axiom(root, "m2.decomposition", "AX-PPAV-DECOMP",
           "factors pair up into orbits of size 2; the stabilizer of a pair has index 2")
    _axiom(root, "m2.tangent-model", "AX-HODGE")
    _computed(
        ctx, root, "m2.blocks",
        "some orbit's tangent block contains a summand of maximal dimension; every "
        "such block has even dimension at least 4, so the paired factors have genus "
        "between 2 and half the tangent dimension",
        "orbit_block_options",
        check=lambda v: bool(v) and all(
            e["factor_dimension"] is not None and e["factor_dimension"] >= 2 for e in v
        ),
        method="combinatorial",
    )
    _computed(
        ctx, root, "m2.candidates",
        "every index-2 subgroup: its central involutions admit no direct-product "
        "complement, so the subgroup never splits off the minus-one factor",
        "central_involution_complements", ctx.group.order // 2,
        check=lambda v: v["all_empty"],
    )
    _computed(
        ctx, root, "m2.sylow5-in-candidates",
        "every index-2 subgroup contains the unique order-5 subgroup as a normal "
        "subgroup, as the genus bound requires",
        "order5_normal_in_subgroups", ctx.group.order // 2,
        check=lambda v: v["all_ok"],
    )
    _axiom(root, "m2.torelli", "AX-TORELLI",
           "with no order-2 splitting available, the pair stabilizer acts faithfully "
           "on the curve underlying the factor")
    _computed(
        ctx, root, "m2.genus-bound",
        "every cover scenario below genus 6 for a 2^4*5 action is refuted",
        "min_genus_bound", 4,
        check=lambda v: v["counterexample"] is None,
    )
    _computed(
        ctx, root, "m2.genus-too-small",
        "the paired factors have genus at most half the tangent dimension, below the bound",
        "genus_vs_bound", 4, "half_tangent_dimension",
        check=lambda v: v["excludes"],
        method="combinatorial",
    )
    return _finish_case(2, root)


def _case_m4(ctx: ProofContext) -> CaseCertificate:
    root = _case_root(4, "no orbit of size 4 exists")
    _axiom(root, "m4.decomposition", "AX-PPAV-DECOMP")
    _axiom(root, "m4.tangent-model", "AX-HODGE")
    _computed(
        ctx, root, "m4.factor-dims",
        "four equal-dimensional factors fit in the tangent space only with "
        "dimension 1 or 2",
        "orbit_factor_dimensions", 4,
        check=lambda v: v["admissible"] == [1, 2],
        method="combinatorial",
    )
    _computed(
        ctx, root, "m4.candidates",
        "every index-4 subgroup contains the derived subgroup and is normal",
        "subgroups_contain", ctx.group.order // 4, "derived",
        check=lambda v: v["all_contain"],
    )
    dim1 = _branch(
        root, "m4.dim1",
        "four elliptic factors: the order-5 subgroup would act trivially on a "
        "4-dimensional invariant subspace",
    )
    _computed(
        ctx, dim1, "m4.dim1.sylow5-in-candidates",
        "the unique order-5 subgroup lies in every index-4 subgroup",
        "subgroups_contain", ctx.group.order // 4, "order5",
        check=lambda v: v["all_contain"],
    )
    _axiom(dim1, "m4.dim1.elliptic", "AX-ELLIPTIC-PPAV",
           "an order-5 element cannot act on an elliptic factor, so it fixes each "
           "of the four factors pointwise")
    subsets4 = ctx.run("subsets_of_dimension", 4)
    sylow5_gen = ctx.run("unique_order5_subgroup").get("generator_position")
    for i, subset in enumerate(subsets4):
        _computed(
            ctx, dim1, f"m4.dim1.nontrivial{i}",
            f"the order-5 generator acts without a single fixed vector on the "
            f"4-dimensional invariant subspace on summands {subset}",
            "tangent_eigen_exponents", sylow5_gen, subset,
            check=lambda v: any(e != 0 for e in v),
        )
    dim2 = _branch(
        root, "m4.dim2",
        "four genus-2 factors: the stabilizer would centralize the order-5 subgroup "
        "together with the maximal cyclic subgroup, forcing it into the center",
    )
    subsets8 = ctx.run("subsets_of_dimension", 8)
    maximal = ctx.run("maximal_cyclic_subgroup")
    for i, subset in enumerate(subsets8):
        _computed(
            ctx, dim2, f"m4.dim2.primitive{i}",
            "every eigenvalue of the maximal-order element on the 8-dimensional "
            f"invariant subspace on summands {subset} is a primitive root, so its "
            "cyclic subgroups act faithfully on each factor",
            "tangent_eigen_exponents", maximal["generator_position"], subset,
            check=lambda v, order=maximal["order"]: all(
                _root_order(ctx, e) == order for e in v
            ),
        )
    _axiom(dim2, "m4.dim2.torelli", "AX-TORELLI",
           "faithful tangent action on a factor transfers to the genus-2 curve")
    _computed(
        ctx, dim2, "m4.dim2.genus-bound",
        "every cover scenario below genus 3 for a 2^2*5 action is refuted, so the "
        "stabilizer meets the maximal cyclic subgroup in order exactly 10",
        "min_genus_bound", 2,
        check=lambda v: v["counterexample"] is None,
    )
    _computed(
        ctx, dim2, "m4.dim2.genus-two-below-bound",
        "genus 2 lies below that bound",
        "genus_vs_bound", 2, "two",
        check=lambda v: v["excludes"],
        method="combinatorial",
    )
    _computed(
        ctx, dim2, "m4.dim2.intersections",
        "each index-4 subgroup meets the maximal cyclic subgroup in order at least "
        "10; when the intersection is larger the genus bound already refutes it, "
        "and when it is exactly 10 the subgroup spans the whole group together "
        "with the maximal cyclic subgroup",
        "stabilizer_cyclic_intersections", 4,
        check=lambda v: all(
            e["intersection_order"] >= 10
            and (e["intersection_order"] > 10 or e["span_order"] == ctx.group.order)
            for e in v["entries"]
        ),
    )
    _computed(
        ctx, dim2, "m4.dim2.centralizer",
        "an abelian stabilizer would put the order-5 generator into the center, "
        "but its centralizer is a proper subgroup",
        "centralizer_of_sylow5_generator",
        check=lambda v: v["order"] < v["group_order"],
    )
    _computed(
        ctx, dim2, "m4.dim2.not-central",
        "the order-5 generator is not central",
        "center_contains_sylow5_generator",
        check=lambda v: not v["contains"],
    )
    return _finish_case(4, root)


def _case_m5(ctx: ProofContext) -> CaseCertificate:
    root = _case_root(5, "no orbit of size 5 exists")
    _axiom(root, "m5.decomposition", "AX-PPAV-DECOMP")
    _axiom(root, "m5.tangent-model", "AX-HODGE")
    _computed(
        ctx, root, "m5.no-dim5",
        "the tangent space has no invariant subspace of dimension 5",
        "attainable_dims",
        check=lambda v: v != "indeterminate" and 5 not in v,
    )
    _computed(
        ctx, root, "m5.forced-dim",
        "five equal factors therefore exhaust the tangent space with genus-2 factors",
        "orbit_factor_dimensions", 5,
        check=lambda v: v["admissible"] == [2],
        method="combinatorial",
    )
    _computed(
        ctx, root, "m5.stabilizer",
        "the stabilizer of a factor has index 5, hence is a full Sylow 2-subgroup",
        "orbit_stabilizer_order", 5,
        check=lambda v: v["stabilizer_is_full_two_part"],
        method="combinatorial",
    )
    _axiom(root, "m5.hyper", "AX-HYPER",
           "each genus-2 factor is hyperelliptic with 6 distinguished points "
           "permuted by the stabilizer")
    _axiom(root, "m5.torelli", "AX-TORELLI",
           "for hyperelliptic factors the stabilizer acts faithfully on the curve")
    stabilizer_order = ctx.run("orbit_stabilizer_order", 5)["stabilizer_order"]
    _computed(
        ctx, root, "m5.weierstrass",
        "every partition of the 6 points into power-of-2 orbits has an orbit of "
        "size at most 2, so half the stabilizer fixes a point",
        "weierstrass_orbit_argument", stabilizer_order,
        check=lambda v: v["every_partition_has_small_part"],
    )
    _axiom(root, "m5.point-stab", "AX-POINT-STAB",
           "that point stabilizer is cyclic, so an element of half the stabilizer "
           "order exists")
    _computed(
        ctx, root, "m5.no-order16",
        f"the group has no element of order {stabilizer_order // 2}",
        "element_orders",
        check=lambda v, needed=stabilizer_order // 2: needed not in v,
    )
    return _finish_case(5, root)


def _case_m8(ctx: ProofContext) -> CaseCertificate:
    root = _case_root(8, "no orbit of size 8 exists")
    _axiom(root, "m8.decomposition", "AX-PPAV-DECOMP")
    _axiom(root, "m8.tangent-model", "AX-HODGE")
    _computed(
        ctx, root, "m8.factor-dims",
        "eight equal factors fit only as elliptic curves, an 8-dimensional "
        "invariant subspace; the stabilizers have order 20",
        "orbit_factor_dimensions", 8,
        check=lambda v: v["admissible"] == [1],
        method="combinatorial",
    )
    _computed(
        ctx, root, "m8.sylow5-in-stabilizers",
        "every order-20 subgroup contains the unique order-5 subgroup normally",
        "order5_normal_in_subgroups", ctx.group.order // 8,
        check=lambda v: v["all_ok"],
    )
    _axiom(root, "m8.elliptic", "AX-ELLIPTIC-PPAV",
           "the order-5 subgroup cannot act on an elliptic factor, so it fixes all "
           "eight factors pointwise")
    subsets8 = ctx.run("subsets_of_dimension", 8)
    sylow5_gen = ctx.run("unique_order5_subgroup").get("generator_position")
    _computed(
        ctx, root, "m8.block-exists",
        "an 8-dimensional invariant subspace is a sum of summands of total dimension 8",
        "subsets_of_dimension", 8,
        check=lambda v: bool(v),
        method="combinatorial",
    )
    for i, subset in enumerate(subsets8):
        _computed(
            ctx, root, f"m8.nontrivial{i}",
            f"the order-5 generator acts without a single fixed vector on the "
            f"8-dimensional invariant subspace on summands {subset}",
            "tangent_eigen_exponents", sylow5_gen, subset,
            check=lambda v: any(e != 0 for e in v),
        )
    return _finish_case(8, root)


def _case_m10(ctx: ProofContext) -> CaseCertificate:
    root = _case_root(10, "no orbit of size 10 exists")
    _axiom(root, "m10.decomposition", "AX-PPAV-DECOMP",
           "ten elliptic factors whose tangent lines span the space; stabilizers "
           "have index 10")
    _computed(
        ctx, root, "m10.factor-dims",
        "ten equal factors are elliptic and exhaust the tangent space",
        "orbit_factor_dimensions", 10,
        check=lambda v: v["admissible"] == [1],
        method="combinatorial",
    )
    _computed(
        ctx, root, "m10.stabilizers-contain-center",
        "every index-10 subgroup contains the center",
        "subgroups_contain", ctx.group.order // 10, "center",
        check=lambda v: v["all_contain"],
    )
    _axiom(root, "m10.central-orbit", "AX-CENTRAL-ORBIT",
           "the center stabilizes every tangent line of the orbit, so it would act "
           "on the whole tangent space by a scalar")
    _axiom(root, "m10.tangent-model", "AX-HODGE",
           "scalars transfer between the section action and its dual")
    center_generator = ctx.run("center").get("generator_position")
    _computed(
        ctx, root, "m10.scalar-mismatch",
        "the center generator acts by a scalar on each irreducible summand but by "
        "different scalars on two of them, so it acts by no global scalar",
        "tangent_scalars_by_summand", center_generator,
        check=lambda v: all(e is not None for e in v) and len(set(v)) > 1,
    )
    return _finish_case(10, root)


def _root_order(ctx, exponent: int) -> int:
    from math import gcd

    n = ctx.model.signature.modulus
    return n // gcd(n, exponent % n)


_CASES = {1: _case_m1, 2: _case_m2, 4: _case_m4, 5: _case_m5, 8: _case_m8, 10: _case_m10}


def verify_case(m: int, ctx: ProofContext) -> CaseCertificate:
    """Replay the exclusion argument for one orbit size."""
    if m not in _CASES:
        raise DsolidError(f"no case script for orbit size {m}")
    return _CASES[m](ctx)


def _preliminaries(ctx: ProofContext) -> list[ClaimNode]:
    group = ClaimNode("group", "structure of the symmetry group", "combinatorial", ok=True)
    _computed(ctx, group, "group.order", "the generators close to a finite group",
              "group_order", check=lambda v: v > 0)
    _computed(ctx, group, "group.relations", "declared conjugation relations hold",
              "relation_checks", check=lambda v: v["all_hold"])
    _computed(ctx, group, "group.center", "the center is cyclic",
              "center", check=lambda v: v["cyclic"])
    _computed(ctx, group, "group.derived", "the derived subgroup",
              "derived_subgroup")
    _computed(ctx, group, "group.sylow5", "the Sylow 5-subgroup is normal",
              "sylow_facts", 5, check=lambda v: v["normal"])
    _computed(ctx, group, "group.unique-order5", "the order-5 subgroup is unique",
              "unique_order5_subgroup", check=lambda v: v["count"] == 1)
    _computed(ctx, group, "group.element-orders", "element orders",
              "element_orders", check=lambda v: len(v) == ctx.group.order)

    rep = ClaimNode("representation", "structure of the section action and its dual",
                    "combinatorial", ok=True)
    x_count = ctx.model.signature.x_count
    _computed(ctx, rep, "representation.dimension",
              "the degree-2 monomials span the expected dimension",
              "tangent_dimension",
              check=lambda v: v == x_count * (x_count + 1) // 2)
    _computed(ctx, rep, "representation.homomorphism",
              "the induced matrices compose like the group elements",
              "homomorphism_check", check=lambda v: v["ok"])
    _computed(ctx, rep, "representation.summands",
              "the basis splits into invariant summands covering the space",
              "summand_dimensions",
              check=lambda v: sum(v) == ctx.tangent.dimension)
    _computed(ctx, rep, "representation.norms",
              "every summand character has norm 1 (irreducible)",
              "character_norms", check=lambda v: all(x == 1 for x in v))
    _computed(ctx, rep, "representation.pairwise",
              "distinct summands are non-isomorphic (inner product 0)",
              "pairwise_inner_products",
              check=lambda v: all(e["value"] == 0 for e in v))
    _computed(ctx, rep, "representation.faithful",
              "the full action has trivial kernel",
              "representation_kernel", check=lambda v: v["order"] == 1)
    _computed(ctx, rep, "representation.summand-kernels",
              "pointwise stabilizers of the summands", "summand_kernels")

    hurwitz = ClaimNode("hurwitz", "genus bounds by scenario exhaustion",
                        "combinatorial", ok=True)
    for k in (2, 4, 5):
        _computed(ctx, hurwitz, f"hurwitz.k{k}",
                  f"every admissible scenario below the bound for 2^{k}*5 actions "
                  "is excluded",
                  "min_genus_bound", k,
                  check=lambda v: v["counterexample"] is None)
    return [group, rep, hurwitz]


def verify_theorem(
    model: ParsedModel,
    cases=None,
    max_closure: int = 10**6,
    threads: int = 1,
) -> TheoremCertificate:
    """Run the full verification and assemble the theorem certificate.

    ``cases`` restricts the orbit sizes to verify; a restricted run can at
    best be Incomplete.  ``threads`` parallelizes case verification; the
    assembled certificate is identical for every thread count.
    """
    ctx = ProofContext(model, max_closure=max_closure)
    return verify_with_context(ctx, cases=cases, threads=threads)


def verify_with_context(ctx: ProofContext, cases=None, threads: int = 1) -> TheoremCertificate:
    preliminaries = _preliminaries(ctx)
    all_sizes = enumerate_orbit_sizes(ctx.group.order, ctx.tangent.dimension)
    requested = list(all_sizes) if cases is None else sorted(set(cases))
    unknown = [m for m in requested if m not in all_sizes]
    if unknown:
        raise DsolidError(f"orbit sizes {unknown} are not admissible for this model")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            produced = list(pool.map(lambda m: verify_case(m, ctx), requested))
    else:
        produced = [verify_case(m, ctx) for m in requested]
    produced.sort(key=lambda c: c.m)

    prelim_ok = all(node.ok for root in preliminaries for node in root.walk())
    cases_ok = all(c.verdict == "Excluded" for c in produced)
    complete = requested == list(all_sizes)
    if not prelim_ok or not cases_ok:
        verdict = "failed"
        conclusion = "verification failed; see the failing claims"
    elif not complete:
        verdict = "incomplete"
        conclusion = (
            f"only orbit sizes {requested} were verified out of {list(all_sizes)}; "
            "no theorem-level conclusion is drawn"
        )
    else:
        verdict = "verified"
        conclusion = (
            "every admissible orbit size is excluded, so no decomposition of the "
            "polarized abelian variety into Jacobians of curves is compatible with "
            "the symmetry action: it is not a direct sum of Jacobians of curves "
            "(conditional on the declared axiom catalog)"
        )
    corollary = ClaimNode(
        "corollary.nonrational",
        axiom_statement("AX-CG")
        + " Instantiated here: with the theorem verified, the model variety is not rational.",
        "axiom",
        ok=True,
        axiom_id="AX-CG",
    )
    return TheoremCertificate(
        model_digest=ctx.model.digest(),
        group_order=ctx.group.order,
        tangent_dimension=ctx.tangent.dimension,
        orbit_sizes=all_sizes,
        preliminaries=preliminaries,
        cases=produced,
        overall_verdict=verdict,
        conclusion=conclusion,
        corollary=corollary if verdict == "verified" else None,
    )


def replay_certificate(cert: TheoremCertificate, ctx: ProofContext) -> list[dict]:
    """Re-execute every recorded operation and report mismatches."""
    mismatches = []
    roots = list(cert.preliminaries) + [case.root for case in cert.cases]
    for root in roots:
        for node in root.walk():
            if not node.operation or not isinstance(node.result, (dict, list, int, str)):
                continue
            if isinstance(node.result, dict) and "error" in node.result:
                continue
            fresh = ctx.run(node.operation, *node.arguments)
            if canonical_json(fresh) != canonical_json(node.result):
                mismatches.append(
                    {"claim_id": node.claim_id, "operation": node.operation,
                     "recorded": node.result, "recomputed": fresh}
                )
            if digest_inputs(node.operation, node.arguments) != node.inputs_digest:
                mismatches.append({"claim_id": node.claim_id, "digest_mismatch": True})
    return mismatches

"""Command-line front end.

Subcommands: ``group`` (group structure report), ``rep`` (section action
report), ``hurwitz --k`` (genus-bound scenario exhaustion), ``all`` (the full
theorem run, optionally writing the certificate).  Exit codes: 0 verified,
1 verification failure, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import emit_certificate
from .curves import min_genus_bound
from .errors import DsolidError, ModelError, UnsupportedParameter
from .modelfile import builtin_model_path, load_model
from .sections import basis_names
from .theorem import ProofContext, verify_with_context


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--model",
        default=None,
        help="model file (defaults to the packaged quartic model)",
    )
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--max-closure",
        type=int,
        default=10**6,
        metavar="N",
        help="abort group closure past N elements (default 1000000)",
    )

    parser = argparse.ArgumentParser(
        prog="dsolid",
        description=(
            "Exact finite verification that the intermediate Jacobian of a "
            "symmetric quartic double solid is not a sum of Jacobians of curves."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("group", parents=[common],
                   help="group order, center, derived and Sylow facts")
    sub.add_parser("rep", parents=[common],
                   help="eigenvalue tables and the summand decomposition")

    hurwitz = sub.add_parser("hurwitz", parents=[common],
                             help="genus-bound scenario exhaustion")
    hurwitz.add_argument("--k", type=int, required=True, choices=(2, 4, 5))

    full = sub.add_parser("all", parents=[common], help="full theorem verification")
    full.add_argument("--certificate", metavar="PATH", help="write the JSON certificate here")
    full.add_argument(
        "--case",
        type=int,
        action="append",
        metavar="M",
        help="restrict to this orbit size (repeatable; result is Incomplete)",
    )
    full.add_argument("--threads", type=int, default=1, metavar="N")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "hurwitz":
            return _run_hurwitz(args)
        model = load_model(args.model if args.model else builtin_model_path())
    except ModelError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: cannot read model: {err}", file=sys.stderr)
        return 2

    try:
        ctx = ProofContext(model, max_closure=args.max_closure)
    except DsolidError as err:
        print(f"verification failure: {type(err).__name__}: {err}", file=sys.stderr)
        return 1

    if args.command == "group":
        return _run_group(ctx, args)
    if args.command == "rep":
        return _run_rep(ctx, args)
    return _run_all(ctx, args)


def _run_group(ctx: ProofContext, args) -> int:
    facts = {
        "order": ctx.run("group_order"),
        "center": ctx.run("center"),
        "derived_subgroup": ctx.run("derived_subgroup"),
        "sylow5": ctx.run("sylow_facts", 5),
        "sylow2": ctx.run("sylow_facts", 2),
        "element_order_histogram": _histogram(ctx.run("element_orders")),
        "index10_subgroups_contain_center": ctx.run(
            "subgroups_contain", ctx.group.order // 10, "center"
        )
        if ctx.group.order % 10 == 0
        else None,
    }
    if args.json:
        print(json.dumps(facts, indent=2, sort_keys=True))
        return 0
    print(f"group order          {facts['order']}")
    center = facts["center"]
    print(
        f"center               order {center['order']}"
        + (f", cyclic, generated by {center['generator_word']}" if center["cyclic"] else "")
    )
    derived = facts["derived_subgroup"]
    print(f"derived subgroup     order {derived['order']}")
    sylow5 = facts["sylow5"]
    print(f"Sylow 5-subgroup     order {sylow5['order']}, normal: {sylow5['normal']}")
    print(f"Sylow 2-subgroup     order {facts['sylow2']['order']}")
    print("element orders       " + _format_histogram(facts["element_order_histogram"]))
    idx10 = facts["index10_subgroups_contain_center"]
    if idx10:
        print(
            f"index-10 subgroups   {idx10['count']} of them; "
            f"all contain the center: {idx10['all_contain']}"
        )
    return 0


def _run_rep(ctx: ProofContext, args) -> int:
    names = basis_names(ctx.model.signature)
    first = ctx.model.generator_names[0]
    facts = {
        "basis": list(names),
        "summands": ctx.run("summands"),
        "summand_dimensions": ctx.run("summand_dimensions"),
        "character_norms": ctx.run("character_norms"),
        "pairwise_inner_products": ctx.run("pairwise_inner_products"),
        "summand_kernels": ctx.run("summand_kernels"),
        "generator_matrices": {
            name: ctx.run("generator_section_matrix", name)
            for name in ctx.model.generator_names
        },
    }
    if args.json:
        print(json.dumps(facts, indent=2, sort_keys=True))
        return 0
    matrix = facts["generator_matrices"][first]
    print(f"section basis and the action of generator '{first}':")
    for j, name in enumerate(names):
        target = matrix["targets"][j]
        exponent = matrix["exponents"][j]
        arrow = f"-> zeta^{exponent} * {names[target]}"
        print(f"  {name:8s} {arrow}")
    print(f"summand dimensions   {facts['summand_dimensions']}")
    print(f"character norms      {facts['character_norms']}")
    print(
        "pairwise products    "
        + ", ".join(f"({e['pair'][0]},{e['pair'][1]})={e['value']}" for e in facts["pairwise_inner_products"])
    )
    for entry in facts["summand_kernels"]:
        print(f"summand {entry['summand']} kernel     order {entry['order']}")
    return 0


def _run_hurwitz(args) -> int:
    try:
        result = min_genus_bound(args.k)
    except UnsupportedParameter as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(result.as_json(), indent=2, sort_keys=True))
        return 0 if result.counterexample is None else 1
    print(f"k = {args.k}: genus bound {result.bound}, {result.scenario_count} scenario(s)")
    for genus, verdicts in result.scenarios:
        for verdict in verdicts:
            s = verdict.scenario
            print(
                f"  g={s.g} g'={s.g_prime} n={s.n}  route={verdict.route:8s} "
                f"excluded={verdict.excluded}"
            )
    if result.counterexample is not None:
        print(f"counterexample: {result.counterexample}", file=sys.stderr)
        return 1
    return 0


def _run_all(ctx: ProofContext, args) -> int:
    try:
        cert = verify_with_context(ctx, cases=args.case, threads=args.threads)
    except DsolidError as err:
        print(f"verification failure: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    text = emit_certificate(cert)
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as handle:
            handle.write(text)
    if args.json:
        print(text, end="")
    else:
        print(f"group order          {cert.group_order}")
        print(f"tangent dimension    {cert.tangent_dimension}")
        print(f"orbit sizes          {list(cert.orbit_sizes)}")
        for case in cert.cases:
            print(f"  case m={case.m:<3d} {case.verdict}"
                  + (f"  (failing: {', '.join(case.failed_claims())})" if case.verdict != "Excluded" else ""))
        print(f"axioms used          {', '.join(cert.axioms_used())}")
        print(f"verdict              {cert.overall_verdict}")
        print(cert.conclusion)
    if cert.overall_verdict == "verified":
        return 0
    return 1


def _histogram(values) -> dict[str, int]:
    out: dict[str, int] = {}
    for v in values:
        out[str(v)] = out.get(str(v), 0) + 1
    return out


def _format_histogram(hist: dict[str, int]) -> str:
    return ", ".join(f"{k}:{v}" for k, v in sorted(hist.items(), key=lambda kv: int(kv[0])))


if __name__ == "__main__":
    raise SystemExit(main())

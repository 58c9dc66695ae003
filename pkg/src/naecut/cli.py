"""Command line front end.

Exit codes: 0 yes/valid, 1 no/unsat/invalid, 2 usage or format error,
3 budget exceeded.  Machine-readable output lines are prefixed `s`/`v`.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .errors import BudgetExceeded, FormatError
from .formula import emit_cnf, nae_satisfies, occurrence_counts, parse_cnf
from .graphs import (
    emit_colouring,
    emit_graph,
    enumerate_triangles,
    find_k_colouring,
    find_monochromatic_triangle,
    max_degree,
    parse_colouring,
    parse_graph,
    verify_colouring,
)
from .reduction import (
    build_graph,
    construct_5_colouring,
    cut_from_vertex_assignment,
    cut_to_assignment,
    emit_reduction_map,
    extract_nae,
    graph_from_reduction_map,
    parse_reduction_map,
)
from .solvers import (
    SearchBudget,
    _randbelow,
    brute_force_cut,
    brute_force_nae,
    emit_cut_witness,
    emit_nae_witness,
    exhaustive_budget,
    generate_instance,
    parse_cut_witness,
    parse_nae_witness,
)
from .transform import (
    check_properties,
    emit_transform_map,
    lift_assignment,
    parse_transform_map,
    project_assignment,
    split_repeated_variables,
    transform_map_comments,
)

DEFAULT_COLOUR_BUDGET = 10_000_000


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _budget_from_env() -> SearchBudget:
    raw = os.environ.get("NAE_REDUCE_BUDGET")
    if raw is None:
        return SearchBudget()
    try:
        return SearchBudget(max_states=int(raw))
    except ValueError:
        raise FormatError(f"NAE_REDUCE_BUDGET must be a positive integer, got {raw!r}") from None


def cmd_transform(args) -> int:
    f = parse_cnf(_read(args.cnf))
    out, tm = split_repeated_variables(f)
    text = emit_cnf(out) + transform_map_comments(tm)
    if args.output:
        _write(args.output, text)
    else:
        print(text, end="")
    if args.map:
        _write(args.map, emit_transform_map(tm))
    return 0


def cmd_reduce(args) -> int:
    f = parse_cnf(_read(args.cnf))
    if args.skip_transform:
        report = check_properties(f)
        if not report.all_hold():
            raise FormatError(
                "formula violates the split properties: " + ", ".join(report.failures())
            )
        prepared = f
    else:
        prepared, _ = split_repeated_variables(f)
    g, rm = build_graph(prepared)
    colouring = construct_5_colouring(g, rm)
    print(f"vertices {g.num_vertices}")
    print(f"edges {len(g.edges)}")
    print(f"triangles {len(enumerate_triangles(g))}")
    print(f"max degree {max_degree(g)}")
    print(f"colours {colouring.k}")
    if args.output:
        _write(args.output, emit_graph(g))
    if args.map:
        _write(args.map, emit_reduction_map(rm))
    return 0


def cmd_solve_nae(args) -> int:
    f = parse_cnf(_read(args.cnf))
    witness = brute_force_nae(f, _budget_from_env())
    text = emit_nae_witness(witness)
    print(text, end="")
    if args.output:
        _write(args.output, text)
    return 0 if witness is not None else 1


def cmd_solve_cut(args) -> int:
    g = parse_graph(_read(args.graph))
    cut = brute_force_cut(g, _budget_from_env())
    text = emit_cut_witness(cut)
    print(text, end="")
    if args.output:
        _write(args.output, text)
    return 0 if cut is not None else 1


def cmd_color(args) -> int:
    g = parse_graph(_read(args.graph))
    colouring = find_k_colouring(g, args.k, node_budget=args.budget)
    if colouring is None:
        print("s NO-COLOURING")
        return 1
    print("s COLOURING-FOUND")
    text = emit_colouring(colouring)
    print(text, end="")
    if args.output:
        _write(args.output, text)
    return 0


def cmd_triangles(args) -> int:
    g = parse_graph(_read(args.graph))
    triangles = enumerate_triangles(g)
    print(f"triangles {len(triangles)}")
    for u, v, w in triangles:
        print(f"t {u} {v} {w}")
    return 0


def _verify_assignment(args) -> int:
    f = parse_cnf(_read(args.object))
    witness = parse_nae_witness(_read(args.certificate))
    if witness is None:
        raise FormatError("certificate carries no assignment")
    if args.map:
        tm = parse_transform_map(_read(args.map))
        try:
            project_assignment(tm, witness)
        except ValueError as exc:
            print(f"invalid: {exc}")
            return 1
    if nae_satisfies(f, witness):
        print("valid assignment")
        return 0
    for i, clause in enumerate(f.clauses, start=1):
        values = [lit.value_under(witness) for lit in clause.literals]
        if all(values) or not any(values):
            lits = " ".join(str(s) for s in clause.signed())
            print(f"invalid: clause {i} ({lits}) has all-equal values")
            return 1
    print("invalid")
    return 1


def _verify_cut(args) -> int:
    g = parse_graph(_read(args.object))
    cut = parse_cut_witness(_read(args.certificate), g.num_vertices)
    if cut is None:
        raise FormatError("certificate carries no cut")
    if not cut.side_a or not cut.side_b:
        print("invalid: one side of the cut is empty")
        return 1
    bad = find_monochromatic_triangle(g, cut)
    if bad is not None:
        print(f"invalid: monochromatic triangle {bad[0]} {bad[1]} {bad[2]}")
        return 1
    if args.map:
        rm = parse_reduction_map(_read(args.map))
        if graph_from_reduction_map(rm) != g:
            raise FormatError("reduction map does not describe this graph")
        derived = cut_to_assignment(rm, cut)
        if args.assignment:
            stated = parse_nae_witness(_read(args.assignment))
            if stated is None:
                raise FormatError("assignment certificate carries no assignment")
            mismatched = [
                x for x, value in derived.items() if stated.get(x) != value
            ]
            if mismatched:
                print(f"invalid: cut disagrees with assignment on variables {mismatched}")
                return 1
    print("valid cut")
    return 0


def _verify_coloring(args) -> int:
    g = parse_graph(_read(args.object))
    colouring = parse_colouring(_read(args.certificate))
    if verify_colouring(g, colouring):
        print("valid colouring")
        return 0
    for u, v in g.sorted_edges():
        if colouring.colours.get(u) == colouring.colours.get(v):
            print(f"invalid: edge {u} {v} is monochromatic")
            return 1
    print("invalid: colouring is partial or uses colours outside 1..k")
    return 1


def cmd_verify(args) -> int:
    if args.kind == "assignment":
        return _verify_assignment(args)
    if args.kind == "cut":
        return _verify_cut(args)
    return _verify_coloring(args)


def _roundtrip_trial(f, break_gadget: bool) -> list[str]:
    """Run one end-to-end trial; returns the list of failed checks."""
    problems = []
    split, tm = split_repeated_variables(f)
    if not check_properties(split).all_hold():
        problems.append("split-properties")

    wit = brute_force_nae(f, exhaustive_budget(f.num_vars))
    wit_split = brute_force_nae(split, exhaustive_budget(split.num_vars))
    if (wit is None) != (wit_split is None):
        problems.append("split-equivalence")
    if wit is not None:
        lifted = lift_assignment(tm, wit)
        if not nae_satisfies(split, lifted):
            problems.append("lifted-witness")
        if project_assignment(tm, lifted) != wit:
            problems.append("lift-project-roundtrip")

    g, rm = build_graph(split)
    if break_gadget:
        for gadget in rm.clause_gadget.values():
            g = g.without_edge(gadget.a, gadget.b)

    if max_degree(g) > 8:
        problems.append("degree-bound")
    colouring = construct_5_colouring(g, rm)
    if colouring.k > 5:
        problems.append("colour-bound")
    triangles = enumerate_triangles(g)
    for gadget in rm.clause_gadget.values():
        for v in gadget.internal_vertices():
            if sum(1 for tri in triangles if v in tri) != 5:
                problems.append("gadget-triangles")
                break
        else:
            continue
        break

    cut = brute_force_cut(g, exhaustive_budget(g.num_vertices))
    if (cut is not None) != (wit is not None):
        problems.append("cut-equivalence")
    if cut is not None and not break_gadget:
        if not nae_satisfies(split, cut_to_assignment(rm, cut)):
            problems.append("cut-witness")

    extracted, _ = extract_nae(g)
    wit_extracted = brute_force_nae(extracted, exhaustive_budget(extracted.num_vars))
    if (wit_extracted is None) != (wit is None):
        problems.append("extraction-equivalence")
    if wit_extracted is not None and extracted.num_vars >= 2:
        try:
            cut_from_vertex_assignment(g, wit_extracted)
        except ValueError:
            problems.append("extraction-cut")
    if any(c > 7 for c in occurrence_counts(extracted).values()):
        problems.append("extraction-occurrences")
    return problems


def cmd_roundtrip(args) -> int:
    if args.trials < 0:
        raise FormatError("trial count must be non-negative")
    if args.trials > 0 and (args.num_vars < 3 or args.num_clauses < 1):
        raise FormatError("need at least 3 variables and 1 clause")
    rng = random.Random(args.seed)
    failed = 0
    for t in range(args.trials):
        n = 3 + _randbelow(rng, args.num_vars - 2)
        m = 1 + _randbelow(rng, args.num_clauses)
        instance_seed = rng.getrandbits(32)
        f = generate_instance(instance_seed, n, m)
        problems = _roundtrip_trial(f, args.break_gadget)
        if problems:
            failed += 1
            print(f"trial {t} seed {instance_seed} n {n} m {m} FAIL {','.join(problems)}")
        else:
            print(f"trial {t} seed {instance_seed} n {n} m {m} ok")
    print(f"trials {args.trials} passed {args.trials - failed} failed {failed}")
    return 0 if failed == 0 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="naecut",
        description="Monotone NAE-3SAT to triangle-free cut reduction toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="split repeated variables of a monotone 3-CNF")
    p.add_argument("cnf")
    p.add_argument("-o", "--output")
    p.add_argument("--map")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("reduce", help="build the reduction graph of a formula")
    p.add_argument("cnf")
    p.add_argument("-o", "--output")
    p.add_argument("--map")
    p.add_argument("--skip-transform", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve-nae", help="decide NAE satisfiability exhaustively")
    p.add_argument("cnf")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve_nae)

    p = sub.add_parser("solve-cut", help="decide triangle-free cut existence exhaustively")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve_cut)

    p = sub.add_parser("color", help="search for a proper k-colouring")
    p.add_argument("graph")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--budget", type=int, default=DEFAULT_COLOUR_BUDGET)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("triangles", help="list the triangles of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_triangles)

    p = sub.add_parser("verify", help="check a certificate against its object")
    p.add_argument("kind", choices=("assignment", "cut", "coloring"))
    p.add_argument("object")
    p.add_argument("certificate")
    p.add_argument("--map")
    p.add_argument("--assignment")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roundtrip", help="run seeded end-to-end equivalence trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-n", "--num-vars", type=int, required=True)
    p.add_argument("-m", "--num-clauses", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--break-gadget", action="store_true")
    p.set_defaults(func=cmd_roundtrip)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

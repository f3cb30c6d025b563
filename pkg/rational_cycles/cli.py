"""
Command-line surface.

  orbit      iterate T from a fraction "j/k"
  cycle      periodic point and cycle of a 0-1 vector such as "1100"
  enumerate  list vectors of a given length with their points
  search     depth search of one D_k
  census     depth searches over a range of k
  phenomena  scaling / repetition / covariance for one k, or a census
  atable     single-attractor counts A(N) for several depths
  fit        exponential decay fit to an A(N) table
  verify     closed-form, counting and search-agreement checks

Exit status: 0 ok, 1 I/O error, 2 invalid input, 3 an undecided orbit was
seen, 4 a verification check failed.
"""

import argparse
import json
import logging
import random
import sys
from typing import List, Optional

from rational_cycles.census import (
    PUBLISHED_A_TABLE,
    DenominatorReport,
    a_table_result,
    admissible_denominators,
    check_formula_agreement,
    search_denominator,
    sweep,
)
from rational_cycles.config import FORMATS, RunConfig, load_config, parse_depths
from rational_cycles.fitting import fit_exponential
from rational_cycles.parity_vectors import (
    ParityVector,
    denominator_of,
    enumerate_vectors,
    invariants,
    is_primitive,
    minimal_period,
    periodic_cycle,
    periodic_point,
    verify_closed_form,
    verify_counting_identity,
)
from rational_cycles.phenomena import (
    PhenomenaExplanation,
    VectorSetWitness,
    detect_phenomena,
    explain_phenomena,
    phenomena_census,
)
from rational_cycles.rational_core import canonical_rotation, orbit, parse_rational
from rational_cycles.records import csv_text, read_csv, registry_lines

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)-8s] %(name)s: %(message)s"
LOG_DATE_FORMAT = "%H:%M:%S"

EXIT_OK = 0
EXIT_IO_ERROR = 1
EXIT_INVALID = 2
EXIT_UNDECIDED = 3
EXIT_CHECK_FAILED = 4

SUMMARY_FIELDS = ("k", "depth", "step_cap", "attractors", "undecided", "single_attractor")


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _emit(config: RunConfig, text: str) -> None:
    if text and not text.endswith("\n"):
        text += "\n"
    if config.output_path is None:
        sys.stdout.write(text)
        return
    with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    logger.info("Wrote %s", config.output_path)


def _jsonl(objects) -> str:
    return "".join(json.dumps(obj, separators=(",", ":")) + "\n" for obj in objects)


def _tuple_text(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _summary_row(report: DenominatorReport) -> dict:
    return {
        "k": report.k,
        "depth": report.depth,
        "step_cap": report.step_cap,
        "attractors": report.attractor_count,
        "undecided": len(report.undecided_numerators),
        "single_attractor": int(report.single_attractor),
    }


def _summary_line(report: DenominatorReport) -> str:
    return (
        f"k={report.k} depth={report.depth}: {report.attractor_count} attractor(s), "
        f"{len(report.undecided_numerators)} undecided"
    )


def _attractor_table(reports: List[DenominatorReport]) -> str:
    lines = [f"{'k':>6} {'c':>12} {'lambda':>7} {'omega':>6} {'basin':>7}"]
    for report in reports:
        for record, basin in zip(report.attractors, report.basin_sizes):
            lines.append(
                f"{record.k:>6} {record.min_numerator:>12} {record.lam:>7} "
                f"{record.omega:>6} {basin:>7}"
            )
    for report in reports:
        lines.append(_summary_line(report))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_orbit(args, config: RunConfig) -> int:
    x = parse_rational(args.x)
    outcome = orbit(x, config.step_cap)
    if config.format == "jsonl":
        _emit(config, _jsonl([{
            "x": str(x),
            "tail": [str(v) for v in outcome.tail] if outcome.decided else [],
            "cycle": [str(v) for v in outcome.cycle],
            "lambda": outcome.cycle_length,
            "omega": outcome.odd_count,
            "parity": "".join(map(str, outcome.cycle_parity)),
            "steps_used": outcome.steps_used,
            "decided": outcome.decided,
        }]))
    elif outcome.decided:
        _emit(config, "\n".join([
            f"x: {x}",
            f"tail: {_tuple_text(outcome.tail)}",
            f"cycle: {_tuple_text(outcome.cycle)}",
            f"lambda: {outcome.cycle_length}",
            f"omega: {outcome.odd_count}",
            f"parity: {''.join(map(str, outcome.cycle_parity))}",
        ]))
    else:
        _emit(config, f"x: {x}\nundecided after {outcome.steps_used} steps")
    return EXIT_OK if outcome.decided else EXIT_UNDECIDED


def cmd_cycle(args, config: RunConfig) -> int:
    v = ParityVector.parse(args.vector)
    inv = invariants(v)
    x = periodic_point(v)
    period = minimal_period(v)
    cycle = canonical_rotation(periodic_cycle(v)[:period])
    lines = [
        f"vector: {v}",
        f"x: {x}",
        f"k: {denominator_of(v)}",
        f"lambda: {inv.lam}",
        f"omega: {inv.omega}",
        f"rho: {inv.rho}",
        f"J: {inv.big_j}",
        f"cycle: {_tuple_text(cycle)}",
    ]
    if not is_primitive(v):
        logger.warning("Vector %s is imprimitive (minimal period %d)", v, period)
        lines.append(f"warning: imprimitive (minimal period {period})")
    _emit(config, "\n".join(lines))
    return EXIT_OK


def cmd_enumerate(args, config: RunConfig) -> int:
    rows = [
        {"vector": str(v), "x": str(periodic_point(v)), "k": denominator_of(v)}
        for v in enumerate_vectors(args.n, args.primitive_only)
    ]
    if config.format == "jsonl":
        _emit(config, _jsonl(rows))
    elif config.format == "csv":
        _emit(config, csv_text(("vector", "x", "k"), rows))
    else:
        _emit(config, "\n".join(f"{r['vector']} {r['x']} {r['k']}" for r in rows))
    return EXIT_OK


def _emit_reports(config: RunConfig, reports: List[DenominatorReport]) -> None:
    if config.format == "jsonl":
        _emit(config, "".join(line + "\n" for line in registry_lines(reports)))
    elif config.format == "csv":
        _emit(config, csv_text(SUMMARY_FIELDS, [_summary_row(r) for r in reports]))
    else:
        _emit(config, _attractor_table(reports))


def cmd_search(args, config: RunConfig) -> int:
    if config.k is None:
        raise ValueError("search needs --k")
    report = search_denominator(config.k, config.depth, config.step_cap)
    _emit_reports(config, [report])
    return EXIT_OK if report.decided else EXIT_UNDECIDED


def cmd_census(args, config: RunConfig) -> int:
    if config.k_max is None:
        raise ValueError("census needs --k-max")
    ks = admissible_denominators(config.k_max, config.k_min)
    reports = sweep(ks, config.depth, config.step_cap, config.jobs)
    for report in reports:
        logger.info("%s", _summary_line(report))
    if config.format == "human":
        _emit(config, "\n".join(_summary_line(r) for r in reports))
    else:
        _emit_reports(config, reports)
    undecided = any(not r.decided for r in reports)
    return EXIT_UNDECIDED if undecided else EXIT_OK


def _pair_text(c1, c2) -> str:
    return f"{c1.min_numerator} ({c1.lam},{c1.omega}) / {c2.min_numerator} ({c2.lam},{c2.omega})"


def _witness_text(w: VectorSetWitness) -> str:
    size = "not enumerated" if w.enumerated is None else f"{w.enumerated} in set"
    return f"V({w.lam},{w.omega},d={w.d}) {w.witnessed} witnessed, {size}"


def _explanation_lines(explanation: PhenomenaExplanation) -> List[str]:
    lines = [f"explain repetition: {_witness_text(w)}" for w in explanation.repetition]
    for s in explanation.scaling:
        lines.append(
            f"explain scaling x{s.delta}: {_witness_text(s.short)}; {_witness_text(s.long)}"
        )
    return lines


def cmd_phenomena(args, config: RunConfig) -> int:
    if config.k is not None:
        report = search_denominator(config.k, config.depth, config.step_cap)
        found = detect_phenomena(report)
        lines = [_summary_line(report)]
        lines += [f"scaling: {_pair_text(c1, c2)}" for c1, c2 in found.scaling_pairs]
        lines += [
            f"scaling (fractional): {_pair_text(c1, c2)}" for c1, c2 in found.fractional_pairs
        ]
        for group in found.repetition_groups:
            members = ", ".join(str(r.min_numerator) for r in group)
            lines.append(f"repetition ({group[0].lam},{group[0].omega}): {members}")
        lines += [
            f"covariance exception: {_pair_text(c1, c2)}"
            for c1, c2 in found.covariance_exceptions
        ]
        lines += _explanation_lines(explain_phenomena(found))
        _emit(config, "\n".join(lines))
        return EXIT_OK if report.decided else EXIT_UNDECIDED

    if config.k_max is None:
        raise ValueError("phenomena needs --k or --k-max")
    census = phenomena_census(config.k_max, config.depth, config.step_cap, config.jobs)
    row = {
        "k_max": census.k_max,
        "depth": census.depth,
        "surveyed": census.surveyed,
        "scaling_denominators": census.scaling_count,
        "repetition_denominators": census.repetition_count,
        "both_denominators": census.both_count,
        "scaling_pairs": census.scaling_pairs_total,
        "fractional_pairs": census.fractional_pairs_total,
        "repetition_groups": census.repetition_groups_total,
        "covariance_exception_denominators": census.covariance_exception_count,
    }
    if config.format == "csv":
        _emit(config, csv_text(tuple(row), [row]))
    elif config.format == "jsonl":
        _emit(config, _jsonl([row]))
    else:
        _emit(config, "\n".join(f"{key}: {value}" for key, value in row.items()))
    return EXIT_OK


def cmd_atable(args, config: RunConfig) -> int:
    k_max = config.k_max if config.k_max is not None else 2000
    depths = config.depths or tuple(depth for depth, _ in PUBLISHED_A_TABLE)
    result = a_table_result(k_max, depths, config.step_cap, config.jobs)
    rows = [{"depth": p.depth, "a": p.a} for p in result.points]
    if config.format == "jsonl":
        _emit(config, _jsonl(rows))
    elif config.format == "csv":
        _emit(config, csv_text(("depth", "a"), rows))
    else:
        lines = [f"{'N':>6} {'A':>6}"] + [f"{r['depth']:>6} {r['a']:>6}" for r in rows]
        lines.append(f"surveyed {result.surveyed} denominator(s) k <= {k_max}")
        _emit(config, "\n".join(lines))
    return EXIT_UNDECIDED if result.undecided_denominators else EXIT_OK


def cmd_fit(args, config: RunConfig) -> int:
    if args.points:
        with open(args.points, "r", encoding="utf-8") as fh:
            rows = read_csv(fh)
        try:
            points = [(int(row["depth"]), float(row["a"])) for row in rows]
        except KeyError as exc:
            raise ValueError(f"{args.points}: missing column {exc}") from exc
    else:
        points = list(PUBLISHED_A_TABLE)
    fit = fit_exponential(points, args.total)
    row = {"c1": f"{fit.c1:.6f}", "c2": f"{fit.c2:.6f}"}
    if config.format == "csv":
        _emit(config, csv_text(("c1", "c2"), [row]))
    elif config.format == "jsonl":
        _emit(config, _jsonl([{"c1": fit.c1, "c2": fit.c2}]))
    else:
        _emit(config, f"c1: {row['c1']}\nc2: {row['c2']}")
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    checks = (
        args.closed_form_exhaustive,
        args.closed_form_random,
        args.counting_max,
        args.agreement_k_max,
    )
    if any(n < 0 for n in checks):
        raise ValueError("verify sizes must be >= 0")
    if not any(checks):
        raise ValueError(
            "verify needs at least one of --bsl-exhaustive, --bsl-random, "
            "--prop32-max, --agreement-k-max"
        )
    results = []
    undecided = False

    if args.closed_form_exhaustive:
        ok = all(
            verify_closed_form(v)
            for n in range(1, args.closed_form_exhaustive + 1)
            for v in enumerate_vectors(n)
        )
        results.append((f"closed form, all vectors of length <= {args.closed_form_exhaustive}", ok))

    if args.closed_form_random:
        rng = random.Random(args.seed)
        ok = True
        for _ in range(args.closed_form_random):
            n = rng.randint(1, 64)
            ok &= verify_closed_form(ParityVector(tuple(rng.randint(0, 1) for _ in range(n))))
        results.append((f"closed form, {args.closed_form_random} random vectors", ok))

    if args.counting_max:
        ok = all(verify_counting_identity(n) for n in range(1, args.counting_max + 1))
        results.append((f"counting identity, n <= {args.counting_max}", ok))

    if args.agreement_k_max:
        ks = admissible_denominators(args.agreement_k_max)
        reports = sweep(ks, config.depth, config.step_cap, config.jobs)
        undecided = any(not r.decided for r in reports)
        ok = all(check_formula_agreement(rec) for r in reports for rec in r.attractors)
        results.append((f"search/closed-form agreement, k <= {args.agreement_k_max}", ok))

    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
    _emit(config, "\n".join(lines))
    if not all(ok for _, ok in results):
        logger.error("Verification failed")
        return EXIT_CHECK_FAILED
    return EXIT_UNDECIDED if undecided else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--k-min", type=int)
    common.add_argument("--k-max", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--step-cap", type=int)
    common.add_argument("--depths", help="comma list, e.g. 20,50,100")
    common.add_argument("--jobs", type=int)
    common.add_argument("--out", help="output file (stdout if omitted)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--log-level")

    parser = argparse.ArgumentParser(
        prog="rational-cycles",
        description="3x+1 dynamics on rationals with fixed odd denominator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", parents=[common], help="iterate T from j/k")
    p.add_argument("x", help='fraction such as "5/7"')
    p.set_defaults(handler=cmd_orbit)

    p = sub.add_parser("cycle", parents=[common], help="periodic point of a 0-1 vector")
    p.add_argument("vector", help='0-1 literal such as "1100"')
    p.set_defaults(handler=cmd_cycle)

    p = sub.add_parser("enumerate", parents=[common], help="list vectors of length n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--primitive-only", action="store_true")
    p.set_defaults(handler=cmd_enumerate)

    for name, handler, text in (
        ("search", cmd_search, "depth search of one D_k"),
        ("census", cmd_census, "depth searches over k_min..k_max"),
        ("phenomena", cmd_phenomena, "scaling, repetition, covariance"),
        ("atable", cmd_atable, "single-attractor counts A(N)"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.set_defaults(handler=handler)

    p = sub.add_parser("fit", parents=[common], help="fit A = c1 + (total-c1) exp(-c2 N)")
    p.add_argument("--points", help="CSV with depth,a columns (published table if omitted)")
    p.add_argument("--total", type=float, default=2000.0)
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument(
        "--bsl-exhaustive",
        "--closed-form-exhaustive",
        dest="closed_form_exhaustive",
        type=int,
        default=0,
        help="check the closed form on every vector of length <= N",
    )
    p.add_argument(
        "--bsl-random",
        "--closed-form-random",
        dest="closed_form_random",
        type=int,
        default=0,
        help="check the closed form on N random vectors",
    )
    p.add_argument(
        "--prop32-max",
        "--counting-max",
        dest="counting_max",
        type=int,
        default=0,
        help="check the cycle counting identity for n <= N",
    )
    p.add_argument("--agreement-k-max", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(
            k=args.k,
            k_min=args.k_min,
            k_max=args.k_max,
            depth=args.depth,
            step_cap=args.step_cap,
            jobs=args.jobs,
            depths=parse_depths(args.depths),
            output_path=args.out,
            format=args.format,
            log_level=args.log_level,
        )
        logging.basicConfig(level=config.log_level, format=LOG_FORMAT, datefmt=LOG_DATE_FORMAT)
        return args.handler(args, config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR


if __name__ == "__main__":
    sys.exit(main())

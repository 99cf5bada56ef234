"""Command-line entry point: ``p1stab <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .coords import DomainError, from_json
from .halfplane import d_hyp, d_Z
from .metric import brute_force_distance, distance, oracle_tail_bound, quotient_distance
from .verify import (
    CounterexampleConfig,
    Report,
    run_property_suite,
    verify_counterexample,
    verify_length_bound,
    verify_nonunique_geodesic,
    verify_quotient_counterexample,
)


def parse_hpoint(text: str) -> complex:
    """Accept ``0.5+10i``, ``0.5+10j`` or a bare real such as ``0.3``."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _load_point(path: str):
    return from_json(json.loads(Path(path).read_text()))


def cmd_dist(args) -> list[Report]:
    a, b = _load_point(args.p1), _load_point(args.p2)
    rep = Report("dist", "closed-form distance between two stability points")
    br = quotient_distance(a, b) if args.quotient else distance(a, b)
    rep.values.update(br.to_json())
    rep.values["quotient"] = args.quotient
    if args.oracle_window:
        if args.quotient:
            rep.notes.append("the windowed oracle evaluates the unquotiented metric only")
        else:
            bf = brute_force_distance(a, b, args.oracle_window)
            tail = oracle_tail_bound(a, b, args.oracle_window)
            rep.values.update({"oracle_d": bf.d, "tail_bound": tail})
            rep.tolerances["oracle"] = tail + 1e-6
            rep.check("closed form matches windowed oracle", abs(bf.d - br.d) <= tail + 1e-6)
    return [rep]


def cmd_dz(args) -> list[Report]:
    rep = Report("dz", "integer-anchored half-plane distance")
    rep.values["d_Z"] = d_Z(args.z1, args.z2)
    if args.z1.imag > 0 and args.z2.imag > 0:
        rep.values["d_hyp"] = d_hyp(args.z1, args.z2)
    return [rep]


def cmd_counterexample(args) -> list[Report]:
    cfg = CounterexampleConfig(
        window=args.window, k_range=tuple(args.k_range), grid=args.grid, tol=args.tol, seed=args.seed
    )
    return [verify_counterexample(cfg), verify_quotient_counterexample(cfg)]


def cmd_geodesic(args) -> list[Report]:
    return [verify_nonunique_geodesic(args.epsilon, args.samples)]


def cmd_length_bound(args) -> list[Report]:
    return [verify_length_bound(args.samples, args.seed)]


def cmd_suite(args) -> list[Report]:
    return [run_property_suite(args.seed, args.trials)]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="p1stab", description="Metric checks on stability conditions of P^1.")
    p.add_argument("--json", metavar="PATH", help="write reports as JSON")
    p.add_argument("--csv", metavar="PATH", help="write sampled curves or key values as CSV")
    p.add_argument("--timing", action="store_true", help="include runtimes in JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dist", help="distance between two points given as JSON files")
    s.add_argument("p1")
    s.add_argument("p2")
    s.add_argument("--quotient", action="store_true")
    s.add_argument("--oracle-window", type=int, default=0, metavar="N")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("dz", help="d_Z between two points of H u (R minus Z)")
    s.add_argument("z1", type=parse_hpoint)
    s.add_argument("z2", type=parse_hpoint)
    s.set_defaults(func=cmd_dz)

    s = sub.add_parser("counterexample", help="non-length-space witness, plain and quotient")
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--k-range", type=int, nargs=2, default=(-50, 50), metavar=("A", "B"))
    s.add_argument("--grid", type=int, default=241, help="alpha grid size per chamber")
    s.add_argument("--window", type=int, default=10_000, help="object window of the oracle cross-check")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("geodesic", help="two distinct d_Z geodesics with common endpoints")
    s.add_argument("--epsilon", type=float, default=0.01)
    s.add_argument("--samples", type=int, default=129)
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("length-bound", help="composite paths versus twice the quotient distance")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_length_bound)

    s = sub.add_parser("suite", help="randomised invariant checks")
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--trials", type=int, default=200)
    s.set_defaults(func=cmd_suite)
    return p


def _write_csv(path: str, reports: list[Report]) -> None:
    for rep in reports:
        curve = rep.artifacts.get("bent")
        if curve is not None:
            Path(path).write_text(curve.to_csv())
            return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["report", "key", "value"])
        for rep in reports:
            for k, v in rep.values.items():
                w.writerow([rep.name, k, json.dumps(v)])


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        reports = args.func(args)
    except (DomainError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for rep in reports:
        print(rep.summary())
    if args.json:
        payload = [r.to_json(args.timing) for r in reports]
        Path(args.json).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    if args.csv:
        _write_csv(args.csv, reports)
    return 0 if all(r.status == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: ``predict``, ``posterior``, ``confidence``, ``coverage`` and
``reproduce``.  Output goes to stdout as JSON (one object or array) or CSV;
numbers carry 15 significant digits.  Exit status is 0 on success, 1 when
``reproduce`` finds a failing claim and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .confidence import PValueKind, PriorNotIdentifiableError, confidence_distribution, confidence_interval, induced_prior
from .distributions import EvidenceData, density_grid, parse_prior, posterior_update
from .numerics import BACKEND, DomainError
from .oracle import FIELDS, coverage_exact, coverage_monte_carlo
from .prediction import (
    INFINITE_HORIZON,
    UndefinedQuantityError,
    confirmation_measure,
    predict_next,
    predict_run,
    prob_general,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

PREDICT_FIELDS = ("prior", "n", "t", "m", "predict_next", "predict_run", "prob_general",
                  "confirmation", "note")
POSTERIOR_FIELDS = ("prior", "n", "t", "p0", "p1", "w", "a", "b", "mean")
CONFIDENCE_FIELDS = ("pvalue", "n", "t", "p0", "p1", "w", "a", "b", "level", "lower", "upper",
                     "degenerate_point", "induced_prior")
GRID_FIELDS = ("kind", "theta", "value")
REPRODUCE_FIELDS = ("claim_id", "paper_location", "expected", "computed", "abs_diff", "threshold",
                    "passed")


class UsageError(Exception):
    pass


def _num(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.15g}")
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _num(obj)


def _emit(records: list[dict], fields, fmt: str, out) -> None:
    if fmt == "json":
        payload = records[0] if len(records) == 1 else records
        out.write(json.dumps(_clean(payload), ensure_ascii=False) + "\n")
        return
    writer = csv.DictWriter(out, fieldnames=list(fields), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: "" if rec.get(k) is None else _num(rec.get(k)) for k in fields})


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def _horizon(text: str):
    if text.strip().lower() in ("inf", "infinity"):
        return INFINITE_HORIZON
    return _count(text)


def _list(kind):
    def parse(text: str):
        try:
            return [kind(v) for v in text.split(",") if v.strip()]
        except (ValueError, argparse.ArgumentTypeError):
            raise argparse.ArgumentTypeError(f"malformed list {text!r}") from None
    return parse


def _data(args) -> EvidenceData:
    if args.n is None or args.t is None:
        raise UsageError("--n and --t are required")
    return EvidenceData(args.n, args.t)


def cmd_predict(args, out) -> int:
    prior = parse_prior(args.prior)
    data = _data(args)
    record = {"prior": prior.label(), "n": data.n, "t": data.t, "m": args.m,
              "predict_next": predict_next(prior, data), "predict_run": None,
              "prob_general": prob_general(prior, data), "confirmation": None, "note": None}
    if args.m is not None:
        record["predict_run"] = predict_run(prior, data, args.m)
    try:
        record["confirmation"] = confirmation_measure(prior, data)
    except UndefinedQuantityError as exc:
        record["note"] = str(exc)
    _emit([record], PREDICT_FIELDS, args.format, out)
    return EXIT_OK


def _grid_records(dist, points):
    return density_grid(dist, points).records() if points else None


def cmd_posterior(args, out) -> int:
    prior = parse_prior(args.prior)
    data = _data(args)
    dist = posterior_update(prior, data)
    record = {"prior": prior.label(), "n": data.n, "t": data.t, **dist.as_dict(), "mean": dist.mean()}
    grid = _grid_records(dist, args.grid)
    if args.format == "csv" and grid is not None:
        _emit(grid, GRID_FIELDS, "csv", out)
        return EXIT_OK
    if grid is not None:
        record["grid"] = grid
    _emit([record], POSTERIOR_FIELDS, args.format, out)
    return EXIT_OK


def cmd_confidence(args, out) -> int:
    kind = PValueKind.parse(args.pvalue)
    data = _data(args)
    dist = confidence_distribution(kind, data)
    interval = confidence_interval(dist, args.level)
    record = {"pvalue": kind.value, "n": data.n, "t": data.t, **dist.as_dict(), **interval.as_dict(),
              "induced_prior": None}
    try:
        record["induced_prior"] = induced_prior(kind, data).label()
    except PriorNotIdentifiableError as exc:
        record["note"] = str(exc)
    grid = _grid_records(dist, args.grid)
    if args.format == "csv" and grid is not None:
        _emit(grid, GRID_FIELDS, "csv", out)
        return EXIT_OK
    if grid is not None:
        record["grid"] = grid
    _emit([record], CONFIDENCE_FIELDS, args.format, out)
    return EXIT_OK


def cmd_coverage(args, out) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    reports = []
    for theta in args.theta:
        for n in args.n:
            if args.reps is not None:
                rep = coverage_monte_carlo(theta, n, args.proc, args.level, args.reps, args.seed,
                                           workers=args.workers)
            else:
                rep = coverage_exact(theta, n, args.proc, args.level)
            reports.append(rep.as_dict())
    _emit(reports, FIELDS, args.format, out)
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    from .reproduce import run_all

    rows = [r.as_dict() for r in run_all()]
    failed = [r for r in rows if not r["passed"]]
    if args.format == "table":
        width = max(len(r["claim_id"]) for r in rows)
        for r in rows:
            status = "PASS" if r["passed"] else "FAIL"
            out.write(f"{status}  {r['claim_id']:<{width}}  computed={_num(r['computed'])!s:<20} "
                      f"abs_diff={r['abs_diff']:.3g} (<= {r['threshold']:g})\n")
        out.write(f"{len(rows) - len(failed)}/{len(rows)} claims reproduced [backend: {BACKEND}]\n")
    else:
        _emit(rows, REPRODUCE_FIELDS, args.format, out)
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sunrise", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--n", type=_count, help="number of trials")
    data.add_argument("--t", type=_count, help="number of successes")
    data.add_argument("--grid", type=_count, default=0, help="density grid points (>= 2)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", parents=[common, data], help="predictive probabilities")
    p.add_argument("--prior", default="laplace")
    p.add_argument("--m", type=_horizon, default=None, help="future run length, or inf")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("posterior", parents=[common, data], help="posterior distribution")
    p.add_argument("--prior", default="laplace")
    p.set_defaults(func=cmd_posterior)

    p = sub.add_parser("confidence", parents=[common, data], help="confidence distribution and interval")
    p.add_argument("--pvalue", default="right", choices=("right", "left", "mid"))
    p.add_argument("--level", type=float, default=0.95)
    p.set_defaults(func=cmd_confidence)

    p = sub.add_parser("coverage", parents=[common], help="coverage of an oracle procedure")
    p.add_argument("--proc", default="two_way",
                   choices=("two_way", "three_way", "mid_p", "laplace_credible"))
    p.add_argument("--theta", type=_list(float), default=[0.5], help="true theta, comma-separated")
    p.add_argument("--n", type=_list(_count), help="trial counts, comma-separated")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--reps", type=_count, default=None, help="Monte Carlo replicates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_count, default=1)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("reproduce", help="check every closed-form claim")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, DomainError, UndefinedQuantityError) as exc:
        print(f"sunrise {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

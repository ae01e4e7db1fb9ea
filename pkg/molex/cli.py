"""
Command-line front end.

    python -m molex compute  --index chi --alpha -0.5 --in graphs.g6
    python -m molex verify   --n 5..8 --variant chi --alpha-grid default
    python -m molex lemmas   --step 1e-3 > chart.csv
    python -m molex lemmas   --sweep 5..8 --violations-csv violations.csv > chart.csv
    python -m molex extremal --n 13 --m 12 --variant chi --regime neg
    python -m molex enumerate --n 8 --m 7 > trees.g6
    python -m molex serve    --port 8000

stdout carries the machine-readable output (CSV, JSON or graph6); logs go to stderr.
Exit codes: 0 success (an infeasible extremal case is a success), 1 verification
failure, 2 usage or input error.
"""

from typing import Iterable, List, Optional, Sequence, Tuple
import argparse
import csv
import json
import logging
import sys

from pydantic import TypeAdapter

from molex.config import get_settings
from molex.schemas import (
    BoundForm,
    EnumerationSummary,
    IndexKind,
    IndexSpec,
    LemmaViolation,
    PARAMETRIZED_KINDS,
    Regime,
    Variant,
)
from molex.services.bounds import DomainError, UnsupportedCaseError, make_case, verdict
from molex.services.graph_io import ParseError, read_graphs, to_graph6, write_graph6
from molex.services.indices import InvalidParameterError, UndefinedTermError, evaluate
from molex.services.lemmas import (
    NoSignChangeError,
    find_platt_root,
    grid_report,
    parameter_grid,
)
from molex.services.realization import build_extremal
from molex.services.reduction import sign_chart_rows
from molex.services.search import EnumerationRangeError, enumerate_graphs, exhaustive_verify, graph_lemma_sweep
from molex.variants import get_variant_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """Flags that parse but do not make sense together."""


# chi and platt without --alpha mean the classical members
_PLAIN_KINDS = {
    IndexKind.GENERAL_SUM_CONNECTIVITY: IndexKind.SUM_CONNECTIVITY,
    IndexKind.GENERAL_PLATT: IndexKind.PLATT,
}


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _n_range(text: str) -> Tuple[int, int]:
    """'5' or '5..8' as an inclusive range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got '{text}'")


def _grid(text: Optional[str], default: Sequence[float]) -> List[float]:
    """'default' or a comma-separated list of numbers."""
    if text is None or text == "default":
        return list(default)
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected 'default' or comma-separated numbers, got '{text}'")


# ============================================================================
# Subcommands
# ============================================================================

def cmd_compute(args: argparse.Namespace) -> int:
    """One CSV row per input graph: graph6, n, m, index, parameter, value."""
    kind = IndexKind(args.index)
    parameter = args.k if kind == IndexKind.OGA else args.alpha
    if parameter is None and kind in _PLAIN_KINDS:
        kind = _PLAIN_KINDS[kind]
    if kind not in PARAMETRIZED_KINDS:
        parameter = None
    elif parameter is None:
        raise UsageError(f"--index {kind.value} needs {'--k' if kind == IndexKind.OGA else '--alpha'}")
    try:
        spec = IndexSpec(kind=kind, parameter=parameter)
    except ValueError as e:
        raise UsageError(str(e))
    graphs = read_graphs(args.input)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["graph6", "n", "m", "index", "parameter", "value"])
    for G in graphs:
        value = evaluate(G, spec)
        writer.writerow([to_graph6(G), G.n, G.m, spec.label, "" if parameter is None else _fmt(parameter), _fmt(value)])
    logger.info(f"Evaluated {spec.label} on {len(graphs)} graphs")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Exhaustive bound verification; JSON summaries on stdout, exit 1 on any violation."""
    settings = get_settings()
    variant = Variant(args.variant)
    if variant == Variant.OGA:
        values = [args.k] if args.k is not None else _grid(args.k_grid, settings.k_grid)
    else:
        values = [args.alpha] if args.alpha is not None else _grid(args.alpha_grid, settings.alpha_grid)
    summaries = exhaustive_verify(
        args.n,
        [(variant, p) for p in values],
        tol=args.tol,
        jobs=args.jobs,
        form=BoundForm(args.form),
    )
    sys.stdout.write(TypeAdapter(List[EnumerationSummary]).dump_json(summaries).decode("utf-8") + "\n")
    violations = [v for s in summaries for v in s.violations]
    for line in violations:
        logger.error(line)
    unattained = sum(1 for s in summaries if s.graph_count and not s.attained)
    logger.info(f"{len(summaries)} (n, m, case) summaries, {unattained} unattained, {len(violations)} violations")
    return EXIT_FAILURE if violations else EXIT_OK


def _write_violations(path: str, violations: Iterable[LemmaViolation]) -> int:
    """One CSV row per violation: parameter, clause, lhs, rhs and the witness graph6 if any."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["parameter", "clause", "lhs", "rhs", "graph6"])
        for v in violations:
            writer.writerow([_fmt(v.parameter), v.clause, _fmt(v.lhs), _fmt(v.rhs), v.graph6 or ""])
            count += 1
    return count


def cmd_lemmas(args: argparse.Namespace) -> int:
    """
    Sign-chart CSV on stdout; lemma verdicts and the Platt root as JSON on stderr or --report.

    --sweep adds the graph-level checks over every graph in the range, and
    --violations-csv collects the failures of both levels in one CSV file.
    """
    step = args.step or get_settings().grid_step
    alphas = parameter_grid(*get_variant_config(Variant.CHI).PARAMETER_RANGE, step, exclude=(0.0,))
    ks = parameter_grid(*get_variant_config(Variant.OGA).PARAMETER_RANGE, step, exclude=(0.0,))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["variant", "parameter", "pair", "value"])
    for variant, grid in ((Variant.CHI, alphas), (Variant.PLATT, alphas), (Variant.OGA, ks)):
        for name, p, pair, value in sign_chart_rows(variant, grid):
            writer.writerow([name, _fmt(p), pair, _fmt(value)])

    x0 = find_platt_root(step)
    report = grid_report(step)
    violations = [v for found in report.values() for v in found]
    payload = {
        "platt_root": x0,
        "step": step,
        "violations": {check: [v.model_dump() for v in found] for check, found in report.items()},
    }
    if args.sweep is not None:
        sweep = graph_lemma_sweep(args.sweep, jobs=args.jobs)
        violations.extend(sweep.counterexamples)
        payload["graph_sweep"] = sweep.model_dump()

    text = json.dumps(payload, indent=2)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        sys.stderr.write(text + "\n")
    if args.violations_csv:
        _write_violations(args.violations_csv, violations)
    logger.info(f"Platt root {x0:.6f}; {len(violations)} lemma violations")
    return EXIT_FAILURE if violations else EXIT_OK


def cmd_extremal(args: argparse.Namespace) -> int:
    """graph6 of the extremal graph and its verdict, or INFEASIBLE with the reason."""
    variant = Variant(args.variant)
    residue = (args.n + args.m) % 3
    if args.residue is not None and args.residue != residue:
        raise UsageError(f"--residue {args.residue} does not match (m + n) mod 3 = {residue}")
    parameter = args.k if variant == Variant.OGA else args.alpha
    if parameter is None:
        regime = args.regime or (Regime.OGA_K.value if variant == Variant.OGA else Regime.NEG.value)
        try:
            parameter = get_variant_config(variant).get_regime_representative(regime)
        except KeyError:
            raise UsageError(f"regime '{regime}' is not defined for {variant.value}")
    case = make_case(variant, parameter, residue, BoundForm(args.form))
    G, reason = build_extremal(args.n, args.m, case)
    if G is None:
        sys.stdout.write(f"INFEASIBLE: {reason}\n")
        return EXIT_OK
    sys.stdout.write(to_graph6(G) + "\n")
    sys.stdout.write(verdict(G, case).model_dump_json() + "\n")
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    """Stream graph6 lines of every molecular graph with the given n (and m)."""
    graphs = enumerate_graphs(args.n, args.m, connected=not args.disconnected, jobs=args.jobs)
    count = write_graph6(graphs, sys.stdout)
    logger.info(f"Wrote {count} graphs for n={args.n}, m={'all' if args.m is None else args.m}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("molex.main:app", host=args.host, port=args.port, log_level=get_settings().log_level.lower())
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="molex",
        description="Degree-based topological indices of molecular graphs and their extremal bounds."
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default: MOLEX_LOG_LEVEL or INFO)")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="Evaluate an index on every graph of a file")
    compute.add_argument("--index", required=True, choices=[k.value for k in IndexKind], help="Descriptor")
    compute.add_argument("--alpha", type=float, default=None, help="alpha for chi/platt")
    compute.add_argument("--k", type=float, default=None, help="k for oga")
    compute.add_argument("--in", dest="input", default="-", help="graph6 or adjacency file, '-' for stdin")
    compute.set_defaults(func=cmd_compute)

    verify = sub.add_parser("verify", help="Check the bounds on every connected graph")
    verify.add_argument("--n", type=_n_range, required=True, help="N or LO..HI (5 <= N <= 12)")
    verify.add_argument("--variant", required=True, choices=[v.value for v in Variant])
    verify.add_argument("--alpha", type=float, default=None, help="Single alpha instead of a grid")
    verify.add_argument("--alpha-grid", default=None, help="'default' or comma-separated alphas")
    verify.add_argument("--k", type=float, default=None, help="Single k instead of a grid")
    verify.add_argument("--k-grid", default=None, help="'default' or comma-separated k values")
    verify.add_argument("--form", default=BoundForm.REFINED.value, choices=[f.value for f in BoundForm])
    verify.add_argument("--tol", type=float, default=None, help="Equality tolerance (default: MOLEX_TOL)")
    verify.add_argument("--jobs", type=int, default=None, help="Worker processes (default: MOLEX_JOBS)")
    verify.set_defaults(func=cmd_verify)

    lemmas = sub.add_parser("lemmas", help="Coefficient sign charts and the grid lemma checks")
    lemmas.add_argument("--step", type=float, default=None, help="Grid step (default: MOLEX_GRID_STEP)")
    lemmas.add_argument("--report", default=None, help="Write the JSON verdicts here instead of stderr")
    lemmas.add_argument("--violations-csv", default=None, help="Write every violation as a CSV row here")
    lemmas.add_argument("--sweep", type=_n_range, default=None, help="Also run the graph-level checks for N or LO..HI")
    lemmas.add_argument("--jobs", type=int, default=None, help="Worker processes for --sweep (default: MOLEX_JOBS)")
    lemmas.set_defaults(func=cmd_lemmas)

    extremal = sub.add_parser("extremal", help="Construct a graph attaining the bound at (n, m)")
    extremal.add_argument("--n", type=int, required=True)
    extremal.add_argument("--m", type=int, required=True)
    extremal.add_argument("--variant", required=True, choices=[v.value for v in Variant])
    extremal.add_argument("--residue", type=int, default=None, choices=[0, 1, 2], help="Must equal (m + n) mod 3")
    extremal.add_argument("--regime", default=None, choices=[r.value for r in Regime if r != Regime.UNIT])
    extremal.add_argument("--alpha", type=float, default=None)
    extremal.add_argument("--k", type=float, default=None)
    extremal.add_argument("--form", default=BoundForm.REFINED.value, choices=[f.value for f in BoundForm])
    extremal.set_defaults(func=cmd_extremal)

    enum = sub.add_parser("enumerate", help="Stream graph6 lines of all molecular graphs")
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--m", type=int, default=None)
    enum.add_argument("--disconnected", action="store_true", help="Include disconnected graphs")
    enum.add_argument("--jobs", type=int, default=None)
    enum.set_defaults(func=cmd_enumerate)

    serve = sub.add_parser("serve", help="Run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = (args.log_level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ParseError, UsageError, DomainError, UnsupportedCaseError, InvalidParameterError,
            UndefinedTermError, EnumerationRangeError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except NoSignChangeError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAILURE

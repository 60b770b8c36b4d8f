"""Command-line front end: ``capax <command> [options]``.

Exit codes: 0 success, 1 verification failure or false verdict,
2 usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import graphio
from .graph import (
    Graph,
    GraphFormatError,
    GraphSizeError,
    adjacency_matrix,
    complete_graph,
    cycle_graph,
    empty_graph,
    hamming_graph,
    petersen_graph,
    strong_power,
)
from .hamming_scheme import DistanceProfile, profile_matrix, profile_spectrum
from .independence import SearchBudget, default_threads, is_independent_set, max_independent_set
from .pipeline import CounterexampleError, run_counterexample
from .sdp import SolverError, Status, ThetaProgram, Variant, solve_theta, verify_feasible
from .spectra import SymMatrix, format_fraction, group_multiplicities, sym_eigenvalues

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
TOL_RANGE = (1e-8, 1e-2)


class UsageError(Exception):
    pass


def builtin_graph(name: str) -> Graph:
    """Graph from a name such as ``hamming:5:1,2``, ``cycle:5`` or ``petersen``."""
    kind, _, rest = name.partition(":")
    try:
        if kind == "hamming":
            m_str, _, ds = rest.partition(":")
            dists = [int(d) for d in ds.split(",") if d.strip()]
            return hamming_graph(int(m_str), dists)
        if kind == "complete":
            return complete_graph(int(rest))
        if kind == "cycle":
            return cycle_graph(int(rest))
        if kind == "empty":
            return empty_graph(int(rest))
        if kind == "petersen" and not rest:
            return petersen_graph()
    except ValueError as exc:
        raise UsageError(f"bad builtin graph {name!r}: {exc}") from None
    raise UsageError(
        f"unknown builtin graph {name!r}; expected hamming:<m>:<d1,d2,...>, "
        "complete:<n>, cycle:<n>, empty:<n> or petersen"
    )


def _tolerance(text: str) -> float:
    try:
        tol = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    lo, hi = TOL_RANGE
    if not lo <= tol <= hi:
        raise argparse.ArgumentTypeError(f"tolerance must lie in [{lo:g}, {hi:g}]")
    return tol


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")

    source = argparse.ArgumentParser(add_help=False)
    grp = source.add_mutually_exclusive_group()
    grp.add_argument("--builtin", help="hamming:<m>:<d,...> | complete:<n> | cycle:<n> | empty:<n> | petersen")
    grp.add_argument("--graph", type=Path, help="graph file")
    source.add_argument("--graph-format", choices=graphio.FORMATS, default="edgelist")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-nodes", type=int, default=10_000_000)
    budget.add_argument("--max-seconds", type=float, default=60.0)

    tol = argparse.ArgumentParser(add_help=False)
    tol.add_argument("--tol", type=_tolerance, default=1e-7)

    parser = argparse.ArgumentParser(prog="capax", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common, source], help="emit a graph")
    sub.add_parser("alpha", parents=[common, source, budget], help="independence number")
    sub.add_parser("theta", parents=[common, source, tol], help="Lovasz theta by SDP")
    sub.add_parser("theta-prime", parents=[common, source, tol], help="Schrijver theta by SDP")
    sp = sub.add_parser("spectrum", parents=[common, source], help="adjacency spectrum")
    sp.add_argument("--exact", action="store_true",
                    help="exact Krawtchouk spectrum (hamming builtins only)")
    pw = sub.add_parser("strong-power", parents=[common, source], help="emit a strong power")
    pw.add_argument("-k", "--power", type=int, required=True)
    vs = sub.add_parser("verify-set", parents=[common, source], help="check an independent set")
    vs_src = vs.add_mutually_exclusive_group(required=True)
    vs_src.add_argument("--set", type=Path, help="JSON array of vertex indices")
    vs_src.add_argument("--vertices", help="comma-separated vertex indices")
    vc = sub.add_parser("verify-cert", parents=[common, source],
                        help="check a dual certificate for theta or theta'")
    vc.add_argument("--variant", choices=("lovasz", "schrijver"), required=True)
    vc_src = vc.add_mutually_exclusive_group(required=True)
    vc_src.add_argument("--matrix", type=Path,
                        help="JSON matrix: nested rows or {dim, lower}")
    vc_src.add_argument("--profile", help="distance profile f(0),...,f(m), e.g. 1,-1,-1,1,1,3")
    ce = sub.add_parser("counterexample", parents=[common, budget, tol],
                        help="reproduce the full counterexample")
    ce.add_argument("--exact-product", action="store_true",
                    help="also search alpha of the strong square (slow, budgeted)")
    return parser


def _load_graph(args) -> Graph:
    if args.graph is not None:
        return graphio.read_graph(args.graph, args.graph_format)
    if args.builtin is not None:
        return builtin_graph(args.builtin)
    raise UsageError("give one of --builtin or --graph")


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _graph_output(args, g: Graph) -> int:
    if args.format == "json":
        _emit(args, _dumps({"n": g.n, "edges": [list(e) for e in g.edges()]}))
    else:
        _emit(args, graphio.emit_graph(g, args.graph_format))
    return EXIT_OK


def cmd_build(args) -> int:
    return _graph_output(args, _load_graph(args))


def cmd_strong_power(args) -> int:
    return _graph_output(args, strong_power(_load_graph(args), args.power))


def cmd_alpha(args) -> int:
    g = _load_graph(args)
    budget = SearchBudget(args.max_nodes, args.max_seconds)
    size, cert, status = max_independent_set(g, budget, threads=default_threads())
    if args.format == "json":
        _emit(args, _dumps({"alpha": size, "status": status, "certificate": list(cert.vertices)}))
    else:
        _emit(args, str(size) if status == "exact" else f"{size} ({status})")
    return EXIT_OK


def _cmd_theta(args, variant: Variant) -> int:
    g = _load_graph(args)
    sol = solve_theta(ThetaProgram(g, variant), args.tol)
    if args.format == "json":
        _emit(args, _dumps(sol.to_json()))
    else:
        _emit(args, f"{sol.value:.4f}" if sol.converged else f"{sol.value:.4f} ({sol.status.value})")
    return EXIT_OK if sol.status is Status.CONVERGED else EXIT_NUMERIC


def cmd_theta(args) -> int:
    return _cmd_theta(args, Variant.LOVASZ)


def cmd_theta_prime(args) -> int:
    return _cmd_theta(args, Variant.SCHRIJVER)


def _hamming_profile_of(name: str | None) -> DistanceProfile:
    if not name or not name.startswith("hamming:"):
        raise UsageError("--exact needs a --builtin hamming:<m>:<d,...> graph")
    _, m_str, ds = name.split(":", 2)
    return DistanceProfile.indicator(int(m_str), [int(d) for d in ds.split(",") if d.strip()])


def cmd_spectrum(args) -> int:
    if args.exact:
        spec = profile_spectrum(_hamming_profile_of(args.builtin))
        rows = [(format_fraction(lam), mult) for lam, mult in spec.distinct()]
        if args.format == "json":
            _emit(args, _dumps({"exact": True, "spectrum": [list(r) for r in rows]}))
        else:
            _emit(args, "\n".join(f"{lam}\t{mult}" for lam, mult in rows))
        return EXIT_OK
    g = _load_graph(args)
    groups = group_multiplicities(sym_eigenvalues(adjacency_matrix(g)))
    # Rounded so that output is stable across platforms.
    rows = [(round(lam, 9) + 0.0, mult) for lam, mult in groups]
    if args.format == "json":
        _emit(args, _dumps({"exact": False, "spectrum": [list(r) for r in rows]}))
    else:
        _emit(args, "\n".join(f"{lam:.9f}\t{mult}" for lam, mult in rows))
    return EXIT_OK


def _read_vertex_set(args) -> list[int]:
    if args.vertices is not None:
        try:
            return [int(v) for v in args.vertices.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"bad vertex list {args.vertices!r}") from None
    data = json.loads(args.set.read_text(encoding="utf-8"))
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise UsageError("--set file must hold a JSON array of integers")
    return data


def cmd_verify_set(args) -> int:
    g = _load_graph(args)
    verts = _read_vertex_set(args)
    try:
        ok = is_independent_set(g, verts)
        reason = ""
    except ValueError as exc:
        ok, reason = False, str(exc)
    if args.format == "json":
        _emit(args, _dumps({"independent": ok, "size": len(verts), "reason": reason}))
    else:
        _emit(args, f"{'independent' if ok else 'NOT independent'}, size {len(verts)}"
              + (f": {reason}" if reason else ""))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_cert(args) -> int:
    g = _load_graph(args)
    variant = Variant.LOVASZ if args.variant == "lovasz" else Variant.SCHRIJVER
    program = ThetaProgram(g, variant)
    if args.profile is not None:
        try:
            profile = DistanceProfile.of([Fraction(x) for x in args.profile.split(",")])
        except ValueError:
            raise UsageError(f"bad profile {args.profile!r}") from None
        if 1 << profile.m != g.n:
            raise UsageError(f"profile for m={profile.m} does not fit a graph on {g.n} vertices")
        mat = profile_matrix(profile)
        pairs = program.constrained_pairs()
        if variant is Variant.LOVASZ:
            violation = max((abs(mat[i, j] - 1) for i, j in pairs), default=Fraction(0))
        else:
            violation = max((max(Fraction(0), 1 - mat[i, j]) for i, j in pairs), default=Fraction(0))
        lam = profile_spectrum(profile).max
        result = {"exact": True, "lambda_max": format_fraction(lam),
                  "max_violation": format_fraction(violation)}
        ok = violation == 0
        text = f"lambda_max = {lam}, max violation = {violation}"
    else:
        raw = json.loads(args.matrix.read_text(encoding="utf-8"))
        mat = SymMatrix.from_json(raw) if isinstance(raw, dict) else SymMatrix(raw)
        try:
            lam, violation = verify_feasible(program, mat)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        result = {"exact": False, "lambda_max": lam, "max_violation": violation}
        ok = violation <= 1e-8
        text = f"lambda_max = {lam:.10f}, max violation = {violation:.3g}"
    result["feasible"] = ok
    if args.format == "json":
        _emit(args, _dumps(result))
    else:
        _emit(args, text + ("" if ok else "  (infeasible)"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_counterexample(args) -> int:
    budget = SearchBudget(args.max_nodes, args.max_seconds)
    try:
        report = run_counterexample(
            budget=SearchBudget(args.max_nodes, min(args.max_seconds, 10.0)),
            tol=args.tol,
            exact_product=args.exact_product,
            product_budget=budget,
            threads=default_threads(),
        )
    except CounterexampleError as exc:
        sys.stderr.write(f"counterexample check failed: {exc}\n")
        return EXIT_FAIL
    _emit(args, report.dumps() if args.format == "json" else report.summary())
    return EXIT_OK if report.verdict else EXIT_FAIL


COMMANDS = {
    "build": cmd_build,
    "alpha": cmd_alpha,
    "theta": cmd_theta,
    "theta-prime": cmd_theta_prime,
    "spectrum": cmd_spectrum,
    "strong-power": cmd_strong_power,
    "verify-set": cmd_verify_set,
    "verify-cert": cmd_verify_cert,
    "counterexample": cmd_counterexample,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"capax: error: {exc}\n")
        return EXIT_USAGE
    except (GraphFormatError, GraphSizeError, OSError, ValueError) as exc:
        sys.stderr.write(f"capax: error: {exc}\n")
        return EXIT_USAGE
    except SolverError as exc:
        sys.stderr.write(f"capax: numerical error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

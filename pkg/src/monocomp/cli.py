"""Command-line entry point: ``monocomp <command> ...``.

Exit status: 0 when every requested check passes, 1 when a check fails (the
first failing context goes to stderr), 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .adversary import INITS, SearchParams, anneal, save_counterexample
from .constructions import gyarfas_coloring, gyarfas_supported, induced_coloring, predicted_fractions
from .errors import MonocompError
from .finite_geometry import build_affine_plane, build_field, factor_prime_power
from .graph_core import EdgeColoring, Graph
from .graph_io import format_graph, read_graph, write_graph
from .random_models import sample_gnp
from .rng import SplitMix64
from .suites import SUITES, run_suite
from .util import as_fraction, frac_str
from .verifiers import verdict_bounds

SCHEMA_VERSION = 1

CSV_COLUMNS = (
    "n", "p", "r", "seed", "source", "edges", "largest_component_edges",
    "z_num", "z_den", "z_float", "pass_proven", "pass_conjectured",
)

SWEEP_HELP = """\
CSV columns, one row per (p, seed, source), rows sorted by (p, seed, source):
  n, p, r, seed               the sampled host G(n, p) and its seed
  source                      annealed | gyarfas-induced | random | skipped-no-edges
  edges                       e(G)
  largest_component_edges     edges in the largest monochromatic component
  z_num, z_den                z = largest_component_edges / e(G) as an exact fraction
  z_float                     z rounded to 6 decimals
  pass_proven                 z >= 1/(r^2 - r + 5/4)
  pass_conjectured            z >= 1/(r(r - 1))  (reported only)
A p = 0 entry gives one skipped-no-edges row per seed with the numeric columns empty.
"""

# destinations that name output files; they are left out of the config echo so
# that reruns writing elsewhere still produce identical reports
OUTPUT_KEYS = {"out", "json", "csv", "counterexample", "counterexample_dir"}


class UsageError(Exception):
    pass


# -- config file -----------------------------------------------------------------


def load_config(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _fraction(s) -> Fraction:
    try:
        return as_fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {s!r}") from None


def _fraction_list(s) -> list[Fraction]:
    return [_fraction(x) for x in str(s).split(",") if x.strip()]


def _seed_list(s) -> list[int]:
    """``1,2,5`` or ``1-5`` (inclusive) or a mix."""
    out = []
    for part in str(s).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad seed list {s!r}") from None
    return out


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monocomp", description="Monochromatic component experiments on edge-colored graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--config", help="flat key=value file; command-line flags override it")
        return p

    p = add("plane", help="print the affine plane of order q")
    p.add_argument("q", type=int)

    p = add("color", help="write the cluster-and-direction r-coloring of K_n")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--out", help="colored-graph file (stdout if omitted)")

    p = add("sample", help="sample G(n, p)")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_fraction)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="uncolored graph file (stdout if omitted)")

    p = add("analyze", help="component report and bound verdicts for a colored graph")
    p.add_argument("--in", dest="input")
    p.add_argument("--beta", type=_fraction, help="enable the minimum-degree thresholds")
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 10), help="slack in the (1-eps) n/(r-1) vertex threshold")
    p.add_argument("--json", help="report file (stdout if omitted)")

    p = add("search", help="simulated annealing for colorings with small components")
    p.add_argument("--in", dest="input", help="host graph file; otherwise G(n, p) is sampled")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_fraction, default=Fraction(1))
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--init", choices=INITS, default="random")
    p.add_argument("--t0", type=float, help="initial temperature (default 0.05 e(G))")
    p.add_argument("--cooling", type=float, default=0.999)
    p.add_argument("--json", help="report file (stdout if omitted)")
    p.add_argument("--counterexample", help="where to save a coloring that breaks a required bound")

    p = add("verify", help="run a seeded fuzz suite")
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", help="report file (stdout if omitted)")
    p.add_argument("--counterexample-dir", help="directory for reproduction files of failing colorings")

    p = add(
        "sweep",
        help="grid over p and seeds, comparing coloring sources",
        epilog=SWEEP_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_fraction_list, help="comma-separated edge probabilities")
    p.add_argument("--r", type=int)
    p.add_argument("--seeds", type=_seed_list, default=[1], help="e.g. 1-5 or 1,2,7")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--init", choices=INITS + ("auto",), default="auto", help="auto = gyarfas when supported")
    p.add_argument("--csv", help="CSV output (stdout if omitted)")
    p.add_argument("--json", help="optional JSON report with the config echo")
    return parser


def parse_args(argv: list[str] | None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            values = load_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except UsageError as exc:
            parser.error(str(exc))
        sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices[args.command]
        dests = {a.dest for a in sub._actions} - {"help", "config"}
        unknown = sorted(set(values) - dests)
        if unknown:
            parser.error(f"unknown config keys for {args.command}: {', '.join(unknown)}")
        # string defaults go through each option's type converter
        sub.set_defaults(**values)
        args = parser.parse_args(argv)
    return args


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def config_echo(args: argparse.Namespace) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in OUTPUT_KEYS or key == "config":
            continue
        if isinstance(val, Fraction):
            val = str(val)
        elif isinstance(val, list):
            val = [str(x) if isinstance(x, Fraction) else x for x in val]
        out[key] = val
    return out


def _report(args, outcomes: list, passed: bool, **extra) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config": config_echo(args),
        **extra,
        "outcomes": outcomes,
        "pass": passed,
    }


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(report: dict, path: str | None) -> None:
    _emit(json.dumps(report, indent=2, sort_keys=False) + "\n", path)


def _fail(context) -> int:
    print("check failed: " + json.dumps(context, sort_keys=True), file=sys.stderr)
    return 1


# -- commands --------------------------------------------------------------------


def cmd_plane(args) -> int:
    plane = build_affine_plane(build_field(factor_prime_power(args.q)))
    for c, cls in enumerate(plane.classes):
        for line in cls:
            print(f"class {c}: " + " ".join(str(x) for x in sorted(plane.lines[line])))
    return 0


def cmd_color(args) -> int:
    _require(args, "n", "r")
    g = gyarfas_coloring(args.n, args.r)
    G = g.graph
    if args.out:
        write_graph(args.out, G, g.coloring)
    else:
        sys.stdout.write(format_graph(G, g.coloring))
    return 0


def _check_p(p: Fraction) -> None:
    if not 0 <= p <= 1:
        raise UsageError(f"p must lie in [0, 1], got {p}")


def cmd_sample(args) -> int:
    _require(args, "n", "p")
    _check_p(args.p)
    G = sample_gnp(args.n, float(args.p), args.seed)
    if args.out:
        write_graph(args.out, G)
    else:
        sys.stdout.write(format_graph(G))
    return 0


def _read_input(path: str) -> tuple[Graph, EdgeColoring | None]:
    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_analyze(args) -> int:
    _require(args, "input")
    G, C = _read_input(args.input)
    if G.m == 0:
        raise UsageError("graph has no edges")
    if C is None:
        raise UsageError("analyze needs a colored graph (header r > 0)")
    v = verdict_bounds(G, C, beta=args.beta, eps=args.eps)
    report = _report(args, [v.to_json()], v.ok, graph={"n": G.n, "m": G.m, "r": C.r},
                     components=v.report.num_components, context=_jsonable(v.context))
    _emit_json(report, args.json)
    if not v.ok:
        return _fail({"input": args.input, "failed_thresholds": v.failures(), "z": str(v.z)})
    return 0


def _jsonable(d: dict) -> dict:
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in d.items()}


def _host(args) -> Graph:
    if args.input:
        G, _ = _read_input(args.input)
        return G
    _require(args, "n")
    _check_p(args.p)
    return sample_gnp(args.n, float(args.p), args.seed)


def cmd_search(args) -> int:
    _require(args, "r")
    G = _host(args)
    if G.m == 0:
        raise UsageError("graph has no edges")
    params = SearchParams(args.iters, args.restarts, args.t0, args.cooling, args.seed, args.init)
    res = anneal(G, args.r, params)
    v = verdict_bounds(G, res.coloring)
    report = _report(
        args,
        [v.to_json()],
        v.ok,
        graph={"n": G.n, "m": G.m},
        best={"objective": res.objective[0], "vector": list(res.objective[1]), "z": frac_str(Fraction(res.objective[0], G.m))},
        evaluations=res.evaluations,
        best_restart=res.best_restart,
        trace=[{"restart": t.restart, "iteration": t.iteration, "objective": t.objective} for t in res.trace],
    )
    _emit_json(report, args.json)
    if not v.ok:
        target = args.counterexample or (str(Path(args.json).with_suffix(".counterexample.txt")) if args.json else "counterexample.txt")
        path = save_counterexample(target, G, res.coloring)
        return _fail({"failed_thresholds": v.failures(), "z": str(v.z), "reproduction": str(path)})
    return 0


def cmd_verify(args) -> int:
    _require(args, "suite")
    rep = run_suite(args.suite, args.seed, save_dir=args.counterexample_dir)
    body = rep.to_json()
    report = _report(args, body["outcomes"], rep.passed, suite=rep.suite, seed=rep.seed)
    _emit_json(report, args.json)
    if not rep.passed:
        return _fail(rep.first_failure())
    return 0


def sweep_rows(n: int, ps: list[Fraction], r: int, seeds: list[int], iters: int, restarts: int, init: str) -> list[dict]:
    pred = predicted_fractions(r)
    supported = gyarfas_supported(n, r)
    base = gyarfas_coloring(n, r) if supported else None
    if init == "auto":
        init = "gyarfas" if supported else "random"
    rows = []
    for p in ps:
        for seed in seeds:
            cell = {"n": n, "p": p, "r": r, "seed": seed}
            G = sample_gnp(n, float(p), seed)
            if G.m == 0:
                print(f"warning: p={float(p)} seed={seed} gives no edges; cell skipped", file=sys.stderr)
                rows.append({**cell, "source": "skipped-no-edges", "edges": 0, "largest": None})
                continue
            colorings = {"random": EdgeColoring(r, SplitMix64(seed, 1).randbelow_array(G.m, r) + 1)}
            if base is not None:
                colorings["gyarfas-induced"] = induced_coloring(base, G)
            res = anneal(G, r, SearchParams(iters, restarts, seed=seed, init=init))
            colorings["annealed"] = res.coloring
            for source, C in colorings.items():
                largest = verdict_bounds(G, C).report.largest.edges
                rows.append({**cell, "source": source, "edges": G.m, "largest": largest})
    rows.sort(key=lambda row: (row["p"], row["seed"], row["source"]))
    for row in rows:
        if row["largest"] is not None:
            z = Fraction(row["largest"], row["edges"])
            row["z"] = z
            row["pass_proven"] = z >= pred.proven
            row["pass_conjectured"] = z >= pred.conjectured
    return rows


def format_sweep_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        head = [row["n"], f"{float(row['p'])}", row["r"], row["seed"], row["source"], row["edges"]]
        if row["largest"] is None:
            w.writerow(head + [""] * 6)
            continue
        z = row["z"]
        w.writerow(head + [
            row["largest"], z.numerator, z.denominator, f"{float(z):.6f}",
            str(row["pass_proven"]).lower(), str(row["pass_conjectured"]).lower(),
        ])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    _require(args, "n", "p", "r")
    if not args.p:
        raise UsageError("sweep: the p grid is empty")
    for p in args.p:
        _check_p(p)
    if not args.seeds:
        raise UsageError("sweep: the seed list is empty")
    rows = sweep_rows(args.n, args.p, args.r, args.seeds, args.iters, args.restarts, args.init)
    _emit(format_sweep_csv(rows), args.csv)
    failing = [row for row in rows if row["largest"] is not None and not row["pass_proven"]]
    if args.json:
        outcomes = [
            {k: (str(v) if isinstance(v, Fraction) else v) for k, v in row.items()}
            for row in rows
        ]
        _emit_json(_report(args, outcomes, not failing), args.json)
    if failing:
        row = failing[0]
        return _fail({"p": str(row["p"]), "seed": row["seed"], "source": row["source"], "z": str(row["z"])})
    return 0


COMMANDS = {
    "plane": cmd_plane,
    "color": cmd_color,
    "sample": cmd_sample,
    "analyze": cmd_analyze,
    "search": cmd_search,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, MonocompError, ValueError) as exc:
        print(f"monocomp {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

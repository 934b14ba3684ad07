"""Command-line front end.

Every report embeds the provenance spec and tool version and is a pure
function of its arguments, so repeated runs are byte-identical.

Exit codes: 0 success, 2 expectation failed, 3 malformed input or
parameters, 4 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__, claims, graph6
from .analyzers import (
    FAMILIES,
    clique_number,
    independence_number,
    is_l_universal,
    limit_table,
    obstruction_certificate,
    family_spec,
)
from .census import (
    census4,
    densities,
    profile3,
    verify_edge_pair_identity,
    verify_goodman,
    verify_vertex_edge_identities,
)
from .constructions import DEFAULT_SEED, ConstructionSpec
from .errors import CertificateFailed, GraphError, MalformedGraph6, ResourceLimit
from .graph import Graph, set_max_order

EXIT_OK = 0
EXIT_EXPECTATION = 2
EXIT_MALFORMED = 3
EXIT_RESOURCE = 4

CENSUS_COLUMNS = ("construction", "k", "n", "class", "count", "density")
LIMIT_COLUMNS = ("family", "k", "n", "p0", "p1", "p2", "p3", "goodman_dev",
                 "dev_p1_3p3", "dev_p2_3p0", "goodman", "rl3", "mixed")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors count as malformed input
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


# --- inputs ----------------------------------------------------------------

def _add_construction_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("construction (pick one)")
    g.add_argument("--blowup", type=int, metavar="L", help="iterated C5 blow-up of level L")
    g.add_argument("--circulant", type=int, metavar="K", help="circulant G_K^r (needs --r)")
    g.add_argument("--r", default="6+2*sqrt(3)", help="circulant parameter: decimal, fraction or 'opt'")
    g.add_argument("--cgw", type=int, metavar="N", help="K_{N,N} (+) complement on 4N vertices")
    g.add_argument("--tower", type=int, metavar="L", help="random-join tower of level L (needs --n)")
    g.add_argument("--n", type=int, help="block parameter of --tower")
    g.add_argument("--gnp", type=int, metavar="N", help="G(N, 1/2)")
    g.add_argument("--complete", type=int, metavar="N", help="K_N")
    g.add_argument("--spec", metavar="FILE", help="construction spec as JSON")
    g.add_argument("--doubled", action="store_true", help="apply the doubling f(G) to the construction")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"random seed (default {DEFAULT_SEED})")


def _spec_from_args(args: argparse.Namespace) -> ConstructionSpec | None:
    chosen = []
    seed = args.seed
    if args.blowup is not None:
        chosen.append(ConstructionSpec("blowup", {"level": args.blowup}, seed))
    if args.circulant is not None:
        chosen.append(ConstructionSpec("circulant", {"k": args.circulant, "r": args.r}, seed))
    if args.cgw is not None:
        chosen.append(ConstructionSpec("cgw", {"n": args.cgw}, seed))
    if args.tower is not None:
        if args.n is None:
            raise UsageError("--tower needs --n")
        chosen.append(ConstructionSpec("tower", {"level": args.tower, "n": args.n}, seed))
    if args.gnp is not None:
        chosen.append(ConstructionSpec("gnp", {"n": args.gnp, "p": 0.5}, seed))
    if args.complete is not None:
        chosen.append(ConstructionSpec("complete", {"n": args.complete}, seed))
    if args.spec is not None:
        chosen.append(ConstructionSpec.from_json(Path(args.spec).read_text()))
    if len(chosen) > 1:
        raise UsageError("give exactly one construction")
    if not chosen:
        if args.doubled:
            raise UsageError("--doubled needs a construction")
        return None
    spec = chosen[0]
    if args.doubled:
        spec = ConstructionSpec("doubled", {"inner": spec}, seed)
    return spec


def _read_graph6(path: str) -> list[Graph]:
    if path == "-":
        return list(graph6.iter_lines(sys.stdin.buffer))
    return graph6.read_file(path)


def _sidecar(path: str) -> Path:
    return Path(path + ".json")


def _provenance(spec: ConstructionSpec | None, source: str | None, index: int = 0) -> dict[str, Any]:
    out: dict[str, Any] = {"tool": "rlgraphs", "version": __version__}
    if spec is not None:
        out["spec"] = spec.to_dict()
    if source is not None:
        out["input"] = source
        out["index"] = index
    return out


def _label_and_k(spec: ConstructionSpec | None, source: str | None, index: int) -> tuple[str, Any]:
    if spec is None:
        name = "stdin" if source in (None, "-") else Path(source).name
        return f"{name}[{index}]", ""
    inner = spec.params.get("inner") if spec.kind == "doubled" else spec
    p = inner.params
    k = p.get("k", p.get("level", p.get("n", "")))
    return spec.label(), k


def _inputs(args: argparse.Namespace) -> list[tuple[Graph, ConstructionSpec | None, str | None, int]]:
    """``(graph, spec, source, index)`` for the single chosen input."""
    spec = _spec_from_args(args)
    source = getattr(args, "input", None)
    if spec is not None and source is not None:
        raise UsageError("give either a graph6 input or a construction, not both")
    if spec is not None:
        return [(spec.build(), spec, None, 0)]
    if source is None:
        raise UsageError("no input: give a graph6 path ('-' for stdin) or a construction")
    graphs = _read_graph6(source)
    if not graphs:
        raise UsageError(f"no graphs in {source}")
    sidecar_spec = None
    if source != "-" and _sidecar(source).exists():
        data = json.loads(_sidecar(source).read_text())
        if data.get("spec"):
            sidecar_spec = ConstructionSpec.from_dict(data["spec"])
    return [(G, sidecar_spec, source, i) for i, G in enumerate(graphs)]


# --- output ------------------------------------------------------------------

def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text)


def _csv_text(header: Sequence[str], rows: list[Sequence[Any]], comments: list[str]) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- commands ----------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    if spec is None:
        raise UsageError("gen needs a construction")
    G = spec.build()
    line = graph6.encode(G) + b"\n"
    meta = {"tool": "rlgraphs", "version": __version__, "spec": spec.to_dict(), "n": G.n, "e": G.e}
    if args.out == "-":
        sys.stdout.buffer.write(line)
        sys.stdout.flush()
    else:
        Path(args.out).write_bytes(line)
        _sidecar(args.out).write_text(_dumps(meta))
    if args.provenance:
        Path(args.provenance).write_text(_dumps(meta))
    return EXIT_OK


def _census_record(G: Graph, order: int) -> dict[str, Any]:
    if order == 3:
        counts = profile3(G)
        labels = ("D0", "D1", "D2", "D3")
        count_map = dict(zip(labels, counts.counts))
        identities = {"goodman": verify_goodman(G, counts),
                      "vertex_edge": verify_vertex_edge_identities(G, counts)}
    else:
        counts = census4(G)
        count_map = counts.as_dict()
        identities = {"edge_pair": verify_edge_pair_identity(G, counts)}
    dens = densities(counts, G.n)
    return {"counts": count_map, "densities": {k: float(v) for k, v in zip(count_map, dens.values)},
            "densities_exact": {k: str(v) for k, v in zip(count_map, dens.values)},
            "identities": identities}


def cmd_census(args: argparse.Namespace) -> int:
    items = _inputs(args)
    records = []
    for G, spec, source, idx in items:
        label, k = _label_and_k(spec, source, idx)
        rec = _census_record(G, args.order)
        records.append({"construction": label, "k": k, "n": G.n, "e": G.e, "order": args.order,
                        "provenance": _provenance(spec, source, idx), **rec})
    ok = all(all(r["identities"].values()) for r in records)
    if args.format == "json":
        text = _dumps({"schema": 1, "graphs": records})
    else:
        rows, comments = [], []
        for r in records:
            comments.append("provenance " + json.dumps(r["provenance"], sort_keys=True))
            comments.append(f"identities {r['construction']} " + json.dumps(r["identities"], sort_keys=True))
            for cls, count in r["counts"].items():
                rows.append((r["construction"], r["k"], r["n"], cls, count, repr(r["densities"][cls])))
        text = _csv_text(CENSUS_COLUMNS, rows, comments)
    _emit(text, args.out)
    return EXIT_OK if ok or not args.expect else EXIT_EXPECTATION


def cmd_universal(args: argparse.Namespace) -> int:
    out, verdicts = [], []
    for G, spec, source, idx in _inputs(args):
        rep = is_l_universal(G, args.l, seed=args.seed)
        verdicts.append(rep.verdict)
        out.append({"n": G.n, "provenance": _provenance(spec, source, idx), **rep.to_dict()})
    _emit(_dumps({"schema": 1, "graphs": out}), args.out)
    return EXIT_EXPECTATION if args.expect and not all(verdicts) else EXIT_OK


def cmd_clique(args: argparse.Namespace) -> int:
    out, worst = [], 0
    fn = independence_number if args.independence else clique_number
    for G, spec, source, idx in _inputs(args):
        res = fn(G, budget=args.budget)
        if not res.exact:
            raise ResourceLimit(f"clique search exceeded its {args.budget}s budget (best so far {res.size})")
        worst = max(worst, res.size)
        out.append({"n": G.n, "quantity": "alpha" if args.independence else "omega",
                    "provenance": _provenance(spec, source, idx), **res.to_dict()})
    _emit(_dumps({"schema": 1, "graphs": out}), args.out)
    if args.expect_at_most is not None and worst > args.expect_at_most:
        return EXIT_EXPECTATION
    return EXIT_OK


def cmd_obstruct(args: argparse.Namespace) -> int:
    try:
        cert = obstruction_certificate(args.l, args.n, args.seed, max_retries=args.max_retries, budget=args.budget)
    except CertificateFailed as exc:
        print(f"rlgraphs: {exc}", file=sys.stderr)
        return EXIT_EXPECTATION
    body = cert.to_dict()
    body["provenance"] = {"tool": "rlgraphs", "version": __version__,
                          "spec": ConstructionSpec("tower", {"level": args.l, "n": args.n}, args.seed).to_dict()}
    _emit(_dumps(body), args.out)
    return EXIT_EXPECTATION if args.expect and not cert.verdict else EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def cmd_limits(args: argparse.Namespace) -> int:
    ks = [k for chunk in args.k for k in chunk]
    params: dict[str, Any] = {"seed": args.seed, "level": args.level}
    if args.family in ("circulant", "doubled-circulant"):
        params["r"] = args.r
    rows = limit_table(args.family, ks, eps=args.eps, **params)
    prov = {"tool": "rlgraphs", "version": __version__, "family": args.family, "eps": args.eps,
            "specs": [family_spec(args.family, k, **params).to_dict() for k in ks]}
    if args.format == "json":
        text = _dumps({"schema": 1, "provenance": prov, "rows": rows})
    else:
        text = _csv_text(LIMIT_COLUMNS, [[args.family] + [r[c] for c in LIMIT_COLUMNS[1:]] for r in rows],
                         ["provenance " + json.dumps(prov, sort_keys=True)])
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    only = set(args.only) if args.only else None

    def show(c: claims.Check) -> None:
        if args.format == "table":
            status = "PASS" if c.passed else "FAIL"
            print(f"[{status}] {c.id:>2}  {c.title}  ({c.seconds:.1f}s)  {json.dumps(c.measured, sort_keys=True)}",
                  flush=True)

    results = claims.run_all(only, progress=show)
    if args.format == "json":
        _emit(_dumps({"version": __version__, "checks": [
            {"id": c.id, "title": c.title, "passed": c.passed, "measured": c.measured} for c in results]}), "-")
    else:
        passed = sum(c.passed for c in results)
        print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if all(c.passed for c in results) else EXIT_EXPECTATION


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rlgraphs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rlgraphs {__version__}")
    parser.add_argument("--max-order", type=int, help="override the maximum graph order")
    parser.add_argument("--threads", type=int, help="worker threads for numba kernels (results do not depend on it)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="build a construction and write graph6")
    _add_construction_args(p)
    p.add_argument("--out", default="-", help="output path ('-' for stdout); a .json sidecar is written next to it")
    p.add_argument("--provenance", metavar="FILE", help="also write the provenance JSON here")
    p.set_defaults(func=cmd_gen)

    def analysis(name: str, help_: str):
        q = sub.add_parser(name, help=help_)
        q.add_argument("input", nargs="?", help="graph6 file, '-' for stdin")
        _add_construction_args(q)
        q.add_argument("--out", default="-", help="report path ('-' for stdout)")
        return q

    p = analysis("census", "induced 3- or 4-vertex census with identity checks")
    p.add_argument("--order", type=int, choices=(3, 4), default=3)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--expect", action="store_true", help="exit 2 if an identity check fails")
    p.set_defaults(func=cmd_census)

    p = analysis("universal", "test l-universality")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--expect", action="store_true", help="exit 2 unless every input is l-universal")
    p.set_defaults(func=cmd_universal)

    p = analysis("clique", "exact clique (or independence) number")
    p.add_argument("--budget", type=float, default=600.0, help="time budget in seconds")
    p.add_argument("--independence", action="store_true", help="compute alpha instead of omega")
    p.add_argument("--expect-at-most", type=int, metavar="W", help="exit 2 if the result exceeds W")
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("obstruct", help="non-universality certificate for the random-join tower")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=float, default=600.0)
    p.add_argument("--max-retries", type=int, default=8)
    p.add_argument("--expect", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("limits", help="3-vertex densities along a family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--k", type=_int_list, action="append", required=True, help="member indices, e.g. 100,200,400")
    p.add_argument("--r", default="6+2*sqrt(3)")
    p.add_argument("--level", type=int, default=2, help="tower level for --family tower")
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("verify-paper", help="run the acceptance checks and print a pass/fail table")
    p.add_argument("--only", type=int, nargs="+", metavar="ID")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_verify)
    return parser


def _set_threads(n: int | None) -> None:
    if n is None:
        return
    import numba

    if not os.environ.get("NUMBA_THREADING_LAYER"):
        numba.config.THREADING_LAYER = "workqueue"
    numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.max_order is not None:
            set_max_order(args.max_order)
        _set_threads(args.threads)
        return args.func(args)
    except MalformedGraph6 as exc:
        print(f"rlgraphs: malformed graph6: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ResourceLimit as exc:
        print(f"rlgraphs: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, GraphError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"rlgraphs: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as exc:
        print(f"rlgraphs: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    finally:
        if args.max_order is not None:
            set_max_order(None)


if __name__ == "__main__":
    sys.exit(main())

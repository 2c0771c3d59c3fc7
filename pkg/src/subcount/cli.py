"""Command-line front end.

Every command prints one JSON report (sorted keys) on stdout and a short
human summary on stderr. Exit status: 0 on success, 2 on bad input, 3
when a guard refuses an enumeration.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .config import DEFAULT_BUDGET, default_threads
from .embeddings import canonical_key
from .engines import (approximate_count_sampling, build_k_perfect_family, count_colourful_by_inclusion_exclusion,
                      count_colourful_copies_dp, count_exact_bruteforce, decide_bruteforce, decide_clique_or_is,
                      decide_colour_coding, decide_via_witness_search, exact_oracle, ramsey_promise,
                      sampling_oracle)
from .errors import DecodeError, FormatError, GuardError
from .gadgets import (add_universal_vertex, build_clique_gadget, check_subgraph_closure, colourful_copies,
                      decode_colourful_copy, expected_gadget_order, export_gadget, verify_gadget_identity)
from .generators import FAMILIES, generate_pattern
from .graph import Colouring, Graph
from .io import (format_colouring, format_graph, parse_colouring, parse_graph, parse_minor_map,
                 parse_tree_decomposition, read_text)
from .properties import (builtin_properties, check_symmetric, check_uniformly_monotone, flag_report, get_property,
                         list_properties, minimal_set)


class InputError(ValueError):
    """Bad command-line input."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


class _Run:
    """Collects input digests while a command loads its files."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.inputs: dict[str, str] = {}
        self.seed: int | None = None

    def text(self, path: str) -> str:
        text = read_text(path)
        self.inputs[path] = hashlib.sha256(text.encode()).hexdigest()
        return text

    def graph(self, path: str | None, what: str = "--graph") -> Graph:
        if not path:
            raise InputError(f"{what} is required")
        return parse_graph(self.text(path))

    def colouring(self, path: str | None, n: int) -> Colouring | None:
        return parse_colouring(self.text(path), n) if path else None

    def prop(self, spec: str | None):
        if not spec:
            raise InputError("--property is required")
        for part in spec.split(":")[1:]:
            if Path(part).is_file():
                self.text(part)
        return get_property(spec)


def _need_k(args) -> int:
    if args.k is None:
        raise InputError("--k is required")
    if args.k < 0:
        raise InputError("--k must be non-negative")
    return args.k


def _fraction(text: str | None, name: str) -> Fraction:
    if text is None:
        raise InputError(f"{name} is required")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{name}: not a number: {text!r}") from None


def _check_colours(f: Colouring | None, k: int) -> None:
    if f is not None and f.k != k:
        raise InputError(f"the colouring uses {f.k} colours but --k is {k}")


def _promise(run: _Run, k: int) -> tuple[Fraction, Fraction]:
    a = run.args
    if a.preset == "ramsey":
        g, q = ramsey_promise(k)
        return Fraction(g), Fraction(q)
    return _fraction(a.gk, "--gk"), _fraction(a.qn, "--qn")


# count ---------------------------------------------------------------------------

def cmd_count(run: _Run) -> dict:
    a = run.args
    k = _need_k(a)
    G = run.graph(a.graph)
    f = run.colouring(a.colouring, G.n)
    _check_colours(f, k)
    if a.mode == "dp":
        if f is None:
            raise InputError("--mode dp needs --colouring")
        H = _pattern_for_dp(run, k)
        td = parse_tree_decomposition(run.text(a.td), H.n) if a.td else None
        return {"count": count_colourful_copies_dp(H, td, G, f), "pattern": {"n": H.n, "edges": H.m}}
    phi = run.prop(a.property)
    if a.mode == "exact":
        return {"count": count_exact_bruteforce(phi, G, k, f, threads=a.threads, budget=a.budget)}
    if a.mode == "ie":
        if f is None:
            raise InputError("--mode ie needs --colouring")
        terms: list = []
        total = count_colourful_by_inclusion_exclusion(
            phi, G, k, f, counter=lambda p, g, kk: count_exact_bruteforce(p, g, kk, threads=a.threads,
                                                                          budget=a.budget),
            terms=terms)
        return {"count": total, "terms": [{"colours": list(S), "value": v} for S, v in terms]}
    # sample
    g_k, q_n = _promise(run, k)
    run.seed = a.seed
    est = approximate_count_sampling(phi, G, k, _fraction(a.epsilon, "--epsilon"), _fraction(a.delta, "--delta"),
                                     g_k, q_n, a.seed, f=f, threads=a.threads)
    return est.as_dict()


def _pattern_for_dp(run: _Run, k: int) -> Graph:
    spec = run.args.pattern
    if not spec:
        raise InputError("--mode dp needs --pattern (a family name or a graph file)")
    if spec in FAMILIES and spec not in ("grid", "subdivided_grid", "clique_grid"):
        return generate_pattern(spec, k=k)[0]
    H = run.graph(spec, "--pattern")
    if H.n != k:
        raise InputError(f"the pattern has {H.n} vertices but --k is {k}")
    return H


# decide --------------------------------------------------------------------------

def cmd_decide(run: _Run) -> dict:
    a = run.args
    k = _need_k(a)
    G = run.graph(a.graph)
    f = run.colouring(a.colouring, G.n)
    _check_colours(f, k)
    if a.mode == "ramsey":
        res = decide_clique_or_is(G, k, budget=a.budget)
        return _decision(res.answer, res.witness, res.method, res.details)
    phi = run.prop(a.property)
    if a.mode == "brute":
        res = decide_bruteforce(phi, G, k, f, budget=a.budget)
        return _decision(res.answer, res.witness, res.method, res.details)
    if a.mode == "colour-coding":
        if f is not None:
            raise InputError("colour-coding draws its own colourings; drop --colouring")
        if a.colourings == "random":
            run.seed = a.seed
        res = decide_colour_coding(phi, G, k, mode=a.colourings, decider=a.decider,
                                   delta=float(_fraction(a.delta or "0.01", "--delta")), seed=a.seed)
        return _decision(res.answer, res.witness, res.method, res.details)
    # witness
    if a.oracle == "exact":
        oracle = exact_oracle(phi, k)
    else:
        g_k, q_n = _promise(run, k)
        run.seed = a.seed
        oracle = sampling_oracle(phi, k, G.n, g_k, q_n, a.seed, threads=a.threads)
    res = decide_via_witness_search(oracle, phi, G, k, f)
    return _decision(res.answer, res.witness, f"witness/{a.oracle}",
                     {"oracle_calls": res.oracle_calls, "necessary": res.necessary, "flag": res.flag})


def _decision(answer: bool, witness, method: str, details: dict) -> dict:
    return {"answer": "YES" if answer else "NO", "witness": list(witness) if witness is not None else None,
            "method": method, "details": _plain(details)}


# props ---------------------------------------------------------------------------

def cmd_props(run: _Run) -> dict:
    a = run.args
    if a.action == "list":
        return {"properties": list_properties(),
                "builtins": [{"name": p.name, "symmetric": p.symmetric, "monotone": p.monotone,
                              "uniformly_monotone": p.uniformly_monotone, "description": p.description}
                             for p in builtin_properties()]}
    phi = run.prop(a.property)
    k = _need_k(a)
    if a.action == "minimal":
        ms = minimal_set(phi, k)
        return {"k": k,
                "labelled_minimal": [{"key": hg.key(), "edges": _label_edges(hg.graph)}
                                     for hg in ms.labelled_minimal],
                "unlabelled_minimal": [{"canonical_key": canonical_key(H.key(), k), "edges": H.edge_list()}
                                       for H in ms.unlabelled_minimal]}
    rep = check_uniformly_monotone(phi, k)
    return {"k": k, "symmetric": check_symmetric(phi, k), "monotone": rep.monotone,
            "uniformly_monotone": rep.monotone and rep.uniform, "witness": rep.witness,
            "declared": {"symmetric": phi.symmetric, "monotone": phi.monotone,
                         "uniformly_monotone": phi.uniformly_monotone},
            "flags": flag_report(phi) if a.flags else None}


def _label_edges(H: Graph) -> list[list[int]]:
    return [[a + 1, b + 1] for a, b in H.edge_list()]


# gadget --------------------------------------------------------------------------

_SIZED = re.compile(r"^(grid|subdivided_grid)(\d+)$")


def _gadget(run: _Run):
    a = run.args
    k = _need_k(a)
    G = run.graph(a.graph)
    spec = a.pattern or "clique_grid"
    sized = _SIZED.match(spec)
    if sized:
        H, m = generate_pattern(sized.group(1), k=int(sized.group(2)))
    elif spec in ("grid", "subdivided_grid", "clique_grid"):
        H, m = generate_pattern(spec, k=k)
    else:
        H = run.graph(spec, "--pattern")
        if not a.minor_map:
            raise InputError("a pattern given as a file needs --minor-map")
        m = parse_minor_map(run.text(a.minor_map), H.n)
    if a.minor_map and (sized or spec in FAMILIES):
        m = parse_minor_map(run.text(a.minor_map), H.n)
    if m is None:
        raise InputError(f"pattern {spec!r} has no canonical grid minor map for k={k}; pass --minor-map")
    if m.k != k:
        raise InputError(f"the minor map is for k={m.k} but --k is {k}")
    omega = None
    if a.omega:
        omega = parse_colouring(run.text(a.omega), H.n)
    elif a.omega_seed is not None:
        perm = np.random.default_rng(a.omega_seed).permutation(H.n)
        omega = Colouring([int(c) + 1 for c in perm], H.n)
    return build_clique_gadget(G, k, H, m, omega)


def cmd_gadget(run: _Run) -> dict:
    a = run.args
    if a.action == "universal":
        G = run.graph(a.graph)
        f = run.colouring(a.colouring, G.n) or Colouring.rainbow(G.n)
        G2, f2 = add_universal_vertex(G, f)
        return {"graph": format_graph(G2), "colouring": format_colouring(f2), "n": G2.n, "k": f2.k}
    g = _gadget(run)
    src = g.source
    base = {"host_vertices": g.host.n, "host_edges": g.host.m, "colours": g.colouring.k,
            "expected_vertices": expected_gadget_order(src.G, src.H, src.minor_map),
            "blocks": len(g.copy_index), "residual": len(g.residual)}
    if a.action == "build":
        if a.out:
            gtxt, ctxt, side = export_gadget(g)
            out = Path(a.out)
            Path(f"{out}.g").write_text(gtxt)
            Path(f"{out}.col").write_text(ctxt)
            Path(f"{out}.json").write_text(side)
            base["files"] = [f"{out}.g", f"{out}.col", f"{out}.json"]
        return base
    if a.action == "verify":
        rep = verify_gadget_identity(g, budget=a.budget)
        return {**base, "lhs": rep.lhs, "rhs": rep.rhs, "equal": rep.equal, "method": rep.method,
                "search_nodes": rep.nodes, "search_space": rep.search_space}
    if a.action == "decode":
        if a.copy:
            try:
                Y = [int(t) for t in re.split(r"[,\s]+", a.copy.strip()) if t]
            except ValueError:
                raise InputError("--copy takes comma-separated host vertex ids") from None
            return {**base, "clique": list(decode_colourful_copy(g, Y))}
        copies, _, _ = colourful_copies(g, budget=a.budget)
        decoded = [list(decode_colourful_copy(g, Y)) for Y in copies]
        return {**base, "copies": len(copies), "cliques": sorted(decoded),
                "distinct": len({tuple(x) for x in decoded})}
    # closure-check
    run.seed = a.seed
    rep = check_subgraph_closure(g, a.trials, a.seed)
    return {**base, "trials": rep.trials, "violations": rep.violations, "examples": _plain(rep.examples),
            "note": rep.note}


# hash-family -----------------------------------------------------------------------

def cmd_hash_family(run: _Run) -> dict:
    a = run.args
    if a.n is None or a.k is None:
        raise InputError("--n and --k are required")
    fam = build_k_perfect_family(a.n, a.k, validate=a.validate, seed=a.seed)
    out = {"n": fam.n, "k": fam.k, "size": len(fam), "construction": fam.construction,
           "validation": fam.validation, "valid": fam.valid}
    if a.list:
        out["functions"] = [list(fn) for fn in fam.functions]
    return out


# plumbing ------------------------------------------------------------------------

def _plain(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=default_threads(),
                        help="worker threads inside engines (default: $SUBCOUNT_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised steps")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="refuse enumerations projected above this many states")

    p = _Parser(prog="subcount", description="Parameterised subgraph counting toolkit.")
    p.add_argument("--version", action="version", version=f"subcount {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("count", parents=[common], help="count satisfying k-tuples")
    c.add_argument("--property")
    c.add_argument("--graph")
    c.add_argument("--colouring", "--coloring")
    c.add_argument("--k", type=int)
    c.add_argument("--mode", choices=["exact", "ie", "dp", "sample"], default="exact")
    c.add_argument("--pattern", help="dp mode: pattern family name or graph file")
    c.add_argument("--td", help="dp mode: tree decomposition file of the pattern")
    c.add_argument("--epsilon")
    c.add_argument("--delta")
    c.add_argument("--gk")
    c.add_argument("--qn")
    c.add_argument("--preset", choices=["ramsey"])
    c.set_defaults(func=cmd_count)

    d = sub.add_parser("decide", parents=[common], help="decide whether a satisfying k-tuple exists")
    d.add_argument("--property")
    d.add_argument("--graph")
    d.add_argument("--colouring", "--coloring")
    d.add_argument("--k", type=int)
    d.add_argument("--mode", choices=["brute", "colour-coding", "witness", "ramsey"], default="brute")
    d.add_argument("--colourings", choices=["family", "random"], default="family")
    d.add_argument("--decider", choices=["brute", "dp"], default="brute")
    d.add_argument("--oracle", choices=["exact", "sample"], default="exact")
    d.add_argument("--delta")
    d.add_argument("--gk")
    d.add_argument("--qn")
    d.add_argument("--preset", choices=["ramsey"])
    d.set_defaults(func=cmd_decide)

    pr = sub.add_parser("props", parents=[common], help="inspect property families")
    pr.add_argument("action", choices=["list", "minimal", "check"])
    pr.add_argument("--property")
    pr.add_argument("--k", type=int)
    pr.add_argument("--flags", action="store_true", help="check: also compare declared flags for k <= 4")
    pr.set_defaults(func=cmd_props)

    g = sub.add_parser("gadget", parents=[common], help="build and check the clique gadget")
    g.add_argument("action", choices=["build", "verify", "decode", "closure-check", "universal"])
    g.add_argument("--graph", help="source graph")
    g.add_argument("--colouring", "--coloring", help="universal: colouring of the graph")
    g.add_argument("--k", type=int)
    g.add_argument("--pattern", help="clique_grid, grid, subdivided_grid, gridN, subdivided_gridN or a graph file")
    g.add_argument("--minor-map")
    g.add_argument("--omega", help="colouring file giving the pattern vertices distinct colours")
    g.add_argument("--omega-seed", type=int, help="random bijective omega from this seed")
    g.add_argument("--out", help="build: write <out>.g, <out>.col and <out>.json")
    g.add_argument("--copy", help="decode: comma-separated host vertex ids")
    g.add_argument("--trials", type=int, default=1000)
    g.set_defaults(func=cmd_gadget)

    h = sub.add_parser("hash-family", parents=[common], help="build a k-perfect hash family")
    h.add_argument("--n", type=int)
    h.add_argument("--k", type=int)
    h.add_argument("--validate", action="store_true")
    h.add_argument("--list", action="store_true", help="include the colourings in the report")
    h.set_defaults(func=cmd_hash_family)
    return p


def run_cli(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    start = time.perf_counter()
    report: dict[str, Any] = {"version": __version__, "command": None}
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise InputError("choose a command: count, decide, props, gadget, hash-family")
        report["command"] = args.command
        report["parameters"] = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}
        run = _Run(args)
        result = args.func(run)
        report["inputs"] = run.inputs
        report["result"] = _plain(result)
        if run.seed is not None:
            report["seed"] = run.seed
        status = 0
    except SystemExit as exc:                 # --help / --version
        return int(exc.code or 0)
    except GuardError as exc:
        report["error"] = {"kind": "guard", "message": str(exc), "projected": exc.projected, "limit": exc.limit}
        status = 3
    except (InputError, FormatError, DecodeError, ValueError, OSError) as exc:
        report["error"] = {"kind": "input", "message": str(exc)}
        status = 2
    report["runtime_ms"] = int((time.perf_counter() - start) * 1000)
    print(json.dumps(report, sort_keys=True), file=stdout)
    if status:
        print(f"error: {report['error']['message']}", file=stderr)
    else:
        print(_summary(report), file=stderr)
    return status


def _summary(report: dict) -> str:
    res = report.get("result", {})
    for key in ("count", "estimate", "answer", "equal", "valid", "violations"):
        if key in res:
            return f"{report['command']}: {key} = {res[key]}"
    return f"{report['command']}: ok"


def main() -> None:
    sys.exit(run_cli())

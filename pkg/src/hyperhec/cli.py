"""Command-line interface: ``hyperhec {info,core,centrality,compare}``.

Exit status is 0 on success, 1 on invalid input and 2 when a solver does
not converge.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .connectivity import b_uniform_core, directed_operator_tensor, is_strongly_connected
from .errors import HypergraphError, NonTailUniform, NotConverged
from .hypergraph import Digraph, Hypergraph, modal_tail_cardinality, project, tail_uniformity, uniformity
from .io import (
    FORMATS,
    TIE_RTOL,
    infer_format,
    parse_edgelist,
    parse_hyperedges,
    parse_reactions,
    rankings_json,
    read_scores_csv,
    write_hyperedges,
    write_rankings,
)
from .ranking import spearman, topk_curve
from .spectral import SolverConfig, ec_f_hypergraph, ec_projection, hec, hec_directed, kstep_centrality
from .tensor import KStepOperator, from_hypergraph

METHODS = ("hec", "hec-directed", "ec-f", "ec-projection", "kstep")

TOPK_HELP = (
    "Top-K curves: for direction A->B at K, the K best nodes by A are ranked by their position in A "
    "and correlated (Spearman) with their positions in B's full ranking; B->A mirrors it. Both curves "
    "end at K = N with the full-ranking rho."
)


def _add_input(p, required=True):
    p.add_argument("--input", required=required, help="input file")
    p.add_argument("--format", choices=FORMATS, help="input format (default: from the file suffix)")
    p.add_argument("--undirected", action="store_true", help="edgelist: add the reverse of every arc")
    p.add_argument(
        "--skip-invalid", action="store_true", help="reactions: drop reactions with a species on both sides"
    )


def _add_solver(p):
    p.add_argument("--tol", type=float, default=1e-10, help="bracket-width tolerance (default 1e-10)")
    p.add_argument("--max-iter", type=int, default=10000)
    p.add_argument("--shift", type=float, default=1.0, help="power-iteration shift (default 1)")
    p.add_argument("--k", type=int, help="walk length for --method kstep (>= 2)")
    p.add_argument("--tails", type=int, help="tail cardinality m_T of the extracted directed core")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperhec", description="Spectral centralities of undirected, cyclic, directed and k-step hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="node/edge counts, uniformity and edge kinds")
    _add_input(p)

    p = sub.add_parser("core", help="extract the strongly connected tail-uniform core")
    _add_input(p)
    p.add_argument("--tails", type=int, help="tail cardinality (default: the most common one)")
    p.add_argument("--out", help="output hyperedge file (default: stdout)")

    p = sub.add_parser("centrality", help="compute a centrality and write the ranking")
    _add_input(p)
    p.add_argument("--method", required=True, choices=METHODS)
    _add_solver(p)
    p.add_argument("--allow-unconverged", action="store_true")
    p.add_argument("--out", help="CSV output node,score,rank (default: stdout)")
    p.add_argument("--json", help="JSON output with eigenvalue and diagnostics")

    p = sub.add_parser("compare", help="Spearman rho and top-K curves of two rankings", description=TOPK_HELP)
    _add_input(p, required=False)
    p.add_argument("--method-a", choices=METHODS)
    p.add_argument("--method-b", choices=METHODS)
    p.add_argument("--scores-a", help="score CSV (node,score[,rank]) instead of --method-a")
    p.add_argument("--scores-b", help="score CSV instead of --method-b")
    _add_solver(p)
    p.add_argument("--ks", default="log", help="'log' (default grid), 'all', or a comma list of K values")
    p.add_argument("--out", help="CSV output K,rho_ab,rho_ba (default: stdout)")
    p.add_argument("--json", help="JSON output with rho_full and both curves")
    return parser


def _note(msg: str):
    sys.stderr.write(msg + "\n")


def load_input(args):
    fmt = args.format or infer_format(args.input)
    text = Path(args.input).read_text(encoding="utf-8")
    if fmt == "hyperedges":
        return parse_hyperedges(text)
    if fmt == "reactions":
        return parse_reactions(text, skip_invalid=args.skip_invalid)
    return parse_edgelist(text, undirected=args.undirected)


def _labels(data) -> list:
    return list(data.nodes.labels) if isinstance(data, Hypergraph) else list(data.labels)


def _extract_core(h: Hypergraph, tails):
    if tails is None:
        tails = modal_tail_cardinality(h)
        _note(f"using the most common tail cardinality m_T = {tails}")
    core = b_uniform_core(h, tails)
    if len(core) == 0:
        raise HypergraphError(f"no strongly connected core with tail cardinality {tails}")
    _note(f"core: m_T = {tails}, {core.n} of {h.n} nodes, {len(core)} of {len(h)} edges")
    return core


def prepare(data, methods, tails):
    """Reduce directed input to its core when a directed HEC needs one."""
    if not isinstance(data, Hypergraph) or not data.is_directed():
        return data
    if tails is not None:
        return _extract_core(data, tails)
    if "hec-directed" not in methods:
        return data
    try:
        tail_uniformity(data)
        if is_strongly_connected(directed_operator_tensor(data)):
            return data
    except NonTailUniform:
        pass
    return _extract_core(data, None)


def compute(method: str, data, cfg: SolverConfig, k=None):
    if method == "kstep":
        graph = project(data) if isinstance(data, Hypergraph) else data
        return kstep_centrality(KStepOperator(graph, k), cfg)
    if method == "ec-projection":
        return ec_projection(project(data) if isinstance(data, Hypergraph) else data, cfg)
    if not isinstance(data, Hypergraph):
        raise HypergraphError(f"method {method} needs a hypergraph input, not an edge list")
    if method == "hec":
        return hec(from_hypergraph(data), cfg)
    if method == "hec-directed":
        return hec_directed(data, cfg)
    return ec_f_hypergraph(data, cfg)


def _check_k(methods, k):
    if "kstep" in methods:
        if k is None or k < 2:
            raise HypergraphError("--method kstep requires --k >= 2")
    elif k is not None:
        raise HypergraphError("--k only applies to --method kstep")


def _emit(path, text):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_info(args):
    data = load_input(args)
    if isinstance(data, Digraph):
        print(f"nodes: {data.n}")
        print(f"arcs: {len(data.arcs)}")
        return 0
    print(f"nodes: {data.n}")
    print(f"edges: {len(data)}")
    kinds = data.kinds()
    print("kinds: " + ", ".join(f"{kind}={kinds[kind]}" for kind in sorted(kinds)))
    try:
        print(f"uniform: m = {uniformity(data)}")
    except HypergraphError as exc:
        print(f"uniform: no ({exc})")
    if data.is_directed():
        try:
            print(f"tail-uniform: m_T = {tail_uniformity(data)}")
        except HypergraphError:
            print(f"tail-uniform: no (most common m_T = {modal_tail_cardinality(data)})")
    return 0


def cmd_core(args):
    data = load_input(args)
    if not isinstance(data, Hypergraph):
        raise HypergraphError("core extraction needs a directed hypergraph input")
    core = _extract_core(data, args.tails) if data.is_directed() else b_uniform_core(data, args.tails)
    _emit(args.out, write_hyperedges(core))
    return 0


def _config(args):
    return SolverConfig(tol=args.tol, max_iter=args.max_iter, shift=args.shift)


def cmd_centrality(args):
    _check_k([args.method], args.k)
    cfg = _config(args)
    data = prepare(load_input(args), [args.method], args.tails)
    labels = _labels(data)
    try:
        result = compute(args.method, data, cfg, args.k)
    except NotConverged as exc:
        if not args.allow_unconverged:
            raise
        _note(f"warning: {exc}")
        result = exc.result
    _emit(args.out, write_rankings(result, labels, args.allow_unconverged))
    if args.json:
        extra = {"method": args.method}
        if args.k is not None:
            extra["k"] = args.k
        _emit(args.json, rankings_json(result, labels, args.allow_unconverged, **extra))
    return 0


def _parse_ks(value: str, n: int):
    if value == "log":
        return None
    if value == "all":
        return list(range(2, n + 1))
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise HypergraphError(f"invalid --ks value {value!r}") from None


def _read_scores(path):
    return read_scores_csv(Path(path).read_text(encoding="utf-8"))


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else repr(float(x))


def cmd_compare(args):
    if args.scores_a or args.scores_b:
        if not (args.scores_a and args.scores_b):
            raise HypergraphError("--scores-a and --scores-b must be given together")
        labels, a = _read_scores(args.scores_a)
        labels_b, b_raw = _read_scores(args.scores_b)
        if set(labels) != set(labels_b):
            raise HypergraphError("the two score files rank different node sets")
        pos = {v: i for i, v in enumerate(labels_b)}
        b = np.array([b_raw[pos[v]] for v in labels])
        name_a, name_b = args.scores_a, args.scores_b
    else:
        if not (args.input and args.method_a and args.method_b):
            raise HypergraphError("compare needs --input with --method-a/--method-b, or --scores-a/--scores-b")
        methods = [args.method_a, args.method_b]
        _check_k(methods, args.k)
        cfg = _config(args)
        data = prepare(load_input(args), methods, args.tails)
        labels = _labels(data)
        a = compute(args.method_a, data, cfg, args.k).scores
        b = compute(args.method_b, data, cfg, args.k).scores
        name_a, name_b = args.method_a, args.method_b
    rho = spearman(a, b, TIE_RTOL)
    comp = topk_curve(a, b, _parse_ks(args.ks, len(labels)), TIE_RTOL)
    lines = ["K,rho_ab,rho_ba"]
    lines += [f"{k},{_fmt(r_ab)},{_fmt(r_ba)}" for (k, r_ab), (_, r_ba) in zip(comp.curve_ab, comp.curve_ba)]
    _emit(args.out, "\n".join(lines) + "\n")
    _note(f"rho_full = {rho!r} over {len(labels)} nodes")
    if args.json:
        clean = lambda curve: [[k, None if math.isnan(r) else r] for k, r in curve]  # noqa: E731
        doc = {
            "a": name_a,
            "b": name_b,
            "n": len(labels),
            "rho_full": rho,
            "curve_ab": clean(comp.curve_ab),
            "curve_ba": clean(comp.curve_ba),
        }
        _emit(args.json, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


COMMANDS = {"info": cmd_info, "core": cmd_core, "centrality": cmd_centrality, "compare": cmd_compare}


def run_cli(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NotConverged as exc:
        _note(f"error: {exc}")
        return 2
    except (HypergraphError, OSError) as exc:
        _note(f"error: {exc}")
        return 1


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

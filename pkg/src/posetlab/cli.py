"""Command line interface.

Subcommands:

- ``graphs``      list the census of a given first Betti number
- ``poset``       build one subgraph poset; summary, JSON, or dot
- ``homology``    reduced homology of one poset, or SNF of a matrix file
- ``verify``      run one verification on one graph
- ``duality``     the forest/non-forest duality check for one graph
- ``fiber``       the fiber-poset check for one graph
- ``morse``       search for / verify a level-function certificate
- ``apartment``   the boolean-lattice sphere check for one rank
- ``report``      run verification suites, emit canonical JSON

Exit codes: 0 when every performed check passes (homology-only counts
as a pass for exit purposes), 1 when any check fails, 2 on usage or
input errors.  ``POSETLAB_THREADS`` caps suite worker processes.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .enumeration import (
    apartment,
    enumerate_graphs,
    graphs_with_separating_edge,
    parse_key,
    verify_apartment,
    verify_fiber,
)
from .graph_posets import (
    KINDS,
    VerificationError,
    _betti_profile,
    CheckReport,
    build_poset,
    graph_label,
    verify_core_retraction,
    verify_duality,
    verify_forest_generators,
    verify_sphericity,
    verify_sphericity_via_core,
    verify_subset_sphere,
    verify_valence_two,
)
from .homology import read_triplet_matrix, reduced_homology, snf_from_entries
from .morse import search_certificate, verify_certificate
from .multigraph import GraphError
from .poset import order_complex
from .suites import (
    DEEP_BUDGET_SECONDS,
    DEFAULT_REPORT_SUITES,
    SUITE_NAMES,
    canonical_json,
    report_all,
    run_suite,
)

VERIFY_TARGETS = ("x", "cx", "retraction", "valence2", "generators", "subset-sphere")


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _edge_set_label(edges) -> str:
    return "{" + ",".join(str(e) for e in sorted(edges)) + "}"


def _graph_dot(g) -> str:
    lines = ["graph {"]
    for v in g.vertices:
        lines.append(f"  v{v};")
    for e, u, v in g.edges:
        lines.append(f'  v{u} -- v{v} [label="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _poset_dot(p) -> str:
    lines = ["digraph {", "  rankdir=BT;"]
    for i, x in enumerate(p.elements):
        lines.append(f'  n{i} [label="{_edge_set_label(x)}"];')
    for i, j in p.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _homology_obj(h) -> dict:
    top = h.max_degree()
    top = 0 if top is None else top
    return {
        "betti": [h.betti(d) for d in range(-1, top + 1)],
        "torsion": {str(d): list(h.torsion(d)) for d in range(-1, top + 1) if h.torsion(d)},
        "trivial": h.is_trivial(),
    }


def _print_record(rec: CheckReport, as_json: bool, out_path: str | None) -> int:
    if as_json:
        _emit(canonical_json(rec.to_json_obj()), out_path)
    else:
        lines = [f"{rec.graph}  {rec.check}  {rec.status}"]
        for key, value in sorted(rec.to_json_obj()["data"].items()):
            lines.append(f"  {key}: {value}")
        _emit("\n".join(lines) + "\n", out_path)
    return 0 if rec.status != "fail" else 1


def _require_graph(args) -> "object":
    if not args.graph:
        raise VerificationError("--graph KEY is required for this command")
    return parse_key(args.graph)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_graphs(args) -> int:
    keys = enumerate_graphs(args.rank)
    if args.json:
        obj = {
            "rank": args.rank,
            "count": len(keys),
            "with_separating_edge": sorted(graphs_with_separating_edge(args.rank)),
            "graphs": list(keys),
        }
        _emit(canonical_json(obj), args.out)
    else:
        _emit("\n".join(keys) + "\n", args.out)
    return 0


def _cmd_poset(args) -> int:
    g = _require_graph(args)
    p = build_poset(g, args.kind)
    if args.dot:
        _emit(_poset_dot(p), args.out)
        return 0
    if args.json:
        obj = {
            "graph": args.graph,
            "kind": args.kind,
            "elements": [sorted(x) for x in p.elements],
            "covers": sorted(map(list, p.covers())),
        }
        _emit(canonical_json(obj), args.out)
        return 0
    _emit(
        f"{args.graph}  kind={args.kind}  elements={p.n}  covers={len(p.covers())}\n",
        args.out,
    )
    return 0


def _cmd_homology(args) -> int:
    if args.matrix:
        with open(args.matrix, encoding="utf-8") as fh:
            entries, nrows, ncols = read_triplet_matrix(fh.read())
        res = snf_from_entries(entries, nrows, ncols)
        obj = {
            "rows": nrows,
            "cols": ncols,
            "rank": res.rank,
            "invariant_factors": list(res.factors),
            "torsion": list(res.torsion()),
        }
        if args.json:
            _emit(canonical_json(obj), args.out)
        else:
            _emit(
                f"rank {res.rank}  factors {list(res.factors)}  torsion {list(res.torsion())}\n",
                args.out,
            )
        return 0
    g = _require_graph(args)
    p = build_poset(g, args.kind)
    h = reduced_homology(order_complex(p))
    obj = {"graph": args.graph, "kind": args.kind, "homology": _homology_obj(h)}
    if args.json:
        _emit(canonical_json(obj), args.out)
    else:
        _emit(f"{args.graph}  kind={args.kind}  {h}\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    g = _require_graph(args)
    key = args.graph
    if args.target == "x":
        rec = verify_sphericity_via_core(g, "x", key) if args.deep else verify_sphericity(g, "x", key)
    elif args.target == "cx":
        rec = verify_sphericity_via_core(g, "cx", key) if args.deep else verify_sphericity(g, "cx", key)
    elif args.target == "retraction":
        rec = verify_core_retraction(g, connected_only=args.connected, label=key)
    elif args.target == "valence2":
        subdivided, w = g.subdivide_edge(min(g.edge_ids))
        rec = verify_valence_two(subdivided, w, label=key)
    elif args.target == "generators":
        rec = verify_forest_generators(g, key)
    else:
        rec = verify_subset_sphere(g, key)
    return _print_record(rec, args.json, args.out)


def _cmd_duality(args) -> int:
    g = _require_graph(args)
    return _print_record(verify_duality(g, args.graph), args.json, args.out)


def _cmd_fiber(args) -> int:
    g = _require_graph(args)
    rep = verify_fiber(g, args.connected, label=args.graph)
    data = {
        "connected_only": args.connected,
        "elements": rep.elements,
        "slice_matches_core_opposite": rep.slice_matches_core_opposite,
        "retraction_direction": rep.retraction_direction,
        "homology_matches_core": rep.homology_matches_core,
        "homology": rep.homology,
    }
    rec = CheckReport(
        args.graph,
        "fiber-connected" if args.connected else "fiber",
        "pass" if rep.ok else "fail",
        _betti_profile(rep.homology),
        data,
    )
    return _print_record(rec, args.json, args.out)


def _cmd_morse(args) -> int:
    g = _require_graph(args)
    p = build_poset(g, args.kind)
    res = search_certificate(p)
    obj = {
        "graph": args.graph,
        "kind": args.kind,
        "found": res.found,
        "exhausted": res.exhausted,
        "centers_tried": res.centers_tried,
    }
    if res.found:
        obj["levels"] = [sorted(map(_edge_set_label, level)) for level in res.certificate.levels]
    if args.action == "search":
        if args.json:
            _emit(canonical_json(obj), args.out)
        else:
            _emit(
                f"{args.graph}  kind={args.kind}  found={res.found}  exhausted={res.exhausted}\n",
                args.out,
            )
        return 0
    # verify: a certificate must exist and check out
    if not res.found:
        obj["verified"] = False
        _emit(canonical_json(obj) if args.json else f"{args.graph}  no certificate found\n", args.out)
        return 1
    chk = verify_certificate(p, res.certificate)
    obj["verified"] = chk.ok
    obj["reason"] = chk.reason
    if args.json:
        _emit(canonical_json(obj), args.out)
    else:
        _emit(f"{args.graph}  kind={args.kind}  verified={chk.ok}  {chk.reason}\n", args.out)
    return 0 if chk.ok else 1


def _cmd_apartment(args) -> int:
    h, expected, ok = verify_apartment(args.rank)
    p = apartment(args.rank)
    if args.dot:
        _emit(_poset_dot(p), args.out)
        return 0 if ok else 1
    obj = {
        "rank": args.rank,
        "elements": p.n,
        "dimension": args.rank - 2,
        "homology": _homology_obj(h),
        "is_sphere": ok,
    }
    if args.json:
        _emit(canonical_json(obj), args.out)
    else:
        _emit(f"apartment-{args.rank}  elements={p.n}  sphere={ok}\n", args.out)
    return 0 if ok else 1


def _cmd_report(args) -> int:
    if args.suite:
        rep = run_suite(args.suite, deep_budget=args.budget)
        _emit(rep.to_json(), args.out)
        sys.stderr.write(
            f"{rep.suite}: {rep.summary.get('pass', 0)} pass, "
            f"{rep.summary.get('homology-only', 0)} homology-only, "
            f"{rep.summary.get('fail', 0)} fail  ({rep.wall_seconds:.2f}s)\n"
        )
        return 0 if rep.ok else 1
    names = list(DEFAULT_REPORT_SUITES)
    if args.deep:
        names.append("rank4-deep")
    obj, ok = report_all(names, deep_budget=args.budget)
    _emit(canonical_json(obj), args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sub, graph=False, kind=False, rank=False):
    if graph:
        sub.add_argument("--graph", metavar="KEY", help="graph key, e.g. '2;0-1,0-1,0-1'")
    if kind:
        sub.add_argument("--kind", choices=KINDS, default="x", help="which subgraph poset")
    if rank:
        sub.add_argument("--rank", type=int, required=True, help="first Betti number")
    sub.add_argument("--json", action="store_true", help="emit canonical JSON")
    sub.add_argument("--out", metavar="PATH", help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="posetlab",
        description="subgraph posets of finite multigraphs and their exact homology",
    )
    ap.add_argument("--version", action="version", version=f"posetlab {__version__}")
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("graphs", help="list the census for a given first Betti number")
    _add_common(s, rank=True)

    s = sp.add_parser("poset", help="build one subgraph poset")
    _add_common(s, graph=True, kind=True)
    s.add_argument("--dot", action="store_true", help="emit the Hasse diagram as dot")

    s = sp.add_parser("homology", help="reduced homology of a poset, or SNF of a matrix")
    _add_common(s, graph=True, kind=True)
    s.add_argument("--matrix", metavar="PATH", help="triplet matrix file: 'rows cols' then 'i j value' lines")

    s = sp.add_parser("verify", help="run one verification on one graph")
    s.add_argument("target", choices=VERIFY_TARGETS)
    _add_common(s, graph=True)
    s.add_argument("--connected", action="store_true", help="use the connected variants")
    s.add_argument("--deep", action="store_true", help="route sphericity through the core poset")

    s = sp.add_parser("duality", help="forest/non-forest duality for one graph")
    _add_common(s, graph=True)

    s = sp.add_parser("fiber", help="fiber-poset check for one graph")
    _add_common(s, graph=True)
    s.add_argument("--connected", action="store_true", help="connected cores only")

    s = sp.add_parser("morse", help="level-function certificates for a poset")
    s.add_argument("action", choices=("search", "verify"))
    _add_common(s, graph=True, kind=True)
    s.set_defaults(kind="c")

    s = sp.add_parser("apartment", help="boolean-lattice sphere check")
    _add_common(s, rank=True)
    s.add_argument("--dot", action="store_true", help="emit the Hasse diagram as dot")

    s = sp.add_parser("report", help="run verification suites, emit canonical JSON")
    _add_common(s)
    s.add_argument("--suite", choices=SUITE_NAMES, help="run a single suite")
    s.add_argument("--deep", action="store_true", help="include the rank-4 suite")
    s.add_argument(
        "--budget",
        type=float,
        default=DEEP_BUDGET_SECONDS,
        metavar="SECONDS",
        help="wall-clock budget for the rank-4 suite",
    )
    return ap


_HANDLERS = {
    "graphs": _cmd_graphs,
    "poset": _cmd_poset,
    "homology": _cmd_homology,
    "verify": _cmd_verify,
    "duality": _cmd_duality,
    "fiber": _cmd_fiber,
    "morse": _cmd_morse,
    "apartment": _cmd_apartment,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (GraphError, VerificationError, ValueError, OSError) as exc:
        sys.stderr.write(f"posetlab: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

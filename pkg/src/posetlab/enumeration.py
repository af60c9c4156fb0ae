"""Enumeration of the graphs under study, canonical labels, local fiber
posets, and apartment lattices.

The graphs of interest are connected multigraphs (loops and parallel
edges allowed) with minimum valence three and a prescribed first Betti
number.  Such a graph with first Betti number r has at most 2(r-1)
vertices, so for each rank there are finitely many isomorphism classes
and they can be listed exhaustively.

Canonical keys make deduplication and reporting deterministic: every
graph maps to a string of the form ``"<nv>;u-v,u-v,..."`` that is
invariant under relabeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .graph_posets import build_poset, poset_elements
from .homology import HomologyResult, reduced_homology
from .multigraph import GraphError, Multigraph, Subgraph
from .poset import (
    FinitePoset,
    PosetMap,
    closure_retraction,
    is_order_isomorphic_via,
    order_complex,
    poset_of_subsets,
    subset_lattice,
)

# ---------------------------------------------------------------------------
# canonical labels
# ---------------------------------------------------------------------------


def _encode(nv: int, pairs) -> str:
    body = ",".join(f"{u}-{v}" for u, v in sorted(pairs))
    return f"{nv};{body}"


def _invariant_classes(g: Multigraph):
    """Partition vertices by an iterated neighborhood invariant.

    Starts from (valence, loop count) and refines each vertex by the
    multiset of (edge multiplicity, neighbor class) pairs until stable.
    Vertices in different classes can never be exchanged by an
    isomorphism, which cuts the permutation search space.
    """
    verts = list(g.vertices)
    loops: dict = {v: 0 for v in verts}
    mult: dict = {}
    for _, u, v in g.edges:
        if u == v:
            loops[u] += 1
        else:
            mult[(u, v)] = mult.get((u, v), 0) + 1
            mult[(v, u)] = mult.get((v, u), 0) + 1

    color = {v: (g.valence(v), loops[v]) for v in verts}
    while True:
        fresh = {}
        for v in verts:
            around = sorted(
                (m, color[w]) for (x, w), m in mult.items() if x == v
            )
            fresh[v] = (color[v], tuple(around))
        palette = sorted(set(fresh.values()))
        renamed = {v: palette.index(fresh[v]) for v in verts}
        if all(
            (renamed[a] == renamed[b]) == (color[a] == color[b])
            for a in verts
            for b in verts
        ):
            return renamed
        color = renamed


def canonical_key(g: Multigraph) -> str:
    """A string identifying `g` up to isomorphism.

    Vertices are first split into invariant classes; the key is the
    minimum edge-list encoding over all relabelings that send lower
    classes to lower numbers.  Exact, not a hash: two graphs get the
    same key if and only if they are isomorphic.
    """
    verts = sorted(g.vertices)
    nv = len(verts)
    color = _invariant_classes(g)
    order = sorted(verts, key=lambda v: (color[v], v))
    # group contiguous same-class vertices; permutations act within groups
    groups = []
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and color[order[j]] == color[order[i]]:
            j += 1
        groups.append(order[i:j])
        i = j
    base = [v for grp in groups for v in grp]
    raw_pairs = [(u, v) for _, u, v in g.edges]

    best = None
    for perm in _group_permutations(groups):
        relabel = {old: new for new, old in enumerate(perm)}
        pairs = [
            tuple(sorted((relabel[u], relabel[v]))) for u, v in raw_pairs
        ]
        key = _encode(nv, pairs)
        if best is None or key < best:
            best = key
    assert best is not None or nv == 0
    return best if best is not None else _encode(0, [])


def _group_permutations(groups):
    """All vertex orderings obtained by permuting within each class."""
    if not groups:
        yield []
        return
    head, rest = groups[0], groups[1:]
    for p in permutations(head):
        for tail in _group_permutations(rest):
            yield list(p) + tail


def canonical_form(g: Multigraph) -> Multigraph:
    """The relabeling of `g` on vertices 0..nv-1 realizing its key."""
    return parse_key(canonical_key(g))


def parse_key(key: str) -> Multigraph:
    """Rebuild a graph from a canonical key string."""
    try:
        head, _, body = key.partition(";")
        nv = int(head)
        edges = []
        if body:
            for i, chunk in enumerate(body.split(",")):
                u, _, v = chunk.partition("-")
                edges.append((i, int(u), int(v)))
    except ValueError as exc:
        raise GraphError(f"malformed graph key {key!r}") from exc
    return Multigraph(range(nv), edges)


# ---------------------------------------------------------------------------
# the census
# ---------------------------------------------------------------------------


def _degree_multisets(nv: int, total: int):
    """Nonincreasing sequences of length nv, entries >= 3, summing to total."""

    def grow(prefix, remaining, cap):
        slots = nv - len(prefix)
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        lo = 3
        hi = min(cap, remaining - lo * (slots - 1))
        for d in range(hi, lo - 1, -1):
            yield from grow(prefix + [d], remaining - d, d)

    yield from grow([], total, total)


def _realizations(degrees):
    """All multigraphs on labeled vertices with the given degrees.

    Distributes each vertex's remaining valence over loops and edges to
    higher-numbered vertices; a loop consumes two units.  Yields edge
    lists as ((u, v), multiplicity) dicts.
    """
    nv = len(degrees)

    def place(v, residual, acc):
        if v == nv:
            if all(r == 0 for r in residual):
                yield dict(acc)
            return
        r = residual[v]

        def split_rec(units, targets, res, got):
            """Distribute `units` among `targets` capped by residuals."""
            if not targets:
                if units == 0:
                    yield got, res
                return
            w = targets[0]
            cap = min(units, res[w])
            for m in range(cap + 1):
                res2 = res.copy()
                res2[w] -= m
                more = got + ([((v, w), m)] if m else [])
                yield from split_rec(units - m, targets[1:], res2, more)

        targets = list(range(v + 1, nv))
        for loops in range(r // 2 + 1):
            units = r - 2 * loops
            base = acc + ([((v, v), loops)] if loops else [])
            for got, res in split_rec(units, targets, residual, []):
                res2 = res.copy()
                res2[v] = 0
                yield from place(v + 1, res2, base + got)

    yield from place(0, list(degrees), [])


def _from_multiplicities(nv: int, mult: dict) -> Multigraph:
    edges = []
    eid = 0
    for (u, v), m in sorted(mult.items()):
        for _ in range(m):
            edges.append((eid, u, v))
            eid += 1
    return Multigraph(range(nv), edges)


@lru_cache(maxsize=None)
def enumerate_graphs(rank: int):
    """All connected multigraphs with first Betti number `rank` and
    minimum valence three, up to isomorphism, as canonical keys.

    A graph with these properties satisfies 2|E| >= 3|V| and
    |E| = |V| + rank - 1, hence |V| <= 2(rank - 1); the search over
    vertex counts and degree multisets is therefore finite.

    >>> enumerate_graphs(2)
    ('1;0-0,0-0', '2;0-0,0-1,1-1', '2;0-1,0-1,0-1')
    """
    if rank < 2:
        raise ValueError("enumeration is defined for rank >= 2")
    found = set()
    for nv in range(1, 2 * (rank - 1) + 1):
        ne = nv + rank - 1
        for degrees in _degree_multisets(nv, 2 * ne):
            for mult in _realizations(degrees):
                g = _from_multiplicities(nv, mult)
                if not g.is_connected():
                    continue
                found.add(canonical_key(g))
    return tuple(sorted(found))


def graphs_with_separating_edge(rank: int):
    """Canonical keys of census graphs containing a separating edge."""
    keys = []
    for key in enumerate_graphs(rank):
        g = parse_key(key)
        if any(g.is_separating_edge(e) for e in g.edge_ids):
            keys.append(key)
    return tuple(keys)


# ---------------------------------------------------------------------------
# local fiber posets
# ---------------------------------------------------------------------------


def _forests(g: Multigraph):
    """Every forest edge set of `g`, including the empty one."""
    from itertools import combinations

    non_loops = [e for e in g.edge_ids if not g.is_loop(e)]
    out = [frozenset()]
    for k in range(1, len(non_loops) + 1):
        for combo in combinations(non_loops, k):
            edges = frozenset(combo)
            if Subgraph(g, edges).is_forest():
                out.append(edges)
    return out


def fiber_poset(g: Multigraph, connected_only: bool = False) -> FinitePoset:
    """The local fiber poset of `g`.

    Elements are pairs (F, H) where F is any forest of `g` (possibly
    empty) and H is a core subgraph of the graph obtained by collapsing
    F — connected when `connected_only` is set.  Edge ids survive the
    collapse, so both coordinates are edge-id sets, and

        (F1, H1) <= (F2, H2)  iff  F1 >= F2 and F1 | H1 >= F2 | H2.

    The slice at F = empty is the (connected) core poset with its order
    reversed.
    """
    kind = "cc" if connected_only else "c"
    elements = []
    for forest in _forests(g):
        collapsed = g.collapse_forest(forest)
        for h in poset_elements(collapsed, kind):
            elements.append((forest, h))
    elements.sort(key=lambda fh: (sorted(fh[0]), sorted(fh[1])))

    def leq(a, b):
        return a[0] >= b[0] and (a[0] | a[1]) >= (b[0] | b[1])

    return FinitePoset.from_relation(elements, leq)


def fiber_retraction(g: Multigraph, connected_only: bool = False):
    """The closure retraction of the fiber poset onto its empty slice.

    A pair (F, H) maps to (empty, core of H plus the F-components whose
    collapse image lies in H).  Returns the certificate produced by
    :func:`posetlab.poset.closure_retraction`; the certified direction is
    increasing and the image is the empty slice.
    """
    p = fiber_poset(g, connected_only)
    empty = frozenset()

    def retract(pair):
        forest, h = pair
        if not forest:
            return pair
        vm = g.forest_vertex_map(forest)
        h_vertices = set()
        for e in h:
            u, v = g.endpoints(e)
            h_vertices.add(vm[u])
            h_vertices.add(vm[v])
        extra = {e for e in forest if vm[g.endpoints(e)[0]] in h_vertices}
        core = Subgraph(g, h | extra).core().edges
        return (empty, core)

    endo = PosetMap.from_function(p, p, retract)
    return closure_retraction(p, endo)


@dataclass(frozen=True)
class FiberReport:
    """Everything checked about one fiber poset."""

    graph: str
    connected_only: bool
    elements: int
    slice_matches_core_opposite: bool
    retraction_direction: str
    homology_matches_core: bool
    homology: HomologyResult

    @property
    def ok(self) -> bool:
        return (
            self.slice_matches_core_opposite
            and self.retraction_direction in ("increasing", "both")
            and self.homology_matches_core
        )


def verify_fiber(g: Multigraph, connected_only: bool = False, label: str | None = None):
    """Check the structure of the fiber poset of `g`: its empty slice is
    the opposite of the (connected) core poset, it retracts onto that
    slice by an increasing closure map, and its homology agrees with the
    core poset's.
    """
    from .graph_posets import graph_label

    label = label or graph_label(g)
    kind = "cc" if connected_only else "c"
    cert = fiber_retraction(g, connected_only)
    p = cert.poset
    core = build_poset(g, kind)

    empty = frozenset()
    slice_elements = [x for x in p.elements if x[0] == empty]
    slice_poset = p.induced(slice_elements)
    iso = is_order_isomorphic_via(
        slice_poset, core.opposite(), {(empty, h): h for _, h in slice_elements}
    )
    image_ok = set(cert.image.elements) == set(slice_elements)

    h_fiber = reduced_homology(order_complex(p))
    h_core = reduced_homology(order_complex(core))

    return FiberReport(
        graph=label,
        connected_only=connected_only,
        elements=p.n,
        slice_matches_core_opposite=iso and image_ok,
        retraction_direction=cert.direction,
        homology_matches_core=h_fiber == h_core,
        homology=h_fiber,
    )


# ---------------------------------------------------------------------------
# apartments
# ---------------------------------------------------------------------------


def apartment(rank: int) -> FinitePoset:
    """The lattice of proper nonempty subsets of a `rank`-element set.

    This is the shape shared by every full subgraph poset on `rank`
    edges; its order complex triangulates a sphere of dimension rank-2.
    """
    if rank < 1:
        raise ValueError("apartment rank must be >= 1")
    return subset_lattice(range(rank))


def verify_apartment(rank: int):
    """Confirm the apartment of the given rank is a sphere of
    dimension rank-2.  Returns (homology, expected, ok)."""
    from .graph_posets import subset_lattice_homology

    h = subset_lattice_homology(rank)
    expected = HomologyResult.sphere(rank - 2)
    return h, expected, h == expected

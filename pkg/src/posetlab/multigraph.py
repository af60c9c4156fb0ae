"""Finite multigraphs with loops and parallel edges.

Vertices and edges carry small opaque integer ids.  An edge is an unordered
pair of vertices, possibly a loop.  All mutating operations return a new
graph; edge ids survive deletion and collapse, which is what lets a subgraph
of a quotient graph G/F be lifted unambiguously back into E(G) - F.

Conventions used throughout:

* the valence of a vertex counts loops twice;
* the rank of a graph is |E| - |V| + (number of connected components),
  the rank of its first homology;
* a forest is an edge set of rank zero;
* the core of an edge set is what remains after repeatedly deleting edges
  with a valence-one endpoint.  Tree components disappear entirely, so the
  core has minimum valence two and every component of the core carries at
  least one cycle.  The core of a graph that is already core is the graph
  itself; properness is a condition imposed by callers, not here.
"""

from __future__ import annotations

import json


class GraphError(ValueError):
    """A structurally invalid graph, or an invalid operation on one."""


def _find(parent, v):
    root = v
    while parent[root] != root:
        root = parent[root]
    while parent[v] != root:
        parent[v], v = root, parent[v]
    return root


def _union(parent, u, v):
    ru, rv = _find(parent, u), _find(parent, v)
    if ru == rv:
        return False
    # smaller id wins, so class representatives are stable under reordering
    if rv < ru:
        ru, rv = rv, ru
    parent[rv] = ru
    return True


def _components_of(vertices, pairs):
    """Partition `vertices` by the edges in `pairs`; returns root -> set."""
    parent = {v: v for v in vertices}
    for u, v in pairs:
        _union(parent, u, v)
    classes = {}
    for v in vertices:
        classes.setdefault(_find(parent, v), set()).add(v)
    return classes


class Multigraph:
    """An immutable multigraph.  Edges are (id, u, v) with u <= v."""

    __slots__ = ("vertices", "edges", "_by_id", "_incident", "_hash")

    def __init__(self, vertices, edges):
        self.vertices = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(self.vertices)
        norm = []
        seen = set()
        for eid, u, v in edges:
            eid, u, v = int(eid), int(u), int(v)
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid} has undeclared endpoint")
            seen.add(eid)
            norm.append((eid, min(u, v), max(u, v)))
        norm.sort()
        self.edges = tuple(norm)
        self._by_id = {e: (u, v) for e, u, v in self.edges}
        inc = {v: [] for v in self.vertices}
        for e, u, v in self.edges:
            inc[u].append(e)
            if v != u:
                inc[v].append(e)
        self._incident = {v: tuple(es) for v, es in inc.items()}
        self._hash = hash((self.vertices, self.edges))

    # -- basic queries ---------------------------------------------------

    @property
    def edge_ids(self):
        return tuple(e for e, _, _ in self.edges)

    def endpoints(self, eid):
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphError(f"unknown edge id {eid}") from None

    def is_loop(self, eid):
        u, v = self.endpoints(eid)
        return u == v

    def num_vertices(self):
        return len(self.vertices)

    def num_edges(self):
        return len(self.edges)

    def valence(self, v):
        if v not in self._incident:
            raise GraphError(f"unknown vertex {v}")
        total = 0
        for e in self._incident[v]:
            a, b = self._by_id[e]
            total += 2 if a == b else 1
        return total

    def min_valence(self):
        return min((self.valence(v) for v in self.vertices), default=0)

    def components(self):
        classes = _components_of(self.vertices, [(u, v) for _, u, v in self.edges])
        return sorted(classes.values(), key=min)

    def is_connected(self):
        return len(self.components()) == 1

    def rank(self):
        """First Betti number: |E| - |V| + number of components."""
        return len(self.edges) - len(self.vertices) + len(self.components())

    # -- edge operations -------------------------------------------------

    def is_separating_edge(self, eid):
        """True if deleting the edge increases the number of components.

        Loops are never separating.  A lone edge whose deletion empties the
        graph counts as separating, matching the convention that a bridge in
        a tree separates it.
        """
        u, v = self.endpoints(eid)
        if u == v:
            return False
        before = len(self.components())
        # compare on the same vertex set: a pendant edge is still a bridge
        pairs = [(a, b) for e, a, b in self.edges if e != eid]
        after = len(_components_of(self.vertices, pairs))
        return after > before

    def delete_edge(self, eid):
        """Remove the edge, then drop any vertices left isolated."""
        self.endpoints(eid)
        edges = [e for e in self.edges if e[0] != eid]
        used = set()
        for _, u, v in edges:
            used.add(u)
            used.add(v)
        return Multigraph(sorted(used), edges)

    def collapse_edge(self, eid):
        """Identify the endpoints of a non-loop edge and remove it.

        The merged vertex keeps the smaller of the two ids; every other
        edge id is preserved, so subgraphs of the quotient lift back.
        """
        u, v = self.endpoints(eid)
        if u == v:
            raise GraphError(f"cannot collapse loop {eid}")
        keep, drop = min(u, v), max(u, v)
        edges = []
        for e, a, b in self.edges:
            if e == eid:
                continue
            if a == drop:
                a = keep
            if b == drop:
                b = keep
            edges.append((e, a, b))
        vertices = [w for w in self.vertices if w != drop]
        return Multigraph(vertices, edges)

    def forest_vertex_map(self, edge_set):
        """vertex -> representative after collapsing the forest `edge_set`.

        Representatives are the minimum vertex id of each class, matching
        what iterated collapse_edge produces.
        """
        edge_set = frozenset(edge_set)
        if not self.subgraph(edge_set).is_forest():
            raise GraphError("edge set contains a cycle")
        parent = {v: v for v in self.vertices}
        for e in sorted(edge_set):
            u, v = self.endpoints(e)
            _union(parent, u, v)
        return {v: _find(parent, v) for v in self.vertices}

    def collapse_forest(self, edge_set):
        """Collapse every edge of a forest at once.

        The result does not depend on the order the edges are collapsed in;
        the test suite checks this against iterated collapse_edge.
        """
        edge_set = frozenset(edge_set)
        vmap = self.forest_vertex_map(edge_set)
        edges = [(e, vmap[u], vmap[v]) for e, u, v in self.edges if e not in edge_set]
        vertices = sorted(set(vmap.values()))
        return Multigraph(vertices, edges)

    def subdivide_edge(self, eid):
        """Replace one edge by a two-edge path through a fresh vertex.

        Returns ``(graph, new_vertex)``.  The new vertex has valence two, so
        ``smooth_valence_two(new_vertex)`` undoes the subdivision up to edge
        relabelling.  Loops may be subdivided; the result is a bigon.
        """
        u, v = self.endpoints(eid)
        w = max(self.vertices) + 1
        base = max(self.edge_ids) + 1
        edges = [e for e in self.edges if e[0] != eid]
        edges.append((base, u, w))
        edges.append((base + 1, w, v))
        return Multigraph(list(self.vertices) + [w], edges), w

    def smooth_valence_two(self, v):
        """Replace the two-edge segment through a valence-two vertex.

        The two distinct edges e1, e2 at v are removed together with v, and
        a single new edge (with a fresh id) joins their far endpoints.
        """
        if v not in self._incident:
            raise GraphError(f"unknown vertex {v}")
        if self.valence(v) != 2:
            raise GraphError(f"vertex {v} has valence {self.valence(v)}, not 2")
        incident = self._incident[v]
        if len(incident) != 2:
            # a single loop at v: the two incidences are the same edge
            raise GraphError(f"vertex {v} carries a loop; nothing to smooth")
        e1, e2 = incident
        ends = []
        for e in (e1, e2):
            a, b = self.endpoints(e)
            ends.append(b if a == v else a)
        new_id = max(self.edge_ids) + 1
        edges = [e for e in self.edges if e[0] not in (e1, e2)]
        edges.append((new_id, ends[0], ends[1]))
        vertices = [w for w in self.vertices if w != v]
        return Multigraph(vertices, edges), new_id

    def maximal_forests(self):
        """All spanning forests, as subgraphs, in a deterministic order.

        For a connected graph these are the spanning trees; a graph on one
        vertex has exactly the empty forest.
        """
        from itertools import combinations

        n = len(self.vertices)
        if n <= 1:
            return [self.subgraph(frozenset())]
        non_loops = [e for e, u, v in self.edges if u != v]
        out = []
        for combo in combinations(sorted(non_loops), n - 1):
            sub = self.subgraph(frozenset(combo))
            if sub.is_forest() and len(sub.vertices) == n:
                out.append(sub)
        return out

    def subgraph(self, edge_set):
        return Subgraph(self, frozenset(edge_set))

    # -- serialization ---------------------------------------------------

    def to_json_obj(self):
        return {
            "vertices": list(self.vertices),
            "edges": [[e, u, v] for e, u, v in self.edges],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["vertices"], [tuple(e) for e in obj["edges"]])

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def to_dot(self, name="g"):
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f"  {v};")
        for e, u, v in self.edges:
            lines.append(f'  {u} -- {v} [label="e{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Multigraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Multigraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


class Subgraph:
    """An edge subset of a host graph, with its induced vertex set.

    A subgraph never has isolated vertices: its vertices are exactly the
    endpoints of its edges.  The empty subgraph has no vertices.
    """

    __slots__ = ("host", "edges", "vertices", "_hash")

    def __init__(self, host, edges):
        self.host = host
        self.edges = frozenset(edges)
        for e in self.edges:
            host.endpoints(e)
        verts = set()
        for e in self.edges:
            u, v = host.endpoints(e)
            verts.add(u)
            verts.add(v)
        self.vertices = frozenset(verts)
        self._hash = hash((host._hash, self.edges))

    def pairs(self):
        return [self.host.endpoints(e) for e in sorted(self.edges)]

    def components(self):
        classes = _components_of(self.vertices, self.pairs())
        return sorted(classes.values(), key=min)

    def num_components(self):
        return len(self.components())

    def rank(self):
        return len(self.edges) - len(self.vertices) + self.num_components()

    def is_forest(self):
        return self.rank() == 0

    def is_connected(self):
        return self.num_components() == 1

    def valence(self, v):
        total = 0
        for e in self.edges:
            a, b = self.host.endpoints(e)
            if a == v:
                total += 1
            if b == v:
                total += 1
        return total

    def is_core(self):
        """No valence-one vertex, every component of positive rank.

        Minimum valence two already forces a cycle in every component, but
        both conditions are checked to keep the definition explicit.  The
        empty subgraph is vacuously core.
        """
        if any(self.valence(v) < 2 for v in self.vertices):
            return False
        classes = _components_of(self.vertices, self.pairs())
        for root, verts in classes.items():
            n_edges = sum(
                1 for e in self.edges if _in_class(self.host.endpoints(e), verts)
            )
            if n_edges - len(verts) + 1 < 1:
                return False
        return True

    def core(self):
        """Trim valence-one edges until none remain.

        Tree components are eaten completely, so the result is the maximal
        sub-edge-set with minimum valence two.  Idempotent and monotone.
        """
        edges = set(self.edges)
        while True:
            val = {}
            for e in edges:
                u, v = self.host.endpoints(e)
                val[u] = val.get(u, 0) + 1
                val[v] = val.get(v, 0) + 1
            hanging = {
                e
                for e in edges
                if any(val[w] == 1 for w in self.host.endpoints(e))
            }
            if not hanging:
                break
            edges -= hanging
        return Subgraph(self.host, edges)

    def __contains__(self, eid):
        return eid in self.edges

    def __len__(self):
        return len(self.edges)

    def __le__(self, other):
        return self.edges <= other.edges

    def __eq__(self, other):
        return (
            isinstance(other, Subgraph)
            and self.host == other.host
            and self.edges == other.edges
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Subgraph({sorted(self.edges)})"


def _in_class(pair, verts):
    return pair[0] in verts


# -- small constructors used all over the test and demo code ---------------


def rose(num_loops):
    """One vertex with `num_loops` loops."""
    return Multigraph([0], [(i, 0, 0) for i in range(num_loops)])


def theta_graph(num_edges=3):
    """Two vertices joined by parallel edges (the classical theta for 3)."""
    return Multigraph([0, 1], [(i, 0, 1) for i in range(num_edges)])


def dumbbell():
    """Two loops joined by a separating edge."""
    return Multigraph([0, 1], [(0, 0, 0), (1, 0, 1), (2, 1, 1)])

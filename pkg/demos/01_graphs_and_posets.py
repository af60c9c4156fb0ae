"""
A census of small multigraphs and their subgraph posets
========================================================

Every connected multigraph with all valences at least three is pinned
down by its first Betti number and finitely many isomorphism types.
This script walks the census for Betti numbers two and three and builds
the six natural posets of proper nonempty subgraphs for one of them.
"""

from posetlab import (
    KINDS,
    build_poset,
    enumerate_graphs,
    graphs_with_separating_edge,
    parse_key,
    theta_graph,
    canonical_key,
)

# The census keys are canonical: relabeling vertices or edges of a graph
# never changes its key, so each isomorphism type appears exactly once.
for rank in (2, 3):
    keys = enumerate_graphs(rank)
    sep = set(graphs_with_separating_edge(rank))
    print(f"first Betti number {rank}: {len(keys)} graphs "
          f"({len(sep)} with a separating edge)")
    for key in keys:
        marker = "  [separating edge]" if key in sep else ""
        print(f"  {key}{marker}")

# The three rank-2 graphs are old friends: the rose with two petals,
# the theta graph, and the dumbbell.
theta = theta_graph()
print("\ntheta graph key:", canonical_key(theta))

# Six posets live on the proper nonempty subgraphs of a fixed graph,
# ordered by inclusion of edge sets: all subgraphs, forests, subgraphs
# containing a cycle, cores, and the connected variants of the last two.
print("\nposets of the theta graph (elements, cover relations):")
for kind in KINDS:
    p = build_poset(theta, kind)
    print(f"  {kind:>3}: {p.n:2d} elements, {len(p.covers()):2d} covers")

# The full subgraph poset of a graph with m edges is the boolean lattice
# with top and bottom removed, no matter the graph: only |E| matters.
p_sub = build_poset(theta, "sub")
print("\nthe full subgraph poset has 2^3 - 2 =", p_sub.n, "elements")

# Forests and cycle-containing subgraphs partition it.
p_for = build_poset(theta, "for")
p_x = build_poset(theta, "x")
assert p_for.n + p_x.n == p_sub.n
print("forests:", p_for.n, "+ cycle-containing:", p_x.n, "=", p_sub.n)

"""Posets of subgraphs of a multigraph, and the verifiable facts about them.

Every poset here lives on proper nonempty edge subsets of a host graph,
ordered by inclusion.  Six families are supported, selected by a short
`kind` string:

====  ========================================================
kind  elements
====  ========================================================
sub   every proper nonempty edge subset
for   subsets that are forests
x     subsets containing a cycle (complement of `for` in `sub`)
c     core subgraphs: min valence >= 2 and every component has a cycle
cx    connected elements of `x`
cc    connected elements of `c`
====  ========================================================

The verification entry points (`verify_*`) each compute a structural
claim exactly — over the integers, no floats — and return a
:class:`CheckReport` whose status is one of:

* ``"pass"``          – the claim holds and is fully certified,
* ``"homology-only"`` – homology agrees but homotopy-level certification
  is out of reach for the tool (e.g. a wedge of circles),
* ``"fail"``          – a computed value contradicts the claim.

A failed *precondition* raises instead; a failed *claim* never raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .homology import (
    PI1_NONTRIVIAL,
    PI1_TRIVIAL,
    HomologyResult,
    alexander_duality_check,
    boundary_entries,
    certify_contractible,
    is_contractible_certificate,
    pi1_field,
    reduced_homology,
    snf_from_entries,
)
from .multigraph import GraphError, Multigraph, Subgraph
from .poset import (
    PosetMap,
    closure_retraction,
    order_complex,
    poset_of_subsets,
    subset_lattice,
)

KINDS = ("sub", "for", "x", "c", "cx", "cc")


class VerificationError(ValueError):
    """A verification routine was called outside its stated preconditions."""


# ---------------------------------------------------------------------------
# poset construction
# ---------------------------------------------------------------------------


def _admits(g: Multigraph, edges: frozenset, kind: str) -> bool:
    sg = Subgraph(g, edges)
    if kind == "sub":
        return True
    if kind == "for":
        return sg.is_forest()
    if kind == "x":
        return not sg.is_forest()
    if kind == "c":
        return sg.is_core()
    if kind == "cx":
        return sg.is_connected() and not sg.is_forest()
    if kind == "cc":
        return sg.is_connected() and sg.is_core()
    raise ValueError(f"unknown poset kind {kind!r}; expected one of {KINDS}")


def poset_elements(g: Multigraph, kind: str):
    """Sorted list of the edge subsets admitted into the `kind` poset of `g`."""
    if kind not in KINDS:
        raise ValueError(f"unknown poset kind {kind!r}; expected one of {KINDS}")
    ids = g.edge_ids
    out = []
    for k in range(1, len(ids)):
        for combo in combinations(ids, k):
            edges = frozenset(combo)
            if _admits(g, edges, kind):
                out.append(edges)
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


def build_poset(g: Multigraph, kind: str):
    """The inclusion poset of `kind`-subgraphs of `g`.

    Elements are frozensets of edge ids.  The poset may be empty (for
    example, the forest poset of a one-vertex graph has no elements,
    since every nonempty edge subset contains a loop).
    """
    return poset_of_subsets(poset_elements(g, kind))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification on one graph.

    `betti` lists reduced Betti numbers from degree 0 upward through the
    top degree of the complex that was examined (empty when no complex
    was involved).  Everything else check-specific goes in `data`.
    """

    graph: str
    check: str
    status: str
    betti: tuple = ()
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json_obj(self):
        return {
            "graph": self.graph,
            "check": self.check,
            "status": self.status,
            "betti": list(self.betti),
            "data": _plain(self.data),
        }


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, HomologyResult):
        return value.to_json_obj()
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, float, str)):
        return value
    return str(value)


def graph_label(g: Multigraph) -> str:
    """A human-readable label for `g` built from its current edge list.

    This is *not* canonical across relabelings; enumeration provides
    canonical keys.  It is stable for a fixed graph object.
    """
    pairs = ",".join(f"{u}-{v}" for _, u, v in g.edges)
    return f"{g.num_vertices()};{pairs}"


def _betti_profile(h: HomologyResult) -> tuple:
    top = h.max_degree()
    top = 0 if top is None else max(0, top)
    return tuple(h.betti(d) for d in range(0, top + 1))


def _require_connected_rank(g: Multigraph, check: str, min_rank: int = 2) -> None:
    if not g.is_connected():
        raise VerificationError(f"{check}: graph must be connected")
    if g.rank() < min_rank:
        raise VerificationError(
            f"{check}: graph must have first Betti number >= {min_rank}, got {g.rank()}"
        )


# ---------------------------------------------------------------------------
# the ambient subset lattice is a sphere
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def subset_lattice_homology(num_elements: int) -> HomologyResult:
    """Reduced homology of the order complex of proper nonempty subsets
    of an `num_elements`-element set.

    This complex is the barycentric subdivision of the boundary of a
    simplex, hence a sphere of dimension `num_elements - 2`.
    """
    from .poset import subset_lattice

    p = subset_lattice(range(num_elements))
    return reduced_homology(order_complex(p))


def verify_subset_sphere(g: Multigraph, label: str | None = None) -> CheckReport:
    """Check that the full subgraph poset of `g` triangulates a sphere
    of dimension (number of edges - 2)."""
    label = label or graph_label(g)
    m = g.num_edges()
    if m < 1:
        raise VerificationError("verify_subset_sphere: graph must have an edge")
    h = subset_lattice_homology(m)
    expected = HomologyResult.sphere(m - 2)
    ok = h == expected
    return CheckReport(
        graph=label,
        check="subset-lattice-sphere",
        status="pass" if ok else "fail",
        betti=_betti_profile(h),
        data={"dimension": m - 2, "homology": h},
    )


# ---------------------------------------------------------------------------
# sphericity of the cycle-containing posets
# ---------------------------------------------------------------------------


def _wedge_status(k, h: HomologyResult, target: int) -> tuple[str, str]:
    """Status for the claim 'this complex is a wedge of `target`-spheres'.

    Assumes the homology side of the claim already checked out: `h` is
    free and concentrated in degree `target` (possibly trivial).
    Returns (status, pi1 field value).
    """
    if h.is_trivial():
        # An empty wedge: the claim is contractibility per component —
        # here trivial homology means at most certification remains.
        v = pi1_field(k)
        if v == PI1_TRIVIAL:
            return "pass", v
        if v == PI1_NONTRIVIAL:
            return "fail", v
        return "homology-only", v
    if target == 0:
        # A wedge of 0-spheres: every component must be contractible.
        comps = k.components()
        for comp in comps:
            sub = k.full_subcomplex(sorted(comp))
            hc = reduced_homology(sub)
            if not hc.is_trivial():
                return "fail", PI1_NONTRIVIAL
            if pi1_field(sub) != PI1_TRIVIAL:
                return "homology-only", pi1_field(k)
        return "pass", PI1_TRIVIAL
    if target == 1:
        # A wedge of circles has free nonabelian fundamental group; that
        # is consistent but not certifiable by abelian invariants.
        return "homology-only", PI1_NONTRIVIAL
    v = pi1_field(k)
    if v == PI1_TRIVIAL:
        return "pass", v
    if v == PI1_NONTRIVIAL:
        return "fail", v
    return "homology-only", v


def verify_sphericity(g: Multigraph, kind: str = "x", label: str | None = None) -> CheckReport:
    """Verify the homotopy-type claim for the `x` or `cx` poset of `g`.

    For `x`: if `g` has a separating edge the complex must have trivial
    reduced homology; otherwise it must be free and concentrated in
    degree rank-2 with at least one sphere.  For `cx`: free and
    concentrated in degree rank-2 regardless (an empty wedge allowed).

    Precondition: `g` connected with first Betti number >= 2.
    """
    if kind not in ("x", "cx"):
        raise VerificationError("verify_sphericity supports kinds 'x' and 'cx'")
    label = label or graph_label(g)
    _require_connected_rank(g, f"verify_sphericity[{kind}]")
    target = g.rank() - 2
    p = build_poset(g, kind)
    k = order_complex(p)
    h = reduced_homology(k)
    separating = sorted(e for e in g.edge_ids if g.is_separating_edge(e))
    data = {
        "kind": kind,
        "rank": g.rank(),
        "target_degree": target,
        "separating_edges": list(separating),
        "elements": p.n,
        "homology": h,
    }

    if kind == "x" and separating:
        claim_ok = h.is_trivial()
    elif kind == "x":
        claim_ok = h.concentrated_in(target) and h.betti(target) >= 1
    else:
        claim_ok = h.concentrated_in(target)

    if not claim_ok:
        data["pi1"] = "not-evaluated"
        return CheckReport(label, f"sphericity-{kind}", "fail", _betti_profile(h), data)

    status, v = _wedge_status(k, h, target)
    data["pi1"] = v
    return CheckReport(label, f"sphericity-{kind}", status, _betti_profile(h), data)


# ---------------------------------------------------------------------------
# the core map retracts x onto c (and cx onto cc)
# ---------------------------------------------------------------------------


def core_map(g: Multigraph, p, q) -> PosetMap:
    """The map sending a subgraph to its core, as a poset map p -> q."""

    def f(edges: frozenset) -> frozenset:
        return Subgraph(g, edges).core().edges

    return PosetMap.from_function(p, q, f)


def verify_core_retraction(
    g: Multigraph, connected_only: bool = False, label: str | None = None
) -> CheckReport:
    """Verify that taking cores retracts the cycle-containing poset onto
    the core poset: the map is a decreasing idempotent poset endomap
    fixing exactly the cores, and it preserves homology.

    With `connected_only` the same claim on the connected variants.
    """
    label = label or graph_label(g)
    src_kind, dst_kind = ("cx", "cc") if connected_only else ("x", "c")
    _require_connected_rank(g, f"verify_core_retraction[{src_kind}]", min_rank=1)
    p = build_poset(g, src_kind)
    endo = core_map(g, p, p)
    data: dict = {"source": src_kind, "image": dst_kind, "elements": p.n}

    cert = closure_retraction(p, endo)
    data["direction"] = cert.direction
    if cert.direction not in ("decreasing", "both"):
        return CheckReport(label, f"core-retraction-{src_kind}", "fail", (), data)

    expected_image = set(poset_elements(g, dst_kind))
    actual_image = set(cert.image.elements)
    data["image_size"] = len(actual_image)
    if expected_image != actual_image:
        data["image_mismatch"] = {
            "missing": sorted(map(sorted, expected_image - actual_image)),
            "extra": sorted(map(sorted, actual_image - expected_image)),
        }
        return CheckReport(label, f"core-retraction-{src_kind}", "fail", (), data)

    h_src = reduced_homology(order_complex(p))
    h_img = reduced_homology(order_complex(cert.image))
    data["source_homology"] = h_src
    data["image_homology"] = h_img
    ok = h_src == h_img
    return CheckReport(
        label,
        f"core-retraction-{src_kind}",
        "pass" if ok else "fail",
        _betti_profile(h_src),
        data,
    )


# ---------------------------------------------------------------------------
# smoothing a valence-two vertex
# ---------------------------------------------------------------------------


def valence_two_maps(g: Multigraph, v: int):
    """The comparison maps between connected cycle-containing posets of
    `g` and of the graph with the valence-two vertex `v` smoothed away.

    Returns (smoothed graph, forward map, backward map).  Writing e1, e2
    for the two edges at `v` and e* for the edge replacing them:

    * forward drops `v` from a subgraph: a subgraph containing exactly
      one of e1, e2 loses it; one containing both trades the pair for
      e*; others are untouched.
    * backward replaces e* by the pair e1, e2.
    """
    if g.valence(v) != 2:
        raise VerificationError(f"vertex {v} does not have valence 2")
    g2, e_new = g.smooth_valence_two(v)
    e1, e2 = sorted(e for e in g.edge_ids if v in g.endpoints(e))

    p = build_poset(g, "cx")
    q = build_poset(g2, "cx")

    def forward(edges: frozenset) -> frozenset:
        has1, has2 = e1 in edges, e2 in edges
        if has1 and has2:
            return (edges - {e1, e2}) | {e_new}
        if has1:
            return edges - {e1}
        if has2:
            return edges - {e2}
        return edges

    def backward(edges: frozenset) -> frozenset:
        if e_new in edges:
            return (edges - {e_new}) | {e1, e2}
        return edges

    fwd = PosetMap.from_function(p, q, forward)
    bwd = PosetMap.from_function(q, p, backward)
    return g2, fwd, bwd


def verify_valence_two(g: Multigraph, v: int, label: str | None = None) -> CheckReport:
    """Verify that smoothing the valence-two vertex `v` does not change
    the connected cycle-containing poset up to homotopy: the two
    comparison maps are order-preserving, their composite one way is the
    identity, the other way is dominated by the identity, and both
    posets have the same homology.
    """
    label = label or graph_label(g)
    if not g.is_connected():
        raise VerificationError("verify_valence_two: graph must be connected")
    if g.rank() < 1:
        raise VerificationError("verify_valence_two: graph must contain a cycle")
    g2, fwd, bwd = valence_two_maps(g, v)
    p, q = fwd.source, fwd.target
    data: dict = {
        "vertex": v,
        "elements_before": p.n,
        "elements_after": q.n,
    }

    # backward then forward is the identity on the smoothed poset
    round_trip_q = all(fwd(bwd(kk)) == kk for kk in q.elements)
    # forward then backward shrinks (lands at or below the start)
    dominated = all(bwd(fwd(hh)) <= hh for hh in p.elements)
    data["round_trip_identity"] = round_trip_q
    data["round_trip_dominated"] = dominated

    h_p = reduced_homology(order_complex(p))
    h_q = reduced_homology(order_complex(q))
    data["homology_before"] = h_p
    data["homology_after"] = h_q
    ok = round_trip_q and dominated and h_p == h_q
    return CheckReport(
        label,
        "valence-two-smoothing",
        "pass" if ok else "fail",
        _betti_profile(h_p),
        data,
    )


# ---------------------------------------------------------------------------
# dual generators from maximal forests
# ---------------------------------------------------------------------------


def _permutation_sign(seq) -> int:
    sign = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def _subset_flag_cycle(universe):
    """The fundamental cycle of the subdivided boundary of the simplex
    on `universe`: complete flags of proper nonempty subsets, each
    signed by the permutation of `universe` that the flag induces.

    Yields (sign, (S1, ..., S_{n-1})) with S_i of size i, as frozensets.
    """
    universe = sorted(universe)
    n = len(universe)

    def grow(flag, used, order):
        size = len(flag)
        if size == n - 1:
            rest = [x for x in universe if x not in used]
            yield _permutation_sign(order + rest), tuple(flag)
            return
        for x in universe:
            if x in used:
                continue
            new = frozenset(used | {x})
            yield from grow(flag + [new], new, order + [x])

    if n == 1:
        return
    yield from grow([], frozenset(), [])


def forest_generator_cycles(g: Multigraph, label: str | None = None):
    """One integer cycle in the top nonvanishing degree of the
    cycle-containing complex of `g` for each maximal forest.

    For a maximal forest F, the complementary edges form a set of size
    rank(g); chains of proper nonempty subsets H of that set push
    forward along H -> core(F + H) into the core poset, and the signed
    sum over complete flags is a cycle of degree rank-2.

    Returns (order complex of the x-poset, list of cycles), each cycle a
    dict mapping a simplex (tuple of vertex indices) to an integer.
    """
    _require_connected_rank(g, "forest_generator_cycles")
    p = build_poset(g, "x")
    k = order_complex(p)
    target = g.rank() - 2
    index = {}
    for i, simplex in enumerate(k.faces(target)):
        index[simplex] = i

    cycles = []
    for forest in g.maximal_forests():
        petals = sorted(set(g.edge_ids) - forest.edges)
        chain: dict = {}
        for sign, flag in _subset_flag_cycle(petals):
            images = [Subgraph(g, forest.edges | part).core().edges for part in flag]
            if len(set(images)) != len(images):
                continue  # degenerate simplex contributes nothing
            verts = [p.index(img) for img in images]
            order = tuple(sorted(verts))
            if order not in index:
                raise AssertionError("generator image missed the complex")
            total = sign * _permutation_sign(verts)
            chain[order] = chain.get(order, 0) + total
        chain = {s: c for s, c in chain.items() if c != 0}
        cycles.append(chain)
    return k, cycles


def _chain_boundary(k, target: int, chain: dict) -> dict:
    """Boundary of an integer `target`-chain, including the augmentation
    when target is 0.  Keys are faces of degree target-1 (or the empty
    tuple for the augmentation)."""
    out: dict = {}
    if target == 0:
        total = sum(chain.values())
        if total:
            out[()] = total
        return out
    for simplex, coeff in chain.items():
        for drop in range(len(simplex)):
            face = simplex[:drop] + simplex[drop + 1 :]
            sgn = -1 if drop % 2 else 1
            out[face] = out.get(face, 0) + sgn * coeff
    return {f: c for f, c in out.items() if c != 0}


def verify_forest_generators(g: Multigraph, label: str | None = None) -> CheckReport:
    """Verify that the dual cycles attached to maximal forests generate
    the top homology of the cycle-containing complex.

    Precondition: `g` connected, no separating edge, first Betti number
    at least 2.  Each cycle is checked to be closed and nonzero; then the
    rank of the span of all cycles inside the cycle group, computed over
    the integers, must equal the top Betti number.
    """
    label = label or graph_label(g)
    _require_connected_rank(g, "verify_forest_generators")
    if any(g.is_separating_edge(e) for e in g.edge_ids):
        raise VerificationError(
            "verify_forest_generators: graph must have no separating edge"
        )
    target = g.rank() - 2
    k, cycles = forest_generator_cycles(g)
    h = reduced_homology(k)
    data: dict = {
        "forests": len(cycles),
        "target_degree": target,
        "homology": h,
    }

    closed = True
    for chain in cycles:
        if not chain:
            closed = False
            break
        if _chain_boundary(k, target, chain):
            closed = False
            break
    data["cycles_closed_nonzero"] = closed
    if not closed:
        return CheckReport(label, "forest-generators", "fail", _betti_profile(h), data)

    # Span rank inside the chain group: columns of the next boundary
    # matrix span the boundaries; adjoining the cycles and comparing
    # ranks counts how many are independent in homology.
    face_idx = k.face_index(target)
    bd_entries, n_target, base_cols = boundary_entries(k, target + 1)
    joint = dict(bd_entries)
    for j, chain in enumerate(cycles):
        for simplex, coeff in chain.items():
            joint[(face_idx[simplex], base_cols + j)] = coeff
    rank_bd = snf_from_entries(bd_entries, n_target, base_cols).rank
    rank_joint = snf_from_entries(joint, n_target, base_cols + len(cycles)).rank
    span = rank_joint - rank_bd
    data["span_rank"] = span
    data["expected_rank"] = h.betti(target)
    ok = span == h.betti(target)
    return CheckReport(
        label,
        "forest-generators",
        "pass" if ok else "fail",
        _betti_profile(h),
        data,
    )


def verify_duality(g: Multigraph, label: str | None = None) -> CheckReport:
    """Check combinatorial Alexander duality between forests and non-forests.

    Inside the full subgraph poset (a homology sphere of dimension
    ``|E| - 2``), the forest part and the cycle-containing part are
    complementary, so reduced homology of one matches reduced cohomology
    of the other with a degree shift, torsion included.
    """
    label = label or graph_label(g)
    _require_connected_rank(g, "verify_duality")
    ambient = subset_lattice(g.edge_ids)
    forests = poset_elements(g, "for")
    rep = alexander_duality_check(ambient, forests, g.num_edges() - 2)
    status = "pass" if rep.ok else "fail"
    data = {
        "sphere_dim": rep.sphere_dim,
        "ambient_is_sphere": rep.hypothesis_ok,
        "degreewise_match": rep.duality_ok,
        "mismatches": rep.mismatches,
        "forest_homology": rep.sub_homology,
        "nonforest_cohomology": rep.complement_cohomology,
    }
    return CheckReport(label, "alexander-duality", status, _betti_profile(rep.sub_homology), data)


def verify_sphericity_via_core(
    g: Multigraph, kind: str = "x", label: str | None = None
) -> CheckReport:
    """Same claim as ``verify_sphericity``, established through the core poset.

    At nine or more edges the order complex of the cycle-containing poset
    is far too large to build directly, but the poset itself is small.
    This check validates, element by element, that taking cores is a
    decreasing idempotent poset endomap whose fixed set is exactly the
    core poset — the hypotheses under which a closure operator is a
    deformation retraction — and then computes exact homology on the
    small core side.  The homotopy-type claim is then decided on the
    core complex; the certificate data records that the reduction was
    checked, not assumed.
    """
    if kind not in ("x", "cx"):
        raise VerificationError("verify_sphericity_via_core supports kinds 'x' and 'cx'")
    label = label or graph_label(g)
    _require_connected_rank(g, f"verify_sphericity_via_core[{kind}]")
    core_kind = "cc" if kind == "cx" else "c"
    target = g.rank() - 2
    p = build_poset(g, kind)
    cert = closure_retraction(p, core_map(g, p, p))
    cert_ok = cert.direction in ("decreasing", "both")
    core_elements = poset_elements(g, core_kind)
    image_ok = set(cert.image.elements) == set(core_elements)
    core_poset = p.induced(core_elements)
    k = order_complex(core_poset)
    h = reduced_homology(k)
    separating = sorted(e for e in g.edge_ids if g.is_separating_edge(e))
    data = {
        "kind": kind,
        "rank": g.rank(),
        "target_degree": target,
        "separating_edges": list(separating),
        "elements": p.n,
        "core_elements": core_poset.n,
        "retraction_direction": cert.direction,
        "retraction_image_is_core": image_ok,
        "homology": h,
        "via": "core-retraction",
    }
    if not (cert_ok and image_ok):
        data["pi1"] = "not-evaluated"
        return CheckReport(
            label, f"deep-sphericity-{kind}", "fail", _betti_profile(h), data
        )

    if kind == "x" and separating:
        claim_ok = h.is_trivial()
    elif kind == "x":
        claim_ok = h.concentrated_in(target) and h.betti(target) >= 1
    else:
        claim_ok = h.concentrated_in(target)

    if not claim_ok:
        data["pi1"] = "not-evaluated"
        return CheckReport(
            label, f"deep-sphericity-{kind}", "fail", _betti_profile(h), data
        )

    status, v = _wedge_status(k, h, target)
    data["pi1"] = v
    return CheckReport(label, f"deep-sphericity-{kind}", status, _betti_profile(h), data)

"""Exact integer homology of simplicial complexes.

Everything here is computed over the integers with arbitrary precision;
no floating point is involved anywhere.  Smith normal form is done in two
phases: a sparse phase that eliminates +-1 pivots (which is almost all of
the work on boundary matrices of order complexes) and a dense textbook
phase on whatever small residue is left, which is where torsion shows up.

Homology is reduced throughout.  The chain complex is augmented with the
empty simplex in dimension -1, so a point has no homology at all and the
empty complex has a single Z in degree -1.  That convention is load-bearing:
it makes combinatorial Alexander duality degreewise exact even when one
side of the pairing is the empty poset.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd

from .poset import order_complex
from .simplicial import SimplicialComplex

PI1_TRIVIAL = "Trivial"
PI1_NONTRIVIAL = "Nontrivial"
PI1_UNKNOWN = "Unknown"

_TIETZE_MAX_PASSES = 1000
_TIETZE_MAX_LETTERS = 500_000


@dataclass(frozen=True)
class SNFResult:
    rank: int
    factors: tuple

    def torsion(self):
        return tuple(f for f in self.factors if f > 1)


def smith_normal_form(matrix):
    """Smith normal form data of an integer matrix.

    Accepts any nested sequence (or numpy array) of integers.  Returns the
    rank and the full tuple of invariant factors d1 | d2 | ... | dr, the
    ones included.

    >>> smith_normal_form([[1, 0], [0, 1]]).factors
    (1, 1)
    >>> smith_normal_form([[2, 0], [0, 3]]).factors
    (1, 6)
    >>> smith_normal_form([[0, 0], [0, 0]])
    SNFResult(rank=0, factors=())
    """
    entries = {}
    nrows = 0
    ncols = 0
    for i, row in enumerate(matrix):
        nrows += 1
        width = 0
        for j, v in enumerate(row):
            width += 1
            v = int(v)
            if v:
                entries[(i, j)] = v
        ncols = max(ncols, width)
    return snf_from_entries(entries, nrows, ncols)


def snf_from_entries(entries, nrows, ncols):
    rows = {}
    cols = {}
    for (i, j), v in entries.items():
        if v == 0:
            continue
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    unit_rank = _eliminate_unit_pivots(rows, cols)
    residue = _gather_dense(rows)
    diag = _dense_snf(residue)
    factors = [1] * unit_rank + diag
    factors = _normalize_chain(factors)
    return SNFResult(rank=len(factors), factors=tuple(factors))


def _eliminate_unit_pivots(rows, cols):
    """Eliminate +-1 pivots by integer row operations; returns pivot count.

    Rows are visited shortest first through a lazy heap; within a row the
    unit entry in the thinnest column is chosen.  Short pivot rows keep
    fill-in small, which is what makes the big order complexes tractable.
    A row popped without a unit entry re-enters the heap whenever a later
    elimination touches it, so no unit pivot is ever missed.
    """
    heap = [(len(r), i) for i, r in sorted(rows.items())]
    heapq.heapify(heap)
    rank = 0
    while heap:
        length, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None or len(row) != length:
            continue
        pivot = None
        for j, v in row.items():
            if v == 1 or v == -1:
                key = (len(cols[j]), j)
                if pivot is None or key < pivot[0]:
                    pivot = (key, j, v)
        if pivot is None:
            continue
        _, c, pv = pivot
        pivot_row = rows.pop(r)
        for j in pivot_row:
            cols[j].discard(r)
            if not cols[j]:
                del cols[j]
        for i in sorted(cols.get(c, ())):
            other = rows[i]
            mult = other[c] * pv  # other[c] / pv since pv is a unit
            for j, v in pivot_row.items():
                if j == c:
                    continue
                new = other.get(j, 0) - mult * v
                if new:
                    if j not in other:
                        cols.setdefault(j, set()).add(i)
                    other[j] = new
                else:
                    if j in other:
                        del other[j]
                        cols[j].discard(i)
                        if not cols[j]:
                            del cols[j]
            del other[c]
            if not other:
                del rows[i]
            else:
                heapq.heappush(heap, (len(other), i))
        if c in cols:
            del cols[c]
        rank += 1
    return rank


def _gather_dense(rows):
    if not rows:
        return []
    row_ids = sorted(rows)
    col_ids = sorted({j for r in rows.values() for j in r})
    cpos = {j: k for k, j in enumerate(col_ids)}
    dense = [[0] * len(col_ids) for _ in row_ids]
    for a, i in enumerate(row_ids):
        for j, v in rows[i].items():
            dense[a][cpos[j]] = v
    return dense


def _dense_snf(a):
    """Diagonal of the Smith form of a small dense integer matrix."""
    if not a:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while True:
        # find the entry of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        while True:
            # clear the pivot column
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            if dirty:
                continue
            # clear the pivot row
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block
            offender = None
            d = a[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % d:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, n):
                a[t][j] += a[offender][j]
        diag.append(abs(a[t][t]))
        t += 1
        if t == m or t == n:
            break
    return [d for d in diag if d]


def _normalize_chain(factors):
    factors = [abs(f) for f in factors if f]
    changed = True
    while changed:
        changed = False
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                if factors[j] % factors[i]:
                    g = gcd(factors[i], factors[j])
                    factors[i], factors[j] = g, factors[i] * factors[j] // g
                    changed = True
    factors.sort()
    return factors


# -- reduced homology -------------------------------------------------------


@dataclass(frozen=True)
class HomologyResult:
    """Reduced homology, one (betti, torsion) pair per degree.

    Degrees with betti 0 and no torsion are dropped, so equality of results
    is equality of the nonzero part.  Degree -1 appears only for the empty
    complex.
    """

    groups: tuple  # ((degree, betti, torsion-tuple), ...)

    @classmethod
    def from_dicts(cls, betti, torsion):
        degs = sorted(set(betti) | set(torsion))
        groups = []
        for d in degs:
            b = betti.get(d, 0)
            t = tuple(torsion.get(d, ()))
            if b or t:
                groups.append((d, b, t))
        return cls(tuple(groups))

    @classmethod
    def sphere(cls, n):
        return cls(((n, 1, ()),)) if n >= -1 else cls(())

    @classmethod
    def trivial(cls):
        return cls(())

    def betti(self, d):
        for deg, b, _ in self.groups:
            if deg == d:
                return b
        return 0

    def torsion(self, d):
        for deg, _, t in self.groups:
            if deg == d:
                return t
        return ()

    def degrees(self):
        return tuple(d for d, _, _ in self.groups)

    def is_trivial(self):
        return not self.groups

    def has_torsion(self):
        return any(t for _, _, t in self.groups)

    def max_degree(self):
        return max((d for d, _, _ in self.groups), default=None)

    def concentrated_in(self, degree):
        """True when every nonzero group sits in the given degree, torsion-free."""
        return all(d == degree and not t for d, _, t in self.groups)

    def to_json_obj(self, top_degree=None):
        if top_degree is None:
            top_degree = self.max_degree()
            top_degree = -1 if top_degree is None else top_degree
        return [
            {"degree": d, "betti": self.betti(d), "torsion": list(self.torsion(d))}
            for d in range(-1, top_degree + 1)
        ]

    def __str__(self):
        if not self.groups:
            return "0"
        parts = []
        for d, b, t in self.groups:
            term = f"H~{d}="
            bits = []
            if b:
                bits.append(f"Z^{b}" if b > 1 else "Z")
            bits.extend(f"Z/{f}" for f in t)
            parts.append(term + "+".join(bits))
        return ", ".join(parts)


_homology_cache = {}
_HOMOLOGY_CACHE_MAX = 128


def boundary_entries(k, d):
    """Sparse entries of the boundary map C_d -> C_(d-1), augmented at d=0."""
    faces = k.faces(d)
    entries = {}
    if d == 0:
        for j in range(len(faces)):
            entries[(0, j)] = 1
        return entries, 1, len(faces)
    lower = k.face_index(d - 1)
    for j, face in enumerate(faces):
        for t in range(len(face)):
            sub = face[:t] + face[t + 1 :]
            entries[(lower[sub], j)] = (-1) ** t
    return entries, len(lower), len(faces)


def reduced_homology(k):
    """Reduced integer homology of a complex, all degrees at once.

    >>> triangle = SimplicialComplex.from_facets("abc", [(0, 1), (1, 2), (0, 2)])
    >>> str(reduced_homology(triangle))
    'H~1=Z'
    """
    key = k.structure_key()
    cached = _homology_cache.get(key)
    if cached is not None:
        return cached

    top = k.dim
    counts = {-1: 1}
    ranks = {}
    torsion_at = {}
    for d in range(0, top + 1):
        counts[d] = k.num_faces(d)
        entries, nr, nc = boundary_entries(k, d)
        res = snf_from_entries(entries, nr, nc)
        ranks[d] = res.rank
        torsion_at[d] = res.torsion()
    ranks[top + 1] = 0
    torsion_at[top + 1] = ()

    betti = {}
    torsion = {}
    for d in range(-1, top + 1):
        b = counts[d] - ranks.get(d, 0) - ranks[d + 1]
        t = torsion_at[d + 1]
        if b:
            betti[d] = b
        if t:
            torsion[d] = t
    result = HomologyResult.from_dicts(betti, torsion)

    # Euler characteristic bookkeeping check, reduced form
    chi_faces = sum((-1) ** d * c for d, c in counts.items())
    chi_betti = sum((-1) ** d * b for d, b in betti.items())
    assert chi_faces == chi_betti, "rank bookkeeping out of balance"

    if len(_homology_cache) >= _HOMOLOGY_CACHE_MAX:
        _homology_cache.clear()
    _homology_cache[key] = result
    return result


def reduced_cohomology(k):
    """Reduced integer cohomology via universal coefficients.

    Free parts agree with homology degreewise; the torsion of H^d is the
    torsion of reduced H_(d-1).
    """
    h = reduced_homology(k)
    betti = {}
    torsion = {}
    for d, b, t in h.groups:
        if b:
            betti[d] = b
        if t:
            torsion[d + 1] = t
    return HomologyResult.from_dicts(betti, torsion)


def poset_homology(p):
    return reduced_homology(order_complex(p))


# -- contractibility and fundamental group ----------------------------------


def cone_point(p):
    """An element of p comparable to every other element, if one exists."""
    for x in p.elements:
        if len(p.comparables(x)) == p.n:
            return x
    return None


def pi1_triviality(k):
    """Three-valued triviality test for the fundamental group.

    Builds the edge-path presentation on a spanning tree of the 1-skeleton
    (one generator per non-tree edge, one relator per 2-simplex) and tries
    to kill it by bounded Tietze simplification.  Returns "Trivial" only if
    the presentation empties; "Nontrivial" only if reduced H_1 is nonzero;
    otherwise "Unknown".  Never returns "Trivial" when H_1 is nonzero.
    """
    if not k.is_connected() and len(k.vertices) > 1:
        raise ComplexConnectivityError("pi1 needs a connected complex")
    h = reduced_homology(k)
    h1_nonzero = bool(h.betti(1)) or bool(h.torsion(1))

    verts = range(len(k.vertices))
    adj = {v: [] for v in verts}
    for u, v in k.faces(1):
        adj[u].append(v)
        adj[v].append(u)
    tree = set()
    if len(k.vertices):
        seen = {0}
        queue = [0]
        while queue:
            u = queue.pop()
            for v in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    tree.add((min(u, v), max(u, v)))
                    queue.append(v)

    gens = {}
    for idx, (u, v) in enumerate(e for e in k.faces(1) if e not in tree):
        gens[(min(u, v), max(u, v))] = idx + 1  # signed letters, so 1-based

    def letter(u, v):
        """Generator letter for the directed edge u -> v; 0 for tree edges."""
        key = (min(u, v), max(u, v))
        g = gens.get(key)
        if g is None:
            return 0
        return g if u < v else -g

    relators = []
    for a, b, c in k.faces(2):
        word = [letter(a, b), letter(b, c), letter(c, a)]
        word = tuple(x for x in word if x)
        relators.append(word)

    alive = set(gens.values())
    if not alive:
        return PI1_TRIVIAL
    outcome = _tietze_trivialize(relators, alive)
    if outcome:
        assert not h1_nonzero, "presentation emptied but H1 is nonzero"
        return PI1_TRIVIAL
    if h1_nonzero:
        return PI1_NONTRIVIAL
    return PI1_UNKNOWN


class ComplexConnectivityError(ValueError):
    pass


def _free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    # cyclic reduction
    while len(out) > 1 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


def _tietze_trivialize(relators, alive):
    """True if the presentation reduces to no generators, no relators."""
    relators = [w for w in (_free_reduce(r) for r in relators) if w]
    for _ in range(_TIETZE_MAX_PASSES):
        if not alive:
            return True
        if sum(len(r) for r in relators) > _TIETZE_MAX_LETTERS:
            return False
        progress = False

        # kill generators forced trivial by a length-one relator
        short = [r for r in relators if len(r) == 1]
        if short:
            dead = {abs(r[0]) for r in short}
            alive -= dead
            relators = [
                w
                for w in (
                    _free_reduce(tuple(x for x in r if abs(x) not in dead))
                    for r in relators
                )
                if w
            ]
            progress = True
            continue

        # find a relator using some generator exactly once and eliminate it
        best = None
        for ri, r in enumerate(relators):
            counts = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for g, c in counts.items():
                if c == 1 and g in alive:
                    if best is None or len(r) < len(relators[best[0]]):
                        best = (ri, g)
                    break
        if best is not None:
            ri, g = best
            r = relators[ri]
            pos = next(i for i, x in enumerate(r) if abs(x) == g)
            # rotate so the g-letter is first, then g = inverse of the rest
            rot = r[pos:] + r[:pos]
            if rot[0] == g:
                replacement = tuple(-x for x in reversed(rot[1:]))
            else:
                replacement = tuple(rot[1:])
            new_relators = []
            for i, w in enumerate(relators):
                if i == ri:
                    continue
                out = []
                for x in w:
                    if x == g:
                        out.extend(replacement)
                    elif x == -g:
                        out.extend(-y for y in reversed(replacement))
                    else:
                        out.append(x)
                red = _free_reduce(tuple(out))
                if red:
                    new_relators.append(red)
            relators = new_relators
            alive.discard(g)
            progress = True

        if not progress:
            return not alive and not relators
    return False


def pi1_field(k):
    """Componentwise pi1 verdict; tolerates empty and disconnected complexes.

    "Trivial" when every component certifies trivial, "Nontrivial" when any
    component does, otherwise "Unknown".
    """
    if len(k.vertices) == 0:
        return PI1_TRIVIAL
    verdicts = []
    for comp in k.components():
        piece = k.full_subcomplex(comp)
        verdicts.append(pi1_triviality(piece))
    if all(v == PI1_TRIVIAL for v in verdicts):
        return PI1_TRIVIAL
    if any(v == PI1_NONTRIVIAL for v in verdicts):
        return PI1_NONTRIVIAL
    return PI1_UNKNOWN


CONTRACTIBLE_CONE = "cone"
CONTRACTIBLE_CERTIFIED = "homology-and-pi1"
HOMOLOGY_TRIVIAL_ONLY = "homology-only"
NOT_CONTRACTIBLE = "obstructed"


def certify_contractible(p):
    """Best-effort contractibility certificate for a poset's order complex.

    Returns one of the four module constants.  A cone point settles it
    outright; otherwise trivial reduced homology plus a trivial pi1 verdict
    upgrades "homology-only" to a genuine certificate.  The empty poset is
    not contractible (its order complex is the empty complex).
    """
    if p.n and cone_point(p) is not None:
        return CONTRACTIBLE_CONE
    k = order_complex(p)
    if not reduced_homology(k).is_trivial():
        return NOT_CONTRACTIBLE
    if pi1_field(k) == PI1_TRIVIAL:
        return CONTRACTIBLE_CERTIFIED
    return HOMOLOGY_TRIVIAL_ONLY


def is_contractible_certificate(status):
    return status in (CONTRACTIBLE_CONE, CONTRACTIBLE_CERTIFIED)


# -- Alexander duality -------------------------------------------------------


@dataclass(frozen=True)
class DualityReport:
    sphere_dim: int
    hypothesis_ok: bool
    duality_ok: bool
    ambient: HomologyResult
    sub_homology: HomologyResult
    complement_cohomology: HomologyResult
    mismatches: tuple

    @property
    def ok(self):
        return self.hypothesis_ok and self.duality_ok


def alexander_duality_check(p, q_elements, sphere_dim):
    """Check H~_i(q) == H~^(n-i-1)(p minus q) degreewise, torsion included.

    `p` must realize a homology n-sphere for the stated n; that hypothesis
    is verified first and reported separately from duality failures, so a
    bad ambient poset is never mistaken for a duality violation.
    """
    q_elements = list(q_elements)
    q_set = set(q_elements)
    for x in q_elements:
        p.index(x)
    ambient = poset_homology(p)
    hypothesis_ok = ambient == HomologyResult.sphere(sphere_dim)

    q_poset = p.induced(q_elements)
    rest = [x for x in p.elements if x not in q_set]
    c_poset = p.induced(rest)
    sub_h = poset_homology(q_poset)
    comp_hh = reduced_cohomology(order_complex(c_poset))

    mismatches = []
    for i in range(-1, sphere_dim + 1):
        j = sphere_dim - i - 1
        if sub_h.betti(i) != comp_hh.betti(j) or sub_h.torsion(i) != comp_hh.torsion(j):
            mismatches.append(
                (
                    i,
                    (sub_h.betti(i), sub_h.torsion(i)),
                    (comp_hh.betti(j), comp_hh.torsion(j)),
                )
            )
    return DualityReport(
        sphere_dim=sphere_dim,
        hypothesis_ok=hypothesis_ok,
        duality_ok=not mismatches,
        ambient=ambient,
        sub_homology=sub_h,
        complement_cohomology=comp_hh,
        mismatches=tuple(mismatches),
    )


# -- sparse triplet text format ----------------------------------------------


def read_triplet_matrix(text):
    """Parse "rows cols" on the first line, then "i j value" entries.

    Blank lines and lines starting with '#' are ignored.  Returns
    (entries, nrows, ncols) suitable for snf_from_entries.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise ValueError("empty matrix text")
    first = lines[0].split()
    if len(first) != 2:
        raise ValueError("first line must be: nrows ncols")
    nrows, ncols = int(first[0]), int(first[1])
    entries = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad triplet line: {ln!r}")
        i, j, v = int(parts[0]), int(parts[1]), int(parts[2])
        if not (0 <= i < nrows and 0 <= j < ncols):
            raise ValueError(f"entry ({i},{j}) outside {nrows}x{ncols}")
        if v:
            entries[(i, j)] = entries.get((i, j), 0) + v
    return entries, nrows, ncols

"""Finite abstract simplicial complexes.

A complex is stored as its full face list, stratified by dimension.  Faces
are tuples of vertex indices in increasing index order; the labels live in
a separate vertex list.  The augmented chain complex used for reduced
homology treats the empty simplex as the unique face of dimension -1, so
the empty complex is the (-1)-sphere rather than nothing at all.
"""

from __future__ import annotations

import json
from itertools import combinations


class ComplexError(ValueError):
    """A face family that is not closed, or a malformed face."""


class SimplicialComplex:
    __slots__ = ("vertices", "_faces", "_index")

    def __init__(self, vertices, faces):
        """`faces`: iterable of tuples of vertex indices; must be closed.

        Every vertex in `vertices` must occur as a 0-face.  Faces may be
        given in any order and need not be sorted internally.
        """
        self.vertices = list(vertices)
        n = len(self.vertices)
        by_dim = {}
        seen = set()
        for face in faces:
            face = tuple(sorted(face))
            if not face:
                continue
            if len(set(face)) != len(face):
                raise ComplexError(f"repeated vertex in face {face}")
            if face[0] < 0 or face[-1] >= n:
                raise ComplexError(f"face {face} uses an undeclared vertex")
            if face in seen:
                continue
            seen.add(face)
            by_dim.setdefault(len(face) - 1, []).append(face)
        for d, fl in by_dim.items():
            fl.sort()
        # closure: every facet of every face must be present
        for d in sorted(by_dim, reverse=True):
            if d == 0:
                continue
            lower = seen
            for face in by_dim[d]:
                for k in range(len(face)):
                    sub = face[:k] + face[k + 1 :]
                    if sub not in lower:
                        raise ComplexError(f"face {face} missing facet {sub}")
        missing = [i for i in range(n) if (i,) not in seen]
        if missing:
            raise ComplexError(f"vertex {missing[0]} has no 0-face")
        self._faces = {d: tuple(fl) for d, fl in sorted(by_dim.items())}
        self._index = None

    @classmethod
    def from_facets(cls, vertices, facets):
        faces = set()
        for facet in facets:
            facet = tuple(sorted(facet))
            for k in range(1, len(facet) + 1):
                faces.update(combinations(facet, k))
        return cls(vertices, faces)

    @classmethod
    def empty(cls):
        return cls([], [])

    # -- queries -----------------------------------------------------------

    @property
    def dim(self):
        return max(self._faces, default=-1)

    def faces(self, d):
        return self._faces.get(d, ())

    def num_faces(self, d=None):
        if d is not None:
            return len(self._faces.get(d, ()))
        return sum(len(fl) for fl in self._faces.values())

    def all_faces(self):
        for d in sorted(self._faces):
            yield from self._faces[d]

    def facets(self):
        # a face is maximal iff it is a facet of no (d+1)-face
        non_top = set()
        for d, fl in self._faces.items():
            if d == 0:
                continue
            for face in fl:
                for k in range(len(face)):
                    non_top.add(face[:k] + face[k + 1 :])
        out = [f for fl in self._faces.values() for f in fl if f not in non_top]
        return sorted(out, key=lambda f: (len(f), f))

    def face_index(self, d):
        if self._index is None:
            self._index = {}
        if d not in self._index:
            self._index[d] = {f: i for i, f in enumerate(self.faces(d))}
        return self._index[d]

    def euler_characteristic(self):
        """Unreduced Euler characteristic (empty simplex excluded)."""
        return sum((-1) ** d * len(fl) for d, fl in self._faces.items())

    def components(self):
        """Vertex index sets of the connected components of the 1-skeleton."""
        n = len(self.vertices)
        parent = list(range(n))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for u, v in self.faces(1):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        comps = {}
        for v in range(n):
            comps.setdefault(find(v), set()).add(v)
        return sorted(comps.values(), key=min)

    def is_connected(self):
        return len(self.components()) == 1

    def full_subcomplex(self, vertex_indices):
        """All faces whose vertices lie in the given index set."""
        keep = sorted(set(vertex_indices))
        pos = {v: i for i, v in enumerate(keep)}
        kset = set(keep)
        faces = []
        for face in self.all_faces():
            if kset.issuperset(face):
                faces.append(tuple(pos[v] for v in face))
        return SimplicialComplex([self.vertices[v] for v in keep], faces)

    # -- serialization -------------------------------------------------------

    def to_json_obj(self):
        from .poset import _label_json

        return {
            "vertices": [_label_json(v) for v in self.vertices],
            "facets": [list(f) for f in self.facets()],
        }

    def to_json(self):
        return json.dumps(self.to_json_obj(), sort_keys=True)

    def structure_key(self):
        """A hashable fingerprint: equal keys mean identical face lists."""
        return tuple((d, self._faces[d]) for d in sorted(self._faces))

    def __repr__(self):
        counts = ",".join(f"{len(self._faces[d])}" for d in sorted(self._faces))
        return f"SimplicialComplex(dim={self.dim}, faces=[{counts}])"


def barycentric_subdivision(k):
    """The order complex of the face poset of k.

    Vertices of the subdivision are the nonempty faces of k (labelled by
    their vertex-label tuples); simplices are chains of faces under strict
    inclusion.  Homotopy equivalent to k, which the homology tests lean on.
    """
    faces = list(k.all_faces())
    labels = [tuple(k.vertices[v] for v in f) for f in faces]
    n = len(faces)
    sets = [set(f) for f in faces]
    by_dim = {}
    for i, f in enumerate(faces):
        by_dim.setdefault(len(f), []).append(i)
    up = [[] for _ in range(n)]
    dims = sorted(by_dim)
    for di, d in enumerate(dims):
        for i in by_dim[d]:
            for d2 in dims[di + 1 :]:
                for j in by_dim[d2]:
                    if sets[i] < sets[j]:
                        up[i].append(j)
    chains = []

    def grow(chain, last):
        chains.append(tuple(sorted(chain)))
        for j in up[last]:
            chain.append(j)
            grow(chain, j)
            chain.pop()

    for i in range(n):
        grow([i], i)
    return SimplicialComplex(labels, chains)


def nerve(cover):
    """Nerve of a family of complexes over a shared vertex label universe.

    A subset of the cover spans a simplex when the members share at least
    one face; since all members are subcomplexes of a common complex this
    is the same as sharing a vertex.
    """
    return nerve_with_audit(cover)[0]


def nerve_with_audit(cover):
    """Nerve plus, per nerve face, whether the intersection is contractible.

    The audit maps each nerve face (a tuple of cover indices) to the reduced
    homology triviality of the intersection complex, which is the hypothesis
    a nerve comparison needs.  Full homotopy contractibility is not decided
    here; callers needing more should inspect the intersections themselves.
    """
    from .homology import reduced_homology

    k = len(cover)
    # compare faces by vertex labels so different index orders agree
    face_sets = []
    for c in cover:
        face_sets.append({tuple(sorted(c.vertices[v] for v in f)) for f in c.all_faces()})
    nerve_faces = []
    audit = {}

    frontier = [(i,) for i in range(k) if face_sets[i]]
    inters = {(i,): face_sets[i] for i in range(k) if face_sets[i]}
    while frontier:
        nerve_faces.extend(frontier)
        nxt = []
        for face in frontier:
            common = inters[face]
            for j in range(face[-1] + 1, k):
                shared = common & face_sets[j]
                if shared:
                    bigger = face + (j,)
                    inters[bigger] = shared
                    nxt.append(bigger)
        frontier = nxt

    for face in nerve_faces:
        shared = inters[face]
        verts = sorted({v for f in shared for v in f})
        pos = {v: i for i, v in enumerate(verts)}
        complex_faces = [tuple(pos[v] for v in f) for f in shared]
        sub = SimplicialComplex(verts, complex_faces)
        audit[face] = reduced_homology(sub).is_trivial()

    nerve_complex = SimplicialComplex(list(range(k)), nerve_faces)
    return nerve_complex, audit

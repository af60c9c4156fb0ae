"""Level-function certificates of poset contractibility.

A certificate partitions the elements of a finite poset into levels
0, 1, ..., k.  It is *valid* when

* the subposet at level 0 is certified contractible (in practice it is
  the set of all elements comparable to some center, whose order
  complex is a cone),
* each later level is an antichain, and
* for every element x at a level above 0, the full subcomplex of the
  order complex spanned by the elements *below x's level* that are
  comparable to x — the descending complex of x — is certified
  contractible.

Building the order complex level by level then attaches each new vertex
along a contractible complex, so a valid certificate proves the whole
order complex contractible.  Validity is decided by certified
contractibility of small complexes (cone points, or trivial homology
plus trivial fundamental group), never by heuristics; a certificate
whose checks all pass but whose poset has nonzero reduced homology
would indicate a bug and raises AssertionError.

The search routine looks for a certificate with at most three levels,
taking level 0 to be the comparables of some center element.  Within
that family and the given budget the search is exhaustive, so a `None`
result with `exhausted=True` is a proof that no such certificate
exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .homology import (
    certify_contractible,
    is_contractible_certificate,
    reduced_homology,
)
from .poset import FinitePoset, order_complex

DEFAULT_BUDGET = 4096


@dataclass(frozen=True)
class LevelCertificate:
    """An ordered partition of a poset's elements into levels."""

    levels: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "levels", tuple(tuple(level) for level in self.levels)
        )

    def value_of(self):
        values = {}
        for i, level in enumerate(self.levels):
            for x in level:
                values[x] = i
        return values

    def to_json_obj(self):
        from .poset import _label_json

        return {"levels": [[_label_json(x) for x in level] for level in self.levels]}


@dataclass(frozen=True)
class CertificateCheck:
    """Outcome of validating one level certificate against one poset."""

    ok: bool
    reason: str
    element_status: dict = field(default_factory=dict)

    def to_json_obj(self):
        from .poset import _label_json

        return {
            "ok": self.ok,
            "reason": self.reason,
            "element_status": {
                str(_label_json(x)): s for x, s in self.element_status.items()
            },
        }


def descending_complex(p: FinitePoset, k, values, x):
    """Full subcomplex of Δ(p) on the elements comparable to x whose
    level is strictly below x's.  `k` must be order_complex(p)."""
    cutoff = values[x]
    keep = [
        p.index(y)
        for y in p.elements
        if y != x and values[y] < cutoff and p.comparable(x, y)
    ]
    return k.full_subcomplex(sorted(keep))


def _certified(k) -> bool:
    return is_contractible_certificate(certify_contractible_complex(k))


def certify_contractible_complex(k):
    """Contractibility status of a bare simplicial complex.

    Wraps the poset-level certificate logic for use on subcomplexes that
    do not come from a poset: empty or disconnected complexes are
    obstructed unless every component certifies, a cone is immediate.
    """
    from .homology import (
        CONTRACTIBLE_CERTIFIED,
        CONTRACTIBLE_CONE,
        HOMOLOGY_TRIVIAL_ONLY,
        NOT_CONTRACTIBLE,
        PI1_TRIVIAL,
        pi1_field,
    )

    if k.num_faces(0) == 0:
        return NOT_CONTRACTIBLE
    cone = _cone_vertex(k)
    if cone is not None:
        return CONTRACTIBLE_CONE
    h = reduced_homology(k)
    if not h.is_trivial():
        return NOT_CONTRACTIBLE
    if pi1_field(k) == PI1_TRIVIAL:
        return CONTRACTIBLE_CERTIFIED
    return HOMOLOGY_TRIVIAL_ONLY


def _cone_vertex(k):
    """A vertex joined to every face of `k`, or None.

    Checked directly on facets: v is a cone vertex iff every facet
    together with v is again a face.
    """
    n = k.num_faces(0)
    verts = [f[0] for f in k.faces(0)]
    facets = k.facets()
    for v in verts:
        good = True
        for facet in facets:
            if v in facet:
                continue
            merged = tuple(sorted(set(facet) | {v}))
            if merged not in k.face_index(len(merged) - 1):
                good = False
                break
        if good:
            return v
    return None


def verify_certificate(p: FinitePoset, cert: LevelCertificate) -> CertificateCheck:
    """Validate a level certificate against a poset.

    Raises AssertionError if every local check passes while the order
    complex has nonzero reduced homology (impossible unless the
    implementation is wrong).
    """
    if p.n == 0:
        return CertificateCheck(False, "empty poset has no certificate")
    flat = [x for level in cert.levels for x in level]
    if sorted(map(p.index, flat)) != list(range(p.n)):
        return CertificateCheck(False, "levels do not partition the elements")
    if not cert.levels or not cert.levels[0]:
        return CertificateCheck(False, "level 0 is empty")

    k = order_complex(p)
    values = cert.value_of()
    status: dict = {}

    base = p.induced(list(cert.levels[0]))
    base_status = certify_contractible(base)
    if not is_contractible_certificate(base_status):
        return CertificateCheck(
            False, f"level 0 is not certified contractible ({base_status})"
        )

    for i, level in enumerate(cert.levels[1:], start=1):
        for a, b in combinations(level, 2):
            if p.comparable(a, b):
                return CertificateCheck(
                    False, f"level {i} is not an antichain ({a!r} ~ {b!r})"
                )

    for level in cert.levels[1:]:
        for x in level:
            dk = descending_complex(p, k, values, x)
            s = certify_contractible_complex(dk)
            status[x] = s
            if not is_contractible_certificate(s):
                return CertificateCheck(
                    False,
                    f"descending complex of {x!r} not certified ({s})",
                    status,
                )

    h = reduced_homology(k)
    assert h.is_trivial(), (
        "level certificate validated but homology is nonzero; "
        "this indicates a defect in the certificate checker"
    )
    return CertificateCheck(True, "all levels verified", status)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a certificate search.

    `certificate` is None when none was found; `exhausted` tells whether
    the search space was fully explored (making the failure a proof that
    no certificate of the searched shape exists).
    """

    certificate: LevelCertificate | None
    exhausted: bool
    centers_tried: int

    @property
    def found(self) -> bool:
        return self.certificate is not None


def search_certificate(
    p: FinitePoset, max_levels: int = 3, budget: int = DEFAULT_BUDGET
) -> SearchResult:
    """Search for a valid certificate with at most `max_levels` levels
    whose level 0 is the set of comparables of some element.

    Centers are tried from largest comparable-set to smallest; for three
    levels, candidate middle levels are enumerated from largest to
    smallest over the elements whose first-level descending complex is
    already contractible.  At most `budget` middle-level subsets are
    examined per center.  Deterministic throughout.
    """
    if max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    if p.n == 0:
        return SearchResult(None, True, 0)

    k = order_complex(p)
    exhausted = True
    order = sorted(
        p.elements, key=lambda x: (-len(p.comparables(x)), p.index(x))
    )

    def antichain(elems) -> bool:
        return not any(p.comparable(a, b) for a, b in combinations(elems, 2))

    for tried, center in enumerate(order, start=1):
        level0 = p.comparables(center)
        rest = sorted(
            (x for x in p.elements if x not in set(level0)), key=p.index
        )
        if not rest:
            return SearchResult(LevelCertificate((level0,)), exhausted, tried)
        if max_levels < 2:
            continue

        values = {x: 0 for x in level0}
        for x in rest:
            values[x] = 1
        link_ok = {
            x: _certified(descending_complex(p, k, values, x)) for x in rest
        }

        if antichain(rest) and all(link_ok.values()):
            cert = LevelCertificate((level0, rest))
            if verify_certificate(p, cert).ok:
                return SearchResult(cert, exhausted, tried)
        if max_levels < 3:
            continue

        candidates = [x for x in rest if link_ok[x]]
        examined = 0
        done = False
        for size in range(len(candidates), 0, -1):
            for middle in combinations(candidates, size):
                examined += 1
                if examined > budget:
                    exhausted = False
                    done = True
                    break
                if not antichain(middle):
                    continue
                top = [x for x in rest if x not in set(middle)]
                if not top or not antichain(top):
                    continue
                cert = LevelCertificate((level0, middle, tuple(top)))
                if verify_certificate(p, cert).ok:
                    return SearchResult(cert, exhausted, tried)
            if done:
                break

    return SearchResult(None, exhausted, len(order))

"""Abstract simplicial complexes and the explicit combinatorics used as an
oracle: face enumeration, barycentric subdivision as an order complex,
links, Euler characteristic, and formal sums of faces.

Faces are sorted tuples of integer vertex ids; ``()`` is the empty face.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable, Mapping

from .barycentric import FVector
from .errors import FaceNotInComplex, FormatError

Face = tuple

MAX_FACET_SIZE = 24


def _canon(face: Iterable[int]) -> Face:
    return tuple(sorted(set(face)))


def _all_subsets(face: Face):
    for r in range(len(face) + 1):
        yield from combinations(face, r)


def _maximal_only(cands: set[Face]) -> list[Face]:
    by_vertex: dict[int, list[frozenset]] = {}
    kept = []
    for f in sorted(cands, key=len, reverse=True):
        fs = frozenset(f)
        pool = min((by_vertex.get(v, []) for v in f), key=len)
        if any(fs < g for g in pool):
            continue
        kept.append(f)
        for v in f:
            by_vertex.setdefault(v, []).append(fs)
    return kept


class SimplicialComplex:
    """A finite abstract simplicial complex given by its facets.

    Non-maximal faces passed in are dropped. ``SimplicialComplex([])`` is the
    complex whose only face is the empty face (dimension -1).
    """

    def __init__(self, facets: Iterable[Iterable[int]], *, maximal: bool = False):
        cands = {_canon(f) for f in facets}
        for f in cands:
            if len(f) > MAX_FACET_SIZE:
                raise ValueError(f"facet with {len(f)} vertices exceeds the guard of {MAX_FACET_SIZE}")
            if any((not isinstance(v, int)) or v < 0 for v in f):
                raise ValueError(f"vertex ids must be nonnegative integers: {f}")
        cands.discard(())
        # maximal=True: caller guarantees no facet contains another
        self.facets: frozenset[Face] = frozenset(cands if maximal else _maximal_only(cands))

    @cached_property
    def faces(self) -> frozenset[Face]:
        out = {()}
        for f in self.facets:
            out.update(_all_subsets(f))
        return frozenset(out)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def __contains__(self, face) -> bool:
        return _canon(face) in self.faces

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex({sorted(self.facets)})"

    def sorted_facets(self) -> list[list[int]]:
        return [list(f) for f in sorted(self.facets, key=lambda f: (len(f), f))]

    def to_json(self) -> dict:
        return {"facets": self.sorted_facets()}


def simplex(n_vertices: int) -> SimplicialComplex:
    """The closed simplex on vertices ``0 .. n_vertices-1``."""
    return SimplicialComplex([range(n_vertices)])


def simplex_boundary(n_vertices: int) -> SimplicialComplex:
    return SimplicialComplex(combinations(range(n_vertices), n_vertices - 1))


def load_complex(source) -> SimplicialComplex:
    """Read ``{"facets": [[...], ...]}`` from a path, JSON text, or parsed dict."""
    if isinstance(source, Mapping):
        doc = source
    else:
        text = Path(source).read_text() if not str(source).lstrip().startswith("{") else str(source)
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"complex file is not valid JSON: {exc}") from exc
    facets = doc.get("facets") if isinstance(doc, Mapping) else None
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise FormatError('complex document needs "facets": a list of vertex lists')
    for f in facets:
        if not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in f):
            raise FormatError(f"vertex ids must be nonnegative integers, got {f}")
    return SimplicialComplex(facets)


def bundled_corpus() -> dict[str, SimplicialComplex]:
    """The small test complexes shipped with the package, keyed by name."""
    root = resources.files("fvsub") / "data" / "corpus"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out[entry.name[:-5]] = load_complex(json.loads(entry.read_text()))
    return out


def f_vector(X: SimplicialComplex) -> FVector:
    counts = Counter(len(f) for f in X.faces)
    return FVector(tuple(counts.get(k, 0) for k in range(X.dim + 2)))


def face_poset_labels(X: SimplicialComplex) -> list[Face]:
    """Nonempty faces of X in the order used as vertex ids of X'."""
    return sorted((f for f in X.faces if f), key=lambda f: (len(f), f))


def barycentric_subdivide(X: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the nonempty faces of X.

    Vertex ``k`` of the result is ``face_poset_labels(X)[k]``; facets are the
    maximal chains, one per ordering of the vertices of each facet of X.
    """
    labels = face_poset_labels(X)
    index = {f: k for k, f in enumerate(labels)}
    new_facets = []
    for facet in X.facets:
        for order in permutations(facet):
            chain = [index[_canon(order[: r + 1])] for r in range(len(order))]
            new_facets.append(chain)
    return SimplicialComplex(new_facets, maximal=True)


def interior_face_count(i: int, j: int) -> int:
    """Count chains ``s_0 < ... < s_j`` of nonempty faces of the i-simplex that
    end at the full simplex, i.e. j-faces interior to its subdivision."""
    if i < -1 or j < -1:
        raise ValueError("face dimensions start at -1")
    if i == -1 or j == -1:
        return int(i == j)
    full = frozenset(range(i + 1))

    def chains_below(top: frozenset, length: int) -> int:
        # chains of given length of nonempty proper subsets below `top`, ending anywhere
        if length == 0:
            return 1
        total = 0
        items = sorted(top)
        for r in range(1, len(items)):
            for sub in combinations(items, r):
                total += chains_below(frozenset(sub), length - 1)
        return total

    return chains_below(full, j)


def link(X: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = _canon(sigma)
    if sigma not in X.faces:
        raise FaceNotInComplex(sigma)
    s = set(sigma)
    return SimplicialComplex(
        tau for tau in X.faces if not s.intersection(tau) and _canon(s.union(tau)) in X.faces
    )


def euler_char(X: SimplicialComplex) -> int:
    return sum((-1) ** (len(f) - 1) for f in X.faces if f)


class FormalSum:
    """Integer-weighted sum of faces; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], int] | Iterable = ()):
        acc: dict[Face, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((f, 1) for f in terms)
        for face, c in items:
            key = _canon(face)
            acc[key] = acc.get(key, 0) + int(c)
        self.terms: dict[Face, int] = {f: c for f, c in acc.items() if c}

    @classmethod
    def of_complex(cls, X: SimplicialComplex) -> FormalSum:
        """All faces of X with weight 1, the empty face included."""
        return cls({f: 1 for f in X.faces})

    def __getitem__(self, face) -> int:
        return self.terms.get(_canon(face), 0)

    def __add__(self, other: FormalSum) -> FormalSum:
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, 0) + c
        return FormalSum(out)

    def __neg__(self) -> FormalSum:
        return FormalSum({f: -c for f, c in self.terms.items()})

    def __sub__(self, other: FormalSum) -> FormalSum:
        return self + (-other)

    def __rmul__(self, k: int) -> FormalSum:
        return FormalSum({f: k * c for f, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        body = ", ".join(f"{f}: {c}" for f, c in sorted(self.terms.items(), key=lambda fc: (len(fc[0]), fc[0])))
        return f"FormalSum({{{body}}})"


def iota_sum(s: FormalSum) -> FormalSum:
    """Linear map sending a face of dimension k to ``(-1)^(k+1)`` times the sum
    of all its subfaces, the empty face included."""
    out: dict[Face, int] = {}
    for face, c in s.terms.items():
        sign = -c if len(face) % 2 else c
        for tau in _all_subsets(face):
            out[tau] = out.get(tau, 0) + sign
    return FormalSum(out)


def euler_link_form(X: SimplicialComplex) -> FormalSum:
    """Closed form of ``iota_sum`` of the all-ones sum: each face tau weighted by
    ``(-1)^dim(tau) (chi(link tau) - 1)``."""
    return FormalSum(
        {tau: (-1) ** (len(tau) - 1) * (euler_char(link(X, tau)) - 1) for tau in X.faces}
    )


@dataclass(frozen=True)
class ManifoldSpec:
    """A triangulated homology r-manifold and its boundary subcomplex.

    ``boundary=None`` means the boundary is empty, contributing nothing at all
    (not even the empty face).
    """

    complex: SimplicialComplex
    boundary: SimplicialComplex | None
    r: int

    def __post_init__(self):
        if self.boundary is not None and not self.boundary.faces <= self.complex.faces:
            raise ValueError("boundary is not a subcomplex of the manifold")


def manifold_identity_check(m: ManifoldSpec) -> tuple[bool, FormalSum]:
    """Compare ``iota_sum([M])`` with ``(-1)^(r+1) ([M] - [dM])``; returns the difference as witness."""
    whole = FormalSum.of_complex(m.complex)
    rim = FormalSum.of_complex(m.boundary) if m.boundary is not None else FormalSum()
    expected = (-1) ** (m.r + 1) * (whole - rim)
    diff = iota_sum(whole) - expected
    return not diff, diff


def random_complex(rng, max_vertices: int = 7, max_dim: int = 4, max_facets: int = 4) -> SimplicialComplex:
    """A random complex on at most ``max_vertices`` vertices with dimension at most ``max_dim``.

    ``rng`` is a :class:`random.Random`.
    """
    nv = rng.randint(min(2, max_vertices), max_vertices)
    facets = []
    for _ in range(rng.randint(1, max_facets)):
        size = rng.randint(1, min(nv, max_dim + 1))
        facets.append(rng.sample(range(nv), size))
    return SimplicialComplex(facets)

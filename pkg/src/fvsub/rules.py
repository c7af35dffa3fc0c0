"""General subdivision methods given by model subdivisions of each simplex.

A model of dimension k lists its vertices as exact barycentric coordinates in
the standard k-simplex, with the carrier (support of the coordinates) stored
explicitly, plus its facets as lists of vertex ids.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from pathlib import Path
from typing import Mapping

from .barycentric import FVector
from .complexes import FormalSum, SimplicialComplex, f_vector, iota_sum
from .errors import (
    DimensionExceeded,
    FormatError,
    NonDominantEigenvalue,
    UnsupportedDimension,
    ValidationError,
)
from .exactalg import Polynomial, RationalMatrix, frac_str, mat_power_apply


@dataclass(frozen=True)
class ModelVertex:
    id: str
    carrier: tuple[int, ...]
    coords: tuple[Fraction, ...]


@dataclass(frozen=True)
class ModelSubdivision:
    k: int
    vertices: tuple[ModelVertex, ...]
    facets: tuple[tuple[str, ...], ...]

    @cached_property
    def by_id(self) -> dict[str, ModelVertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def faces(self) -> frozenset[frozenset[str]]:
        out = {frozenset()}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                out.update(frozenset(c) for c in combinations(f, r))
        return frozenset(out)

    def carrier_of(self, face) -> frozenset[int]:
        out: set[int] = set()
        for vid in face:
            out.update(self.by_id[vid].carrier)
        return frozenset(out)

    def is_identity(self) -> bool:
        return len(self.vertices) == self.k + 1 and len(self.facets) == 1

    def as_complex(self) -> tuple[SimplicialComplex, dict[int, frozenset[int]]]:
        """Integer-labelled copy of the model and the carrier of each vertex."""
        ids = sorted(self.by_id)
        index = {vid: n for n, vid in enumerate(ids)}
        cx = SimplicialComplex([[index[v] for v in f] for f in self.facets])
        return cx, {index[vid]: frozenset(self.by_id[vid].carrier) for vid in ids}


@dataclass(frozen=True)
class SubdivisionRule:
    name: str
    max_dim: int
    models: tuple[ModelSubdivision, ...]

    def model(self, k: int) -> ModelSubdivision:
        if not 0 <= k <= self.max_dim:
            raise DimensionExceeded(f"rule {self.name!r} has no model in dimension {k}")
        return self.models[k]

    @property
    def nontrivial_dimension(self) -> int | None:
        """Smallest model dimension that is not the identity, or None."""
        return next((m.k for m in self.models if not m.is_identity()), None)


@dataclass(frozen=True)
class Finding:
    k: int | None
    check: str
    message: str

    def __str__(self) -> str:
        where = "rule" if self.k is None else f"model k={self.k}"
        return f"{where}: {self.check}: {self.message}"


@dataclass(frozen=True)
class TransitionMatrix:
    matrix: RationalMatrix
    rule_name: str
    n: int


# ---------------------------------------------------------------------------
# Construction and serialization
# ---------------------------------------------------------------------------

def _unit(k: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(a == i)) for a in range(k + 1))


def _identity_model(k: int) -> ModelSubdivision:
    verts = tuple(ModelVertex(str(i), (i,), _unit(k, i)) for i in range(k + 1))
    return ModelSubdivision(k, verts, (tuple(v.id for v in verts),))


def _barycentric_model(k: int) -> ModelSubdivision:
    verts = []
    for r in range(1, k + 2):
        for sub in combinations(range(k + 1), r):
            coords = tuple(Fraction(1, r) if a in sub else Fraction(0) for a in range(k + 1))
            verts.append(ModelVertex("-".join(map(str, sub)), sub, coords))
    facets = []
    for order in permutations(range(k + 1)):
        facets.append(tuple("-".join(map(str, sorted(order[: r + 1]))) for r in range(k + 1)))
    return ModelSubdivision(k, tuple(verts), tuple(facets))


def _stellar_model(k: int) -> ModelSubdivision:
    verts = [ModelVertex(str(i), (i,), _unit(k, i)) for i in range(k + 1)]
    verts.append(ModelVertex("c", tuple(range(k + 1)), tuple(Fraction(1, k + 1) for _ in range(k + 1))))
    facets = tuple(tuple(str(i) for i in range(k + 1) if i != skip) + ("c",) for skip in range(k + 1))
    return ModelSubdivision(k, tuple(verts), facets)


def builtin_rule(kind: str, max_dim: int, n: int | None = None) -> SubdivisionRule:
    """Built-in methods: ``"barycentric"``, ``"trivial"``, or ``"stellar_top"``
    (identity below dimension ``n``, the cone from the barycenter over the
    boundary in dimension ``n``). ``"stellar_top(3)"`` is accepted as shorthand.
    """
    m = re.fullmatch(r"stellar_top\((\d+)\)", kind)
    if m:
        kind, n = "stellar_top", int(m.group(1))
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    if kind == "barycentric":
        return SubdivisionRule("barycentric", max_dim, tuple(_barycentric_model(k) for k in range(max_dim + 1)))
    if kind == "trivial":
        return SubdivisionRule("trivial", max_dim, tuple(_identity_model(k) for k in range(max_dim + 1)))
    if kind == "stellar_top":
        if n is None or n < 1:
            raise ValueError("stellar_top needs a dimension n >= 1")
        if max_dim > n:
            raise UnsupportedDimension(f"stellar_top({n}) has no compatible model above dimension {n}")
        models = tuple(_identity_model(k) if k < n else _stellar_model(k) for k in range(max_dim + 1))
        return SubdivisionRule(f"stellar_top({n})", max_dim, models)
    raise ValueError(f"unknown built-in rule {kind!r}")


def rule_to_json(rule: SubdivisionRule) -> dict:
    return {
        "name": rule.name,
        "max_dim": rule.max_dim,
        "models": [
            {
                "k": m.k,
                "vertices": [
                    {"id": v.id, "carrier": list(v.carrier), "coords": [frac_str(c) for c in v.coords]}
                    for v in m.vertices
                ],
                "facets": [list(f) for f in m.facets],
            }
            for m in rule.models
        ],
    }


def _parse_coord(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(f"coordinate must be a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad coordinate {x!r}") from exc


def parse_rule(document, validate: bool = True) -> SubdivisionRule:
    """Build a rule from a parsed dict, JSON text, or a file path, then validate it."""
    if isinstance(document, Mapping):
        doc = document
    else:
        text = str(document)
        if not text.lstrip().startswith("{"):
            text = Path(text).read_text()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"rule file is not valid JSON: {exc}") from exc
    try:
        name = str(doc["name"])
        max_dim = int(doc["max_dim"])
        raw_models = doc["models"]
        by_k: dict[int, ModelSubdivision] = {}
        for rm in raw_models:
            k = int(rm["k"])
            verts = tuple(
                ModelVertex(str(v["id"]), tuple(int(c) for c in v["carrier"]), tuple(_parse_coord(c) for c in v["coords"]))
                for v in rm["vertices"]
            )
            facets = tuple(tuple(str(x) for x in f) for f in rm["facets"])
            if k in by_k:
                raise FormatError(f"duplicate model for k={k}")
            by_k[k] = ModelSubdivision(k, verts, facets)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed rule document: {exc!r}") from exc
    missing = [k for k in range(max_dim + 1) if k not in by_k]
    if missing:
        raise ValidationError([Finding(None, "completeness", f"no model for dimensions {missing}")])
    rule = SubdivisionRule(name, max_dim, tuple(by_k[k] for k in range(max_dim + 1)))
    if validate:
        findings = validate_rule(rule)
        if findings:
            raise ValidationError(findings)
    return rule


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [r[:] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] / m[c][c]
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return det


def _coord_facets(model: ModelSubdivision) -> frozenset[frozenset[tuple]]:
    return frozenset(frozenset(model.by_id[v].coords for v in f) for f in model.facets)


def _check_vertices(m: ModelSubdivision) -> list[Finding]:
    out = []
    k = m.k
    seen_ids, seen_coords = set(), set()
    for v in m.vertices:
        if v.id in seen_ids:
            out.append(Finding(k, "vertices", f"duplicate vertex id {v.id!r}"))
        seen_ids.add(v.id)
        if len(v.coords) != k + 1:
            out.append(Finding(k, "vertices", f"vertex {v.id!r} has {len(v.coords)} coordinates, expected {k + 1}"))
            continue
        if v.coords in seen_coords:
            out.append(Finding(k, "vertices", f"vertex {v.id!r} repeats a position"))
        seen_coords.add(v.coords)
        if any(c < 0 for c in v.coords) or sum(v.coords) != 1:
            out.append(Finding(k, "vertices", f"vertex {v.id!r} coordinates are not nonnegative summing to 1"))
        support = tuple(i for i, c in enumerate(v.coords) if c)
        if tuple(sorted(set(v.carrier))) != support:
            out.append(Finding(k, "carrier", f"vertex {v.id!r} carrier {list(v.carrier)} differs from support {list(support)}"))
    for i in range(k + 1):
        if _unit(k, i) not in seen_coords:
            out.append(Finding(k, "vertices", f"original vertex {i} is missing"))
    for f in m.facets:
        if len(f) != k + 1 or len(set(f)) != k + 1:
            out.append(Finding(k, "facets", f"facet {list(f)} does not have {k + 1} distinct vertices"))
        unknown = [x for x in f if x not in seen_ids]
        if unknown:
            out.append(Finding(k, "facets", f"facet {list(f)} names unknown vertices {unknown}"))
    return out


def _check_volume(m: ModelSubdivision) -> list[Finding]:
    total = Fraction(0)
    for f in m.facets:
        det = abs(_det([list(m.by_id[v].coords) for v in f]))
        if det == 0:
            return [Finding(m.k, "volume", f"facet {list(f)} is degenerate")]
        total += det
    if total != 1:
        return [Finding(m.k, "volume", f"facet volumes sum to {frac_str(total)} of the simplex, expected 1")]
    return []


def _check_symmetric(m: ModelSubdivision) -> list[Finding]:
    # adjacent transpositions generate the full symmetric group
    coords = frozenset(v.coords for v in m.vertices)
    facets = _coord_facets(m)
    out = []
    for i in range(m.k):
        def swap(c, i=i):
            c = list(c)
            c[i], c[i + 1] = c[i + 1], c[i]
            return tuple(c)

        if frozenset(swap(c) for c in coords) != coords:
            out.append(Finding(m.k, "permutation", f"vertex set not invariant under swapping {i},{i + 1}"))
        elif frozenset(frozenset(swap(c) for c in f) for f in facets) != facets:
            out.append(Finding(m.k, "permutation", f"facets not invariant under swapping {i},{i + 1}"))
    return out


def _check_boundary(m: ModelSubdivision, lower: ModelSubdivision) -> list[Finding]:
    """Restriction of model m to every face of size lower.k+1 must be the lower model."""
    out = []
    want_v = frozenset(v.coords for v in lower.vertices)
    want_f = _coord_facets(lower)
    for face in combinations(range(m.k + 1), lower.k + 1):
        fs = set(face)
        inside = {v.id: tuple(v.coords[a] for a in face) for v in m.vertices if set(v.carrier) <= fs}
        if frozenset(inside.values()) != want_v:
            out.append(Finding(m.k, "boundary", f"vertices on face {list(face)} differ from model k={lower.k}"))
            continue
        got_f = set()
        for f in m.facets:
            part = [inside[x] for x in f if x in inside]
            if len(part) == lower.k + 1:
                got_f.add(frozenset(part))
        if frozenset(got_f) != want_f:
            out.append(Finding(m.k, "boundary", f"facets on face {list(face)} differ from model k={lower.k}"))
    return out


def validate_rule(rule: SubdivisionRule) -> list[Finding]:
    """Check carriers, volume cover, permutation invariance and face compatibility."""
    findings: list[Finding] = []
    if len(rule.models) != rule.max_dim + 1 or any(m.k != k for k, m in enumerate(rule.models)):
        return [Finding(None, "completeness", "models must be given for k = 0 .. max_dim in order")]
    structurally_ok = {}
    for m in rule.models:
        local = _check_vertices(m)
        if not local:
            local = _check_volume(m) + _check_symmetric(m)
        structurally_ok[m.k] = not local
        findings.extend(local)
    for m in rule.models:
        if not structurally_ok[m.k]:
            continue
        for lower in rule.models[: m.k]:
            if structurally_ok[lower.k]:
                findings.extend(_check_boundary(m, lower))
    return findings


# ---------------------------------------------------------------------------
# Counting, application, limits
# ---------------------------------------------------------------------------

def transition_matrix(rule: SubdivisionRule, n: int) -> TransitionMatrix:
    """(n+1)x(n+1) matrix indexed by dimensions -1..n-1: entry (i, j) counts the
    j-faces of model i whose carrier is the whole i-simplex."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n - 1 > rule.max_dim:
        raise DimensionExceeded(f"rule {rule.name!r} has models only up to dimension {rule.max_dim}")
    rows = [[1] + [0] * n]
    for i in range(n):
        m = rule.models[i]
        full = frozenset(range(i + 1))
        row = [0] * (n + 1)
        for face in m.faces:
            if face and m.carrier_of(face) == full:
                row[len(face)] += 1
        rows.append(row)
    return TransitionMatrix(RationalMatrix(rows, offset=-1), rule.name, n)


def apply_rule_labeled(rule: SubdivisionRule, X: SimplicialComplex) -> tuple[SimplicialComplex, list[tuple]]:
    """Subdivide X; vertex ``k`` of the result is labelled by ``labels[k]``, a
    tuple of (original vertex, barycentric coordinate) pairs over its carrier."""
    if X.dim > rule.max_dim:
        raise DimensionExceeded(f"complex of dimension {X.dim} exceeds rule max_dim {rule.max_dim}")
    raw_facets = []
    for sigma in X.facets:
        m = rule.models[len(sigma) - 1]
        key = {
            v.id: tuple((sigma[a], v.coords[a]) for a in v.carrier)
            for v in m.vertices
        }
        raw_facets.extend([key[x] for x in f] for f in m.facets)
    labels = sorted({k for f in raw_facets for k in f})
    index = {k: n for n, k in enumerate(labels)}
    if not raw_facets:
        return SimplicialComplex([]), []
    return SimplicialComplex([[index[k] for k in f] for f in raw_facets]), labels


def apply_rule(rule: SubdivisionRule, X: SimplicialComplex) -> SimplicialComplex:
    return apply_rule_labeled(rule, X)[0]


def subdivided_fvector_rule(rule: SubdivisionRule, f: FVector, n: int = 1) -> FVector:
    t = transition_matrix(rule, f.d).matrix
    return FVector(tuple(int(x) for x in mat_power_apply(f.entries, t, n)))


def limit_poly_rule(rule: SubdivisionRule, d: int) -> tuple[Polynomial, Polynomial, Fraction]:
    """Limit polynomials of a rule acting on (d-1)-dimensional complexes.

    ``q`` is the left eigenvector of the transition matrix for its bottom
    diagonal entry, with last coordinate 1, read as ``sum_k v_k t^k``; ``p``
    is its reversal. The bottom entry must strictly exceed all others.
    """
    t = transition_matrix(rule, d).matrix
    diag = t.diagonal()
    lam = diag[-1]
    if any(x >= lam for x in diag[:-1]):
        raise NonDominantEigenvalue(
            f"bottom diagonal entry {frac_str(lam)} of rule {rule.name!r} at d={d} is not strictly dominant"
        )
    size = d + 1
    v = [Fraction(0)] * size
    v[-1] = Fraction(1)
    for j in range(size - 2, -1, -1):
        s = sum((v[i] * t[i, j] for i in range(j + 1, size)), Fraction(0))
        v[j] = s / (lam - diag[j])
    q = Polynomial(v)
    return q.reversed(d), q, lam


def check_rule_symmetry(rule: SubdivisionRule, d: int) -> tuple[bool, Polynomial]:
    _, q, _ = limit_poly_rule(rule, d)
    diff = q - q.compose(Polynomial([-1, -1])) * (-1) ** d
    return diff.is_zero(), diff


def b_rule(model: ModelSubdivision, s: FormalSum) -> FormalSum:
    """Send each face tau of the model simplex to the sum of the faces of the
    subdivided simplex carried by tau; faces use ``model.as_complex()`` labels."""
    cx, carriers = model.as_complex()
    fibers: dict[tuple, list[tuple]] = {}
    for rho in cx.faces:
        c = set()
        for v in rho:
            c.update(carriers[v])
        fibers.setdefault(tuple(sorted(c)), []).append(rho)
    out: dict[tuple, int] = {}
    for tau, coef in s.terms.items():
        for rho in fibers.get(tau, ()):
            out[rho] = out.get(rho, 0) + coef
    return FormalSum(out)


def verify_iota_commutation_rule(rule: SubdivisionRule, n: int) -> tuple[bool, FormalSum]:
    """Compare ``iota(b(sigma))`` with ``b(iota(sigma))`` for the closed n-simplex."""
    m = rule.model(n)
    sigma = FormalSum.of_complex(SimplicialComplex([range(n + 1)]))
    diff = iota_sum(b_rule(m, sigma)) - b_rule(m, iota_sum(sigma))
    return not diff, diff


def rule_fvector_check(rule: SubdivisionRule, X: SimplicialComplex) -> tuple[FVector, FVector]:
    """(explicit f-vector of the subdivided complex, f-vector predicted by the matrix)."""
    f = f_vector(X)
    return f_vector(apply_rule(rule, X)), subdivided_fvector_rule(rule, f)

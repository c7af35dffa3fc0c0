"""Exact rational polynomials and matrices, triangular eigendecomposition,
Sturm real-root isolation, Stirling numbers and finite differences.

Scalars are :class:`fractions.Fraction` throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NoSignChange,
    NonTriangular,
    RepeatedEigenvalue,
    ZeroPolynomial,
)

Rational = Fraction

DEFAULT_TOL = Fraction(1, 10**12)


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, "p/q" strings and floats (via their repr) to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    """Serialize a rational as a decimal-free "p/q" string (integers as "p")."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Dense univariate polynomial with Fraction coefficients.

    ``coeffs[k]`` is the coefficient of ``t**k``. Trailing zeros are stripped,
    so the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def from_roots(cls, roots) -> Polynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # arithmetic --------------------------------------------------------
    def __add__(self, other) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> Polynomial:
        c = as_fraction(scalar)
        return Polynomial(a / c for a in self.coeffs)

    def __pow__(self, n: int) -> Polynomial:
        out = Polynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - dq + i] -= c * b
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # evaluation & transforms ---------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reversed(self, n: int | None = None) -> Polynomial:
        """Return ``t**n * self(1/t)``; ``n`` defaults to the degree."""
        n = self.degree if n is None else n
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds reversal length {n}")
        padded = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Polynomial(reversed(padded))

    def monic(self) -> Polynomial:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic form")
        return self / self.leading

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(frac_str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            body = frac_str(a) if (a != 1 or k == 0) else ""
            if body and mono:
                body = f"{body}*{mono}" if a.denominator == 1 else f"({body})*{mono}"
            else:
                body = body or mono
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def square_free_part(g: Polynomial) -> Polynomial:
    if g.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    return (g // poly_gcd(g, g.derivative())).monic()


def square_free_decomposition(g: Polynomial) -> list[Polynomial]:
    """Yun's algorithm: monic square-free, pairwise coprime ``a_1, a_2, ...``
    with ``g = lc(g) * prod a_i**i``. Entry ``i-1`` holds ``a_i``.
    """
    if g.is_zero():
        raise ZeroPolynomial("square-free decomposition of the zero polynomial")
    f = g.monic()
    if f.degree == 0:
        return []
    d1 = f.derivative()
    a0 = poly_gcd(f, d1)
    b = f // a0
    c = d1 // a0
    d = c - b.derivative()
    out = []
    while b.degree > 0:
        a = poly_gcd(b, d)
        out.append(a)
        b = b // a
        c = d // a
        d = c - b.derivative()
    return out


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

class RationalMatrix:
    """Dense row-major matrix of Fractions.

    ``offset`` records the logical index of storage row/column 0; matrices
    indexed by face dimension use ``offset=-1`` so that ``m.at(i, j)`` takes
    dimensions directly.
    """

    __slots__ = ("rows", "cols", "entries", "offset")

    def __init__(self, entries: Sequence[Sequence], offset: int = 0):
        grid = tuple(tuple(as_fraction(x) for x in row) for row in entries)
        if grid and any(len(r) != len(grid[0]) for r in grid):
            raise DimensionMismatch("ragged matrix rows")
        self.entries = grid
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        self.offset = offset

    @classmethod
    def identity(cls, n: int, offset: int = 0) -> RationalMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], offset)

    @classmethod
    def diag(cls, values: Sequence, offset: int = 0) -> RationalMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], offset)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def at(self, i: int, j: int) -> Fraction:
        """Entry by logical index."""
        return self.entries[i - self.offset][j - self.offset]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def diagonal(self) -> list[Fraction]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_lower_triangular(self) -> bool:
        return all(self.entries[i][j] == 0 for i in range(self.rows) for j in range(i + 1, self.cols))

    def transpose(self) -> RationalMatrix:
        return RationalMatrix([self.column(j) for j in range(self.cols)], self.offset)

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return RationalMatrix(
            [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self.entries],
            self.offset,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[frac_str(x) for x in r] for r in self.entries]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.to_strings()!r}, offset={self.offset})"

    def pretty(self) -> str:
        cells = self.to_strings()
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def vec_mat(v: Sequence, m: RationalMatrix) -> list[Fraction]:
    if len(v) != m.rows:
        raise DimensionMismatch(f"vector of length {len(v)} against {m.rows}x{m.cols} matrix")
    out = [Fraction(0)] * m.cols
    for a, row in zip(v, m.entries):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] += a * b
    return out


def mat_power_apply(v: Sequence, m: RationalMatrix, n: int) -> list[Fraction]:
    """Return the row vector ``v @ m**n`` by repeated multiplication."""
    if n < 0:
        raise ValueError("power must be nonnegative")
    if len(v) != m.rows or not m.is_square():
        raise DimensionMismatch(f"vector of length {len(v)} against {m.rows}x{m.cols} matrix")
    out = [as_fraction(x) for x in v]
    for _ in range(n):
        out = vec_mat(out, m)
    return out


@dataclass(frozen=True)
class EigenData:
    P: RationalMatrix
    D: tuple[Fraction, ...]
    Pinv: RationalMatrix


def lt_eigendecompose(m: RationalMatrix) -> EigenData:
    """Exact diagonalization ``m = P diag(D) Pinv`` of a lower-triangular matrix.

    Column j of P is the right eigenvector for ``D[j]`` with a 1 in entry j;
    row j of Pinv is the matching left eigenvector, also with a 1 in entry j.
    A repeated diagonal value is accepted only when the matrix stays
    diagonalizable; the free eigenvector component is then set to 0.
    """
    if not m.is_square():
        raise DimensionMismatch("eigendecomposition needs a square matrix")
    if not m.is_lower_triangular():
        raise NonTriangular("matrix has a nonzero entry above the diagonal")
    n = m.rows
    a = m.entries
    diag = m.diagonal()

    P = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        lam = diag[j]
        P[j][j] = Fraction(1)
        # (m - lam) v = 0 solved downward from row j+1
        for i in range(j + 1, n):
            s = sum((a[i][k] * P[k][j] for k in range(j, i) if a[i][k]), Fraction(0))
            if diag[i] == lam:
                if s:
                    raise RepeatedEigenvalue(
                        f"eigenvalue {frac_str(lam)} at positions {j} and {i} is defective"
                    )
                continue
            P[i][j] = s / (lam - diag[i])

    # forward substitution for the inverse of the unit lower-triangular P
    Pinv = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        Pinv[j][j] = Fraction(1)
        for i in range(j + 1, n):
            Pinv[i][j] = -sum((P[i][k] * Pinv[k][j] for k in range(j, i) if P[i][k]), Fraction(0))

    return EigenData(RationalMatrix(P, m.offset), tuple(diag), RationalMatrix(Pinv, m.offset))


# ---------------------------------------------------------------------------
# Real roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootReport:
    """Isolating intervals are open, ``lo < root < hi``, with ``g(lo)*g(hi) < 0``
    for the corresponding square-free factor."""

    isolating_intervals: list[tuple[Fraction, Fraction]]
    approximations: list[float]
    multiplicities: list[int]
    count_real: int
    degree: int
    exact: list[Fraction] = field(default_factory=list)


def sturm_sequence(g: Polynomial) -> list[Polynomial]:
    seq = [g, g.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _variations(seq: Sequence[Polynomial], x) -> int:
    signs = [s for s in (p.sign_at(x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(g: Polynomial) -> Fraction:
    """Cauchy bound: every root has absolute value strictly below this."""
    lc = abs(g.leading)
    return 1 + max((abs(c) / lc for c in g.coeffs[:-1]), default=Fraction(0))


def _split_point(g: Polynomial, lo: Fraction, hi: Fraction) -> Fraction:
    # midpoint unless it is a root; then walk through k/m fractions
    m = 2
    while True:
        for k in range(1, m):
            x = lo + (hi - lo) * Fraction(k, m)
            if g(x) != 0:
                return x
        m += 1


def isolate_real_roots(g: Polynomial, tol=DEFAULT_TOL) -> RootReport:
    """Isolate every distinct real root of ``g`` with Sturm sequences.

    Works on the square-free part; multiplicities come from Yun's
    decomposition. No interval endpoint is ever a root.
    """
    if g.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if g.degree == 0:
        return RootReport([], [], [], 0, 0)
    s = square_free_part(g)
    seq = sturm_sequence(s)
    bound = root_bound(s)
    stack = [(-bound, bound)]
    intervals = []
    while stack:
        lo, hi = stack.pop()
        count = _variations(seq, lo) - _variations(seq, hi)
        if count == 0:
            continue
        if count == 1:
            intervals.append((lo, hi))
            continue
        mid = _split_point(s, lo, hi)
        stack.append((lo, mid))
        stack.append((mid, hi))
    intervals.sort()

    factors = square_free_decomposition(g)
    mults = []
    for lo, hi in intervals:
        for i, a in enumerate(factors):
            if a.degree > 0 and a.sign_at(lo) * a.sign_at(hi) < 0:
                mults.append(i + 1)
                break
        else:  # pragma: no cover - would mean Yun's factors disagree with s
            raise ArithmeticError("root not attributed to any square-free factor")

    exact = [refine_root(s, iv, tol) for iv in intervals]
    return RootReport(
        isolating_intervals=intervals,
        approximations=[float(x) for x in exact],
        multiplicities=mults,
        count_real=len(intervals),
        degree=g.degree,
        exact=exact,
    )


def refine_root(g: Polynomial, interval: tuple, tol=DEFAULT_TOL) -> Fraction:
    """Bisect an isolating interval until narrower than ``tol``; return the midpoint.

    Returns early, exactly, if a bisection point is itself a root.
    """
    lo, hi = (as_fraction(x) for x in interval)
    tol = as_fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    slo, shi = g.sign_at(lo), g.sign_at(hi)
    if slo == 0:
        return lo
    if shi == 0:
        return hi
    if slo == shi:
        raise NoSignChange(f"g has the same sign at {frac_str(lo)} and {frac_str(hi)}")
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        sm = g.sign_at(mid)
        if sm == 0:
            return mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# Combinatorial helpers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind via S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if n == 0 or k == 0:
        return int(n == k)
    if k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def finite_difference(seq: Callable[[int], object], order: int, at: int = 0) -> Fraction:
    """First term of the ``order``-times differenced sequence starting at ``at``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return sum(
        ((-1) ** (order - m) * comb(order, m) * as_fraction(seq(at + m)) for m in range(order + 1)),
        Fraction(0),
    )

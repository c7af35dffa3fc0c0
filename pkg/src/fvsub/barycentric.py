"""The barycentric transition matrix, its eigendata and the limit polynomials.

Every length-(d+1) vector or (d+1)x(d+1) matrix here is indexed by face
dimension ``-1 .. d-1``; storage position is ``dimension + 1``.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .errors import FactorizationTimeout, RealRootDeficit
from .exactalg import (
    DEFAULT_TOL,
    EigenData,
    Polynomial,
    RationalMatrix,
    frac_str,
    isolate_real_roots,
    lt_eigendecompose,
    mat_power_apply,
    stirling2,
    vec_mat,
)


@dataclass(frozen=True)
class FVector:
    """Face counts ``(f_-1, f_0, ..., f_{d-1})`` of a (d-1)-dimensional complex."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries:
            raise ValueError("an f-vector has at least the entry f_-1")
        if any(x < 0 for x in self.entries):
            raise ValueError("face counts are nonnegative")

    @property
    def d(self) -> int:
        return len(self.entries) - 1

    def at(self, i: int) -> int:
        """Number of i-dimensional faces, ``i >= -1``."""
        return self.entries[i + 1]

    def polynomial(self) -> Polynomial:
        """f-polynomial ``sum_j f_{j-1} t^(d-j)``."""
        return Polynomial(reversed(self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def lambda_entry(i: int, j: int) -> int:
    """Number of j-faces interior to the barycentric subdivision of the i-simplex."""
    if i < -1 or j < -1:
        raise ValueError("face dimensions start at -1")
    if i == -1 or j == -1:
        return int(i == j)
    if j > i:
        return 0
    return math.factorial(j + 1) * stirling2(i + 1, j + 1)


@lru_cache(maxsize=None)
def lambda_matrix(d: int) -> RationalMatrix:
    if d < 1:
        raise ValueError("d must be at least 1")
    dims = range(-1, d)
    return RationalMatrix([[lambda_entry(i, j) for j in dims] for i in dims], offset=-1)


@lru_cache(maxsize=None)
def eigendata(d: int) -> EigenData:
    return lt_eigendecompose(lambda_matrix(d))


def subdivided_fvector(f: FVector | Sequence[int], n: int) -> FVector:
    f = f if isinstance(f, FVector) else FVector(tuple(f))
    out = mat_power_apply(f.entries, lambda_matrix(f.d), n)
    return FVector(tuple(int(x) for x in out))


def normalized_polys(f: FVector | Sequence[int], n: int) -> tuple[Polynomial, Polynomial]:
    """``(p^X_n, q^X_n)``: the f-polynomial of the n-th subdivision divided by
    ``(d!)**n``, and its coefficient reversal."""
    f = f if isinstance(f, FVector) else FVector(tuple(f))
    fn = subdivided_fvector(f, n)
    scale = Fraction(1, math.factorial(f.d) ** n)
    q = Polynomial(x * scale for x in fn.entries)
    return q.reversed(f.d), q


@dataclass(frozen=True)
class LimitData:
    d: int
    p: Polynomial
    q: Polynomial
    last_row: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "p": [frac_str(c) for c in self.p.coeffs],
            "q": [frac_str(c) for c in self.q.coeffs],
            "p_approx": [float(c) for c in self.p.coeffs],
            "q_approx": [float(c) for c in self.q.coeffs],
            "last_row": [frac_str(c) for c in self.last_row],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


@lru_cache(maxsize=None)
def limit_polys(d: int) -> LimitData:
    """Limit polynomials read off the last row of ``P_d^{-1}``.

    ``q_d`` takes the row entry at storage index k as the coefficient of t^k;
    ``p_d`` is its reversal of length d.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    row = eigendata(d).Pinv.row(d)
    q = Polynomial(row)
    return LimitData(d=d, p=q.reversed(d), q=q, last_row=tuple(row))


def scaling_constant(f: FVector | Sequence[int]) -> Fraction:
    """Last entry of ``f P_d``: the factor relating ``q^X_infinity`` to ``q_d``."""
    f = f if isinstance(f, FVector) else FVector(tuple(f))
    return vec_mat(f.entries, eigendata(f.d).P)[-1]


@dataclass(frozen=True)
class LimitRoots:
    d: int
    roots_p: list[Fraction]
    roots_q: list[Fraction]
    intervals_p: list[tuple[Fraction, Fraction]]
    intervals_q: list[tuple[Fraction, Fraction]]
    deficit: bool

    def csv_rows(self) -> list[tuple]:
        rows = []
        for kind, roots, ivs in (("p", self.roots_p, self.intervals_p), ("q", self.roots_q, self.intervals_q)):
            for r, (lo, hi) in zip(roots, ivs):
                rows.append((self.d, kind, frac_str(lo), frac_str(hi), f"{float(r):.12g}"))
        return rows


def limit_roots(d: int, tol=DEFAULT_TOL) -> LimitRoots:
    """Refined real roots of ``p_d`` and ``q_d``, each sorted ascending.

    Emits :class:`RealRootDeficit` (a warning) if either polynomial has fewer
    real roots than its degree.
    """
    if d < 2:
        raise ValueError("limit roots need d >= 2")
    lim = limit_polys(d)
    rp = isolate_real_roots(lim.p, tol)
    rq = isolate_real_roots(lim.q, tol)
    deficit = sum(rp.multiplicities) < lim.p.degree or sum(rq.multiplicities) < lim.q.degree
    if deficit:
        warnings.warn(f"limit polynomials for d={d} are not real-rooted", RealRootDeficit, stacklevel=2)
    return LimitRoots(d, rp.exact, rq.exact, rp.isolating_intervals, rq.isolating_intervals, deficit)


def check_symmetry(d: int) -> tuple[bool, Polynomial]:
    """Check ``q_d(t) == (-1)^d q_d(-1-t)``; the witness is the difference."""
    q = limit_polys(d).q
    mirrored = q.compose(Polynomial([-1, -1])) * (-1) ** d
    diff = q - mirrored
    return diff.is_zero(), diff


def _factor_small(n: int, bound: int) -> tuple[dict[int, int], int]:
    factors: dict[int, int] = {}
    p = 2
    while p <= bound and p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    return factors, n


def factor_denominator(n: int, bound: int = 10**6) -> tuple[dict[int, int], bool]:
    """Trial division up to ``bound``; returns (factorization, square_free).

    A cofactor left over is classified by a primality test and a perfect-square
    test; anything still undecided raises :class:`FactorizationTimeout`.
    """
    factors, rest = _factor_small(n, bound)
    square_free = all(e == 1 for e in factors.values())
    if rest > 1:
        if rest <= bound * bound or sympy.isprime(rest):
            factors[rest] = factors.get(rest, 0) + 1
        elif math.isqrt(rest) ** 2 == rest:
            r = math.isqrt(rest)
            factors[r] = factors.get(r, 0) + 2
            square_free = False
        elif rest < bound**3:
            # composite, no factor <= bound, not a square: product of two distinct primes
            factors[rest] = 1
        else:
            raise FactorizationTimeout(
                f"cofactor {rest} of {n} is beyond the trial-division bound",
                partial=(factors, rest),
            )
        square_free = square_free and all(e == 1 for e in factors.values())
    return factors, square_free


def denominator_report(d: int, bound: int = 10**6) -> list[dict]:
    """Reduced denominators of the ``q_d`` coefficients, factored, with a square-free flag."""
    out = []
    done = []
    for k, c in enumerate(limit_polys(d).q.coeffs):
        try:
            factors, sq = factor_denominator(c.denominator, bound)
        except FactorizationTimeout as exc:
            raise FactorizationTimeout(str(exc), partial=done) from exc
        entry = {
            "power": k,
            "coefficient": frac_str(c),
            "denominator": c.denominator,
            "factors": dict(sorted(factors.items())),
            "square_free": sq,
        }
        out.append(entry)
        done.append(entry)
    return out

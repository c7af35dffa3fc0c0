"""Barycentric subdivision as a linear operator on polynomials.

``b_poly`` sends ``g`` to ``sum_k (Delta^k g)(0) t^k``; ``iota_poly`` is
``g(t) -> g(-1-t)``. The generating-function identity for ``b`` is checked
against an independent truncated expansion of ``1 / (1 - (e^x - 1) t)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .barycentric import FVector
from .complexes import barycentric_subdivide, f_vector, simplex
from .exactalg import Polynomial, finite_difference, stirling2

DEFAULT_ORDER = 12

_IOTA = Polynomial([-1, -1])


def b_poly(g: Polynomial) -> Polynomial:
    if g.is_zero():
        return Polynomial()
    return Polynomial(finite_difference(g, k, 0) for k in range(g.degree + 1))


def b_monomial_closed(k: int) -> Polynomial:
    """``b(t^k) = sum_j j! S(k, j) t^j``."""
    return Polynomial(math.factorial(j) * stirling2(k, j) for j in range(k + 1))


def iota_poly(g: Polynomial) -> Polynomial:
    return g.compose(_IOTA)


def subdivided_simplex_fvector(s: int, via: str = "difference-formula") -> FVector:
    """f-vector of the barycentric subdivision of the closed simplex on ``s`` vertices.

    ``via="chain-oracle"`` subdivides explicitly; ``via="difference-formula"``
    uses ``f_{j-1} = Delta^j {(1+l)^s}`` at ``l = 0`` for ``j = 0..s``.
    """
    if s < 1:
        raise ValueError("a simplex has at least one vertex")
    if via == "chain-oracle":
        return f_vector(barycentric_subdivide(simplex(s)))
    if via == "difference-formula":
        return FVector(tuple(int(finite_difference(lambda l: (1 + l) ** s, j, 0)) for j in range(s + 1)))
    raise ValueError(f"unknown method {via!r}")


@dataclass(frozen=True)
class TruncatedBivariateSeries:
    """Series in x over Q[t], truncated after ``x^order``.

    ``coeffs[k]`` is the coefficient of ``x^k / k!``.
    """

    order: int
    coeffs: tuple[Polynomial, ...]


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(order + 1 - i):
                out[i + j] += x * b[j]
    return out


def rhs_series(order: int = DEFAULT_ORDER) -> TruncatedBivariateSeries:
    """Expand ``sum_j (e^x - 1)^j t^j`` up to ``x^order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    em1 = [Fraction(0)] + [Fraction(1, math.factorial(k)) for k in range(1, order + 1)]
    # ordinary[k][j] = [x^k t^j]
    ordinary = [[Fraction(0)] * (order + 1) for _ in range(order + 1)]
    power = [Fraction(1)] + [Fraction(0)] * order
    for j in range(order + 1):
        for k in range(order + 1):
            ordinary[k][j] = power[k]
        power = _series_mul(power, em1, order)
    return TruncatedBivariateSeries(
        order,
        tuple(Polynomial(c * math.factorial(k) for c in ordinary[k]) for k in range(order + 1)),
    )


def verify_B_identity(order: int = DEFAULT_ORDER) -> tuple[bool, int | None]:
    """Compare ``b(t^k)`` with the ``x^k/k!`` coefficient of the expansion for
    every ``k <= order``; returns ``(ok, first mismatching k)``."""
    rhs = rhs_series(order)
    for k in range(order + 1):
        if b_poly(Polynomial.monomial(k)) != rhs.coeffs[k]:
            return False, k
    return True, None


def verify_iota_b_commutation(max_degree: int) -> tuple[bool, int | None]:
    """Check ``iota(b(iota(t^k))) == b(t^k)`` for ``k <= max_degree``."""
    for k in range(max_degree + 1):
        m = Polynomial.monomial(k)
        if iota_poly(b_poly(iota_poly(m))) != b_poly(m):
            return False, k
    return True, None

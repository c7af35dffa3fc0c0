"""Root convergence of iterated barycentric subdivisions toward the limit roots."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .barycentric import FVector, limit_roots, normalized_polys
from .errors import RealRootDeficit
from .exactalg import DEFAULT_TOL, isolate_real_roots


@dataclass(frozen=True)
class ConvergenceRecord:
    n: int
    roots: list[Fraction]
    limits: list[Fraction]
    distances: list[Fraction]
    divergent_root: Fraction | None
    deficit: bool = False

    @property
    def max_distance(self) -> Fraction:
        return max(self.distances, default=Fraction(0))


def convergence_records(f: FVector, iterations: int, tol=DEFAULT_TOL) -> list[ConvergenceRecord]:
    """For n = 1..iterations, refine the roots of ``p^X_n``, keep the d-1
    largest, and measure their distances to the roots of ``p_d`` (matched in
    sorted order). The smallest root, which runs off to -infinity, is kept as
    ``divergent_root``.
    """
    d = f.d
    if d < 2:
        raise ValueError("convergence needs a complex of dimension >= 1")
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RealRootDeficit)
        limits = sorted(limit_roots(d, tol).roots_p)
    out = []
    for n in range(1, iterations + 1):
        p, _ = normalized_polys(f, n)
        rep = isolate_real_roots(p, tol)
        roots = []
        for r, mult in zip(rep.exact, rep.multiplicities):
            roots.extend([r] * mult)
        roots.sort()
        deficit = len(roots) < p.degree
        if deficit:
            warnings.warn(f"p^X_{n} has only {len(roots)} real roots of {p.degree}", RealRootDeficit, stacklevel=2)
        tracked = roots[-(d - 1):] if len(roots) >= d - 1 else roots
        divergent = roots[0] if len(roots) == d else None
        lims = limits[-len(tracked):] if tracked else []
        out.append(
            ConvergenceRecord(
                n=n,
                roots=tracked,
                limits=lims,
                distances=[abs(a - b) for a, b in zip(tracked, lims)],
                divergent_root=divergent,
                deficit=deficit,
            )
        )
    return out

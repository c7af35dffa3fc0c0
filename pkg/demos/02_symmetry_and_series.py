# # Mirror symmetry and the difference operator
#
# Every q_d satisfies q_d(t) = (-1)^d q_d(-1-t), so its roots come in pairs
# r, -1-r. The operator b, built from forward differences at 0, has q_d as an
# eigenvector with eigenvalue d!.

from math import factorial

from fvsub import check_symmetry, limit_polys, limit_roots
from fvsub.exactalg import Polynomial
from fvsub.series import b_poly, iota_poly, rhs_series, verify_B_identity

for d in range(2, 11):
    ok, _ = check_symmetry(d)
    q = limit_polys(d).q
    eigen = b_poly(q) == q * factorial(d)
    print(f"d={d:2d}  symmetric={ok}  b(q)=d!q: {eigen}")

# Pairing of roots about -1/2.
roots = limit_roots(8).roots_q
for r, s in zip(roots, reversed(roots)):
    print(f"{float(r):+.6f} + {float(s):+.6f} = {float(r + s):+.3e}")

# b commutes with t -> -1-t.
g = Polynomial([3, -1, 0, 2])
print(iota_poly(b_poly(iota_poly(g))) == b_poly(g))

# The images b(t^k) are the coefficients of an exponential generating function.
series = rhs_series(6)
for k in range(7):
    print(k, series.coeffs[k])
print("identity holds to order 12:", verify_B_identity(12)[0])

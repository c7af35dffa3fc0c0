# # Limit polynomials and their roots
#
# Subdividing a complex over and over multiplies its f-vector by the same
# lower-triangular matrix each time. The matrix diagonalizes over the
# rationals, and one row of the inverse eigenvector matrix gives a polynomial
# that every subdivided f-polynomial approaches after rescaling.

from fvsub import eigendata, lambda_matrix, limit_polys, limit_roots

# The transition matrix for complexes of dimension 4.
print(lambda_matrix(5).pretty())

# Its eigendata is exact. The inverse eigenvector matrix stays lower triangular.
e = eigendata(10)
print(e.Pinv.pretty())

# Row d of that inverse, read as coefficients of t^0, t^1, ..., is q_d.
for d in range(2, 7):
    print(f"q_{d}(t) =", limit_polys(d).q)

# Root isolation runs on exact rationals; the floats below are only for display.
for d in range(2, 11):
    lr = limit_roots(d)
    print(d, " ".join(f"{float(r):10.5f}" for r in lr.roots_p))

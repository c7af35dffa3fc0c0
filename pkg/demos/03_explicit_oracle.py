# # Checking the matrix against explicit subdivision
#
# The barycentric subdivision of a complex is the order complex of its
# nonempty faces. Building it explicitly and counting faces gives the same
# f-vector as multiplying by the transition matrix.

import random

from fvsub import barycentric_subdivide, euler_char, f_vector, subdivided_fvector
from fvsub.complexes import bundled_corpus, random_complex

for name, X in bundled_corpus().items():
    Y = barycentric_subdivide(X)
    print(f"{name:22s} {list(f_vector(X))!s:24s} -> {list(f_vector(Y))}",
          f_vector(Y) == subdivided_fvector(f_vector(X), 1))

rng = random.Random(1)
for _ in range(5):
    X = random_complex(rng)
    Y = barycentric_subdivide(barycentric_subdivide(X))
    assert f_vector(Y) == subdivided_fvector(f_vector(X), 2)
    assert euler_char(Y) == euler_char(X)
    print(sorted(X.facets), "->", list(f_vector(Y)))

# # Other subdivision rules
#
# A rule is a subdivided model simplex in each dimension, with barycentric
# coordinates for every new vertex. Rules that are compatible on faces and
# invariant under relabeling have their own transition matrices and limit
# polynomials, and those polynomials keep the mirror symmetry.

import json

from fvsub.complexes import SimplicialComplex, f_vector
from fvsub.exactalg import isolate_real_roots
from fvsub.rules import (
    apply_rule,
    builtin_rule,
    check_rule_symmetry,
    limit_poly_rule,
    rule_to_json,
    transition_matrix,
    validate_rule,
)

stellar = builtin_rule("stellar_top(2)", 2)
print(json.dumps(rule_to_json(stellar)["models"][2], indent=1))
print("findings:", validate_rule(stellar))

two_triangles = SimplicialComplex([[0, 1, 2], [1, 2, 3]])
print(list(f_vector(apply_rule(stellar, two_triangles))))
print(transition_matrix(stellar, 3).matrix.pretty())

for m in (2, 3):
    rule = builtin_rule("stellar_top", m, n=m)
    p, q, lam = limit_poly_rule(rule, m + 1)
    rep = isolate_real_roots(q)
    print(f"stellar_top({m}): eigenvalue {lam}, q = {q}")
    print("  symmetric:", check_rule_symmetry(rule, m + 1)[0], " real roots:", rep.count_real, "of", rep.degree)

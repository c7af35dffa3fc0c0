# # Watching the roots converge
#
# The boundary of a tetrahedron has limit roots -2 and -1. After n
# subdivisions the two largest roots of the rescaled f-polynomial sit close to
# them, while the remaining root runs off to minus infinity.

from fvsub.complexes import f_vector, simplex_boundary
from fvsub.convergence import convergence_records

recs = convergence_records(f_vector(simplex_boundary(4)), 10)
print(f"{'n':>3} {'max distance':>14} {'smallest root':>16}")
for r in recs:
    print(f"{r.n:3d} {float(r.max_distance):14.3e} {float(r.divergent_root):16.6g}")

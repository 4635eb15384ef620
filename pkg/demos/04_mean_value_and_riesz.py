# Sphere averages and the Riesz-type bound for log-plurisubharmonic functions.
import math

from teichpoisson import Decomposition, HalfPlanePoint, mean_value, riesz_teich_bound
from teichpoisson.potential import get_function

x = HalfPlanePoint(0.4, 0.8)

# pluriharmonic functions equal their sphere averages; psh values never exceed them
for r in (0.25, 1.0, 2.0):
    for u in [get_function("mobius_re"), get_function("abs_cayley"), get_function("sq_abs_affine")]:
        avg = mean_value(u, x, r)
        print(f"r={r:4.2f} {u.name:16s} u(x)={float(u.at(x)):.10f}  sphere average={avg:.10f}")

# v = |tau / (tau + i)| at i.  Its boundary modulus is at most 1/sqrt(2) on the rays landing in
# [-1, 1] and at most 1 elsewhere; each region carries half the measure.
v = get_function("abs_half_shift")
q = math.pi / 4
dec = Decomposition(((0.0, q), (q, 3 * q), (3 * q, math.pi)), (1.0, 1 / math.sqrt(2), 1.0))
lhs, rhs = riesz_teich_bound(v, HalfPlanePoint(0, 1), dec)
print(f"v(i) = {lhs}  <=  product bound = {rhs}  (2^-1/4 = {2 ** -0.25})")

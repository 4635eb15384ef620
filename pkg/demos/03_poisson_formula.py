# Recovering a bounded pluriharmonic function from its radial limits.
#
# Follow each ray to infinity to read off boundary values u*, then integrate
# them against the extremal-length kernel to get u back at any interior point.
import math

from teichpoisson import BoundaryFunction, HalfPlanePoint, Lamination, poisson_integral, radial_limit
from teichpoisson.potential import get_function, poisson_gradient, finite_difference_gradient

u = get_function("blaschke2_re")
x0 = HalfPlanePoint(0.0, 1.0)

# radial limits along a few rays, against the continuous boundary extension
for lam in [Lamination(1, 0), Lamination(0, 1), Lamination(1, 1), Lamination(1, math.sqrt(2))]:
    theta = lam.direction().theta
    print(f"ray {lam.p:+.3f},{lam.q:+.3f}: limit {radial_limit(u, lam, x0):+.12f}  "
          f"boundary value {float(u.boundary_of_angle(theta)):+.12f}")

star = BoundaryFunction.radial_limit_of(u, x0)
for x in [HalfPlanePoint(-1, 0.5), HalfPlanePoint(0.3, 1.0), HalfPlanePoint(2, 4)]:
    print(f"x={x.tau}:  u(x)={float(u.at(x)):+.12f}  P(u*)(x)={poisson_integral(star, x0, x):+.12f}")

# squaring the kernel breaks the formula, which is why the exponent matters
x = HalfPlanePoint(0.3, 1.0)
print("with the kernel squared:", poisson_integral(star, x0, x, exponent=2))

# derivatives from the closed form versus central differences, for a step function
g = BoundaryFunction.step([0.5, 2.0], [1.0, -1.0, 0.3])
d10, d01 = poisson_gradient(g, x, x0)
print("d/dtau P(g) closed form:", d10)
print("d/dtau P(g) differences:", finite_difference_gradient(g, x, x0))

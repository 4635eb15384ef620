# The cone measure on projective laminations and what it looks like from the real line.
#
# Sectors of the unit extremal-length ball give a probability density in the
# direction angle.  Sending each direction to the endpoint of its ray turns it
# into the classical Poisson kernel of the half-plane.
import math

import numpy as np

from teichpoisson import (HalfPlanePoint, boundary_line_density, cone_mass, fiber_angle_measure,
                          hm_differential, Lamination, thurston_density)
from teichpoisson.measures import total_variation

x = HalfPlanePoint(1.0, 2.0)

# the unit ball is an ellipse of area pi whatever the torus
print("cone mass at i:", cone_mass(HalfPlanePoint(0, 1)), " at 1+2i:", cone_mass(x))

# density in the direction angle, and the push-forward to the real line
m = thurston_density(x)
theta = np.linspace(0.2, 3.0, 5)
print("density(theta):", np.round(m.density(theta), 6))
s = np.array([-3.0, -1.0, 0.0, 1.0, 3.0])
pushed = boundary_line_density(x, s)
classical = x.b / (np.pi * ((s - x.a) ** 2 + x.b ** 2))
print("pushed-forward density   :", pushed)
print("b / (pi |s - tau|^2)     :", classical)
print("max difference           :", np.max(np.abs(pushed - classical)))

# a wrong choice of endpoint map gives a visibly different density
print("with s = +cot(theta) instead:", boundary_line_density(x, s, endpoint_sign=+1))

# rotating one quadratic differential sweeps every direction; the induced angle measure is the same
q = hm_differential(x, Lamination(1, 0))
edges = np.linspace(0.0, math.pi, 257)
fiber = fiber_angle_measure(q).cdf_mass(edges)
cone = m.bin_masses(edges)
print("total variation between the rotation measure and the cone measure:", total_variation(fiber, cone))

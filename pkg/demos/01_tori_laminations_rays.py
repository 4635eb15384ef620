# Flat tori, laminations and Teichmüller rays.
#
# A point of the model is a modulus tau = a + bi in the upper half-plane and a
# measured lamination is a nonzero pair (p, q).  Run: python3 demos/01_tori_laminations_rays.py
import math

import numpy as np

from teichpoisson import (HalfPlanePoint, Lamination, QuadDifferential, extremal_length, geodesic_ray,
                          hm_differential, intersection_number, lamination_of_angle, teich_distance,
                          teichmuller_disk, vertical_lamination)

square = HalfPlanePoint(0.0, 1.0)
hexagonal = HalfPlanePoint(0.5, math.sqrt(3) / 2)

# intersection numbers are |p1 q2 - p2 q1|
print("i((1,0),(0,1)) =", intersection_number(Lamination(1, 0), Lamination(0, 1)))
print("i((2,0),(0,3)) =", intersection_number(Lamination(2, 0), Lamination(0, 3)))

# extremal length |p + q tau|^2 / Im tau, for a few short curves on two tori
for name, x in [("square", square), ("hexagonal", hexagonal)]:
    ext = [extremal_length(x, Lamination.curve(p, q)) for p, q in [(1, 0), (0, 1), (1, 1), (1, -1)]]
    print(f"{name:9s} Ext of (1,0),(0,1),(1,1),(1,-1):", np.round(ext, 6))

# the Hubbard-Masur differential of (0,1) at i is dz^2, and its vertical lamination is (0,1) again
q = hm_differential(square, Lamination(0, 1))
print("HM coefficient at i for (0,1):", q.w, " vertical lamination:", vertical_lamination(q))

# a ray shrinks its lamination like exp(-2t) and moves at unit speed
lam = Lamination(1.0, math.sqrt(2))
ray = geodesic_ray(hexagonal, lam)
print("ray of (1, sqrt 2) lands at", ray.endpoint)
for t in (0.0, 1.0, 2.0, 4.0):
    y = ray.evaluate(t)
    ratio = extremal_length(y, lam) / extremal_length(hexagonal, lam)
    print(f"  t={t:3.1f}  tau={y.tau:.6f}  Ext ratio*e^2t={ratio * math.exp(2 * t):.12f}  "
          f"distance={teich_distance(hexagonal, y):.12f}")

# the Teichmüller disk of q contains every ray from its base, one per angle
phi = teichmuller_disk(QuadDifferential(square, 1.0))
for theta in (0.0, math.pi / 2, math.pi):
    direction = lamination_of_angle(QuadDifferential(square, 1.0), theta).representative()
    y_disk = phi(math.tanh(1.0) * np.exp(1j * theta))
    y_ray = geodesic_ray(square, direction).evaluate(1.0)
    print(f"angle {theta:.3f}: disk {y_disk.tau:.6f}  ray {y_ray.tau:.6f}")

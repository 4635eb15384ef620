# Importance-sampled integrals against the cone measure, reproducible to the bit.
import numpy as np

from teichpoisson import HalfPlanePoint, McConfig, integrate_circle_pml, mc_integrate

x = HalfPlanePoint(-0.5, 0.7)
f = lambda th: np.cos(th) ** 2

exact = integrate_circle_pml(f, x, 1e-12).value
print("adaptive quadrature:", exact)
sizes = [1_000, 10_000, 100_000, 1_000_000]
errs = []
for n in sizes:
    est, se = mc_integrate(f, x, McConfig(7, n))
    errs.append(se)
    print(f"n={n:>8d}  estimate={est:.6f}  stderr={se:.2e}  |err|/stderr={abs(est - exact) / se:.2f}")
print("fitted slope of log stderr vs log n:", np.polyfit(np.log(sizes), np.log(errs), 1)[0])

# the worker count does not change a single bit
cfg = McConfig(7, 300_000)
print("1 worker == 4 workers:", mc_integrate(f, x, cfg, workers=1) == mc_integrate(f, x, cfg, workers=4))

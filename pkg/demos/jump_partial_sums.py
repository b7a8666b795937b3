"""Partial-sum inversion at a jump: convergence to the quadrant average.

At a discontinuity the windowed inversion integral does not converge to
the function value but to the average of the four quadrant limits - 1/4
at a corner of the unit-square indicator, 1/2 at an edge midpoint, 1 at
an interior point.  The sweep below shows the corner value crawling
toward 1/4 as the window grows, Gibbs oscillation and all.
"""

import numpy as np

from qharmonics import dirichlet_partial_inverse_sinc, eta_jump_average
from qharmonics.fixtures import indicator, sinc_rect

POINTS = {"corner (1,1)": (1.0, 1.0),
          "edge (1,0)": (1.0, 0.0),
          "interior (0,0)": (0.0, 0.0)}

for label, point in POINTS.items():
    eta = eta_jump_average(indicator, point)
    print(f"{label}: quadrant limits {eta.quadrant_values[:, 0]}, "
          f"average eta = {eta.value[0]:.4f}")
    rect = sinc_rect("indicator", point)
    print("      M      I(M, M)      |I - eta|")
    for M in (25.0, 50.0, 100.0, 200.0):
        val = dirichlet_partial_inverse_sinc(indicator, point, M, M, rect)
        err = abs(val[0] - eta.value[0])
        print(f"  {M:5.0f}  {val[0]:+.6f}   {err:.6f}")
    print()

print("double-sinc normalization over one quadrant (should be 1/4):")
const = lambda S, T: np.ones(np.broadcast(S, T).shape)
R = 200.0 * np.pi
val = dirichlet_partial_inverse_sinc(const, (0.0, 0.0), 1.0, 1.0, (-R, 0.0, -R, 0.0))
print(f"  {val[0]:.6f}")

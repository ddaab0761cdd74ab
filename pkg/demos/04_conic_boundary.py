"""
The boundary curve
==================

The values of zf'/f live in a region bounded by a conic whose shape depends on beta.
"""

import numpy as np

from pvalent import ClassParams, conic_boundary, conic_shape

for beta in (0.0, -0.5, -1.0, -2.0):
    print(beta, conic_shape(ClassParams(1, 2.0, beta)))

# beta = -1 gives a parabola with vertex at u = 1.5 when p = 1, alpha = 2.
v = np.arange(-2, 2.01, 0.5)
for u, vv in conic_boundary(ClassParams(1, 2.0, -1.0), v):
    print("%8.4f, %6.2f" % (u, vv))

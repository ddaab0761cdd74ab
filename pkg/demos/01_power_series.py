"""
Truncated power series
======================

Arithmetic on series that remember where they stop.
"""

import numpy as np

from pvalent import PowerSeries, differentiate, evaluate, geometric, real_power, to_mu_form

# A series is a leading exponent, a coefficient block and a truncation order.
# Coefficients through the order are known (short input is zero-padded);
# past it nothing is claimed.
f = PowerSeries([1, 0.3, -0.1, 0.02], lead=2, order=8)
print(f)
print("coefficient of z^3:", f.coefficient(3))

# Products keep only what both factors determine.
g = f * f
print("f*f starts at z^%d and is exact through z^%d" % (g.lead, g.order))

# Real powers of a unit series come from a first-order recurrence,
# so (1 - z)^(-1) gives back the geometric series.
u = PowerSeries([1, -1], order=6)
print("(1-z)^-1:", np.round(real_power(u, -1).dense().real, 12))

# The mu-form writes (z^p/f)^mu = 1 - sum b_k z^k.
form = to_mu_form(f, mu=1.0)
print("b_1..b_4:", np.round(form.b[:4].real, 6))

# Evaluation inside the disk reports a tail bound when a decay model is known.
h = PowerSeries(0.5 ** np.arange(40), lead=0)
r = evaluate(h, 0.9, tail=geometric(0.5))
print("sum 0.5^k 0.9^k ~ %.15f (+- %.2e), exact %.15f" % (r.value.real, r.tail_bound, 1 / (1 - 0.45)))

# Differentiation drops one order of accuracy.
print("d/dz of f has order", differentiate(f).order)

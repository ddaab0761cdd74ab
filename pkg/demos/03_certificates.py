"""
Coefficient certificates and grid sampling
==========================================

A sufficient coefficient test proves membership. Sampling can only refute it.
"""

import numpy as np

from pvalent import (
    ClassParams,
    Grid,
    PowerSeries,
    certify_T23,
    check_T21_necessary,
    paper_example,
    paper_example_tail,
    sample_membership,
)

# A worked family whose coefficient sum approaches (p-1)(alpha-1) as K grows.
p, alpha, beta = 3, 2.0, -1.0
params = ClassParams(p, alpha, beta)
for K in (10, 100, 10_000):
    f = paper_example(p, alpha, beta, 0.0, K)
    cert = certify_T23(f, params, paper_example_tail(p, alpha, beta))
    print("K=%6d lhs=%.6f tail<=%.2e threshold=%g -> %s" % (K, cert.lhs_sum, cert.tail_bound, cert.threshold, cert.verdict))

# Without a decay model the remainder is unknown and the verdict stays open.
print(certify_T23(f, params).verdict, "(no tail model)")

# Sampling the defining inequality agrees: no violations on the grid.
report = sample_membership(f, params, Grid(64, 64, 0.95), paper_example_tail(p, alpha, beta))
print("worst slack %.4f over %d points, %d violations" % (report.worst_slack, report.n_evaluated, report.n_violations))

# The necessary test goes the other way. z/(1 - 0.95 z) fails it for alpha = 1.1,
# and the real-axis slack confirms the failure near the rim.
cls = ClassParams(1, 1.1, 0, mu=1.0)
print(check_T21_necessary([0.95], cls).verdict)
g = PowerSeries(0.95 ** np.arange(2000), lead=1, order=2000)
rep = sample_membership(g, ClassParams(1, 1.1, 0), Grid(8, 8, 0.999))
z, s, _ = min(rep.violations, key=lambda v: v[1])
print("most negative slack %.3f at z = %.3f" % (s, z.real))

"""
Hypergeometric and Bessel building blocks
=========================================

Series evaluation with tails that are bounds, not guesses.
"""

from pvalent import (
    BesselParams,
    HypergeometricParams,
    bessel_U,
    bessel_w,
    gamma_real,
    gauss_2f1,
    gauss_2f1_at_one,
    pochhammer,
)

print("(3)_2 =", pochhammer(3, 2))
print("Gamma(1/2)^2 =", gamma_real(0.5) ** 2)

# 2F1 partial sums carry a ratio-test remainder bound.
params = HypergeometricParams(0.5, 0.5, 3)
for K in (10, 100, 1000):
    r = gauss_2f1(params, 0.99, K)
    print("K=%5d  F(0.99) ~ %.12f  tail <= %.2e" % (K, r.value, r.tail_bound))

# Near z = 1 the series converges slowly; the Gamma formula gives the limit.
print("F(1) by Gamma formula:", gauss_2f1_at_one(params))
print("F(1 - 1e-6), 2000 terms:", gauss_2f1(params, 1 - 1e-6, K=2000).value)

# With d integer, e = delta = 1 the generalized Bessel w is the classical J_d.
print("J_1(2) =", bessel_w(BesselParams(1, 1, 1), 2.0).value)

# U is the normalized transform of w; it is entire, so any z works.
bp = BesselParams(0.5, 2, 1)
z = 0.25
via_w = 2**bp.d * gamma_real(bp.nu) * z ** (-bp.d / 2) * bessel_w(bp, z**0.5).value
print("U(0.25) = %.15f, via w: %.15f" % (bessel_U(bp, z).value, via_w))

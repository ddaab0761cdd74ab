"""
A convolution operator
======================

Hadamard product of a hypergeometric series with a Bessel transform, shifted to start at z^p.
"""

from pvalent import ClassParams, OperatorParams, certify_operator, hadamard_build, operator_coefficients

op = OperatorParams(a=1, b=1, c=4, d=1, e=1, delta=1, p=1)
direct = operator_coefficients(op, 12)
built = hadamard_build(op, 12)
print("closed form vs Hadamard build, max gap:", abs(direct.coeffs - built.coeffs).max())

# Coefficients decay factorially, so a short truncation plus a ratio tail certifies.
cls = ClassParams(1, 2.0, 0.0)
for K in (4, 10, 40):
    c = certify_operator(op, cls, K)
    print("K=%2d lhs=%.15f tail<=%.2e %s" % (K, c.lhs_sum, c.tail_bound, c.verdict))

# Larger delta pushes the coefficients up until the test no longer closes.
for delta in (1, 8, 32):
    c = certify_operator(OperatorParams(1, 1, 4, 1, 1, delta, 1), cls)
    print("delta=%2d lhs=%.4f %s" % (delta, c.lhs_sum, c.verdict))

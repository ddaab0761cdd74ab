"""The Hadamard-product operator built from 2F1 and the normalized Bessel series.

    I(z) = z^p (F(a, b; c; z) * U_{d,e,delta}(z))

with coefficient of z^k, n = k - p,

    (-1)^n (a)_n (b)_n (delta/4)^n / ((c)_n (nu)_n (n!)^2),   nu = d + (e+1)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._json import complex_pair, parse_complex
from .classify import ClassParams, Certificate, _sufficient, t23_weights
from .errors import InvariantError, PreconditionError
from .series import PowerSeries, hadamard
from .special import BesselParams, HypergeometricParams, bessel_U_series, gauss_2f1_series

DEFAULT_K = 40


@dataclass(frozen=True)
class OperatorParams:
    """Parameters of the operator; ``checked=False`` skips the parameter invariants.

    Unchecked records are for algebraic identities only and are refused by
    ``certify_operator``.
    """

    a: complex
    b: complex
    c: float
    d: complex
    e: complex
    delta: float
    p: int = 1
    checked: bool = True

    def __post_init__(self):
        for name in ("a", "b", "d", "e"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if int(self.p) != self.p or self.p < 1:
            raise InvariantError("p must be a positive integer")
        object.__setattr__(self, "p", int(self.p))
        if not self.checked:
            return
        if self.a == 0 or self.b == 0:
            raise InvariantError("a and b must be nonzero")
        if isinstance(self.c, complex) or not self.c > abs(self.a) + abs(self.b) + 1:
            raise InvariantError("need real c > |a| + |b| + 1, got c = %r" % (self.c,))
        if isinstance(self.delta, complex) or not self.delta > 0:
            raise InvariantError("delta must be a positive real")
        nu = self.nu
        if abs(nu.imag) > 0 or not nu.real > 0:
            raise InvariantError("d + (e+1)/2 must be a positive real, got %r" % (nu,))

    @property
    def nu(self) -> complex:
        return self.d + (self.e + 1) / 2

    def to_dict(self):
        return {
            "a": complex_pair(self.a), "b": complex_pair(self.b), "c": float(self.c),
            "d": complex_pair(self.d), "e": complex_pair(self.e),
            "delta": float(self.delta), "p": self.p,
        }

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(
                parse_complex(d["a"]), parse_complex(d["b"]), float(d["c"]),
                parse_complex(d["d"]), parse_complex(d["e"]), float(d["delta"]), int(d["p"]),
            )
        except (KeyError, TypeError) as exc:
            raise InvariantError("malformed operator parameters: %s" % exc) from None


def _factor(params: OperatorParams, n):
    # ratio of consecutive closed-form coefficients, index n -> n+1
    a, b, c, nu = params.a, params.b, params.c, params.nu
    return -(a + n) * (b + n) * (params.delta / 4) / ((c + n) * (nu + n) * (n + 1) ** 2)


def operator_coefficients(params: OperatorParams, K: int = DEFAULT_K) -> PowerSeries:
    if K < params.p:
        raise PreconditionError("K must be at least p")
    n = np.arange(K - params.p)
    coeffs = np.concatenate([[1.0 + 0j], np.cumprod(_factor(params, n))])
    return PowerSeries(coeffs, params.p, K)


def hadamard_build(params: OperatorParams, K: int = DEFAULT_K) -> PowerSeries:
    """``z^p`` times the Hadamard product of the 2F1 and U coefficient sequences."""
    if K < params.p:
        raise PreconditionError("K must be at least p")
    n = K - params.p
    hyp = HypergeometricParams(params.a, params.b, params.c)
    bes = BesselParams(params.d, params.e, params.delta)
    return hadamard(gauss_2f1_series(hyp, n), bessel_U_series(bes, n)).shift(params.p)


def certify_operator(params: OperatorParams, cls: ClassParams, K: int = DEFAULT_K) -> Certificate:
    """Coefficient test for ``I in M_p(alpha, beta)`` with a rigorous factorial tail.

    Past the last stored index N every term ratio is at most

        (1 + (1-beta)/w_{K+1}) * max(1, (|b|+N)/(nu+N)) * (delta/4) / (N+1)^2

    because c > |a| bounds |a+n|/(c+n) by 1, and each factor only shrinks
    as n grows.
    """
    if not params.checked:
        raise PreconditionError("certificates need a checked OperatorParams")
    if cls.p != params.p:
        raise InvariantError("parameter mismatch: operator p = %d, class p = %d" % (params.p, cls.p))
    coeffs = operator_coefficients(params, K + 1).coeffs
    mods = np.abs(coeffs[1:])
    w = t23_weights(cls, K + 1)
    terms = w * mods
    lhs = math.fsum(terms[:-1])
    N = K + 1 - params.p
    nu = params.nu.real
    ratio = (1 + (1 - cls.beta) / w[-1]) * max(1.0, (abs(params.b) + N) / (nu + N)) * (params.delta / 4) / (N + 1) ** 2
    tail = terms[-1] / (1 - ratio) if ratio < 1 else math.inf
    return _sufficient("T31_operator", lhs, cls.p * (cls.alpha - 1), float(tail), "bounded")

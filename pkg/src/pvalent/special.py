"""Scalar special functions: Pochhammer, Gamma, Gauss 2F1, generalized Bessel.

Every series evaluator returns an ``EvalResult`` whose ``tail_bound`` comes
from a term-ratio argument: the first omitted term is computed exactly and
all later ratios are bounded by a quantity that only shrinks with the index.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._json import complex_pair, parse_complex
from .errors import InvariantError, PreconditionError
from .series import EvalResult, PowerSeries

DEFAULT_TERMS = 64
LATTICE_TOL = 1e-12


def _on_nonpositive_lattice(x: complex) -> bool:
    x = complex(x)
    n = round(x.real)
    return n <= 0 and abs(x - n) <= LATTICE_TOL


def _as_number(x):
    x = complex(x)
    return x.real if x.imag == 0 else x


def pochhammer(x, n: int):
    """Rising factorial ``x (x+1) ... (x+n-1)``, with ``(x)_0 = 1``."""
    if n < 0:
        raise PreconditionError("Pochhammer index must be >= 0")
    out = 1.0
    for i in range(n):
        out *= x + i
    return out


def gamma_real(x: float) -> float:
    """Gamma function on the positive real axis."""
    x = float(x)
    if not x > 0:
        raise PreconditionError("gamma_real is defined for x > 0 only, got %r" % x)
    return math.gamma(x)


def _rgamma(x: float) -> float:
    # 1/Gamma(x) for real x: zero at the poles, lgamma past the overflow point
    if x <= 0 and x == math.floor(x):
        return 0.0
    if x > 170:
        return math.exp(-math.lgamma(x))
    return 1.0 / math.gamma(x)


def _ratio_tail(next_term: complex, ratio_bound: float) -> float:
    # sum_{n>K} |t_n| given |t_{K+1}| and sup_{n>K} |t_{n+1}/t_n| <= ratio_bound
    a = abs(next_term)
    if a == 0.0:
        return 0.0
    if not ratio_bound < 1.0:
        return math.inf
    return a / (1.0 - ratio_bound)


@dataclass(frozen=True)
class HypergeometricParams:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _as_number(getattr(self, name)))
        if _on_nonpositive_lattice(self.c):
            raise InvariantError("c = %r is zero or a negative integer" % (self.c,))

    def to_dict(self):
        return {k: complex_pair(getattr(self, k)) for k in ("a", "b", "c")}

    @classmethod
    def from_dict(cls, d):
        return cls(*(parse_complex(d[k]) for k in ("a", "b", "c")))


@dataclass(frozen=True)
class BesselParams:
    d: complex
    e: complex
    delta: complex

    def __post_init__(self):
        for name in ("d", "e", "delta"):
            object.__setattr__(self, name, _as_number(getattr(self, name)))
        if _on_nonpositive_lattice(self.nu):
            raise InvariantError("d + (e+1)/2 = %r is zero or a negative integer" % (self.nu,))

    @property
    def nu(self):
        return _as_number(self.d + (self.e + 1) / 2)

    def to_dict(self):
        return {k: complex_pair(getattr(self, k)) for k in ("d", "e", "delta")}

    @classmethod
    def from_dict(cls, d):
        return cls(*(parse_complex(d[k]) for k in ("d", "e", "delta")))


def _hyp_ratio(a, b, c, k):
    return (a + k) * (b + k) / ((c + k) * (k + 1))


def gauss_2f1(params: HypergeometricParams, z: complex, K: int = DEFAULT_TERMS) -> EvalResult:
    """Partial sum ``sum_{k<=K} (a)_k (b)_k / ((c)_k k!) z^k`` with a tail bound."""
    a, b, c = params.a, params.b, params.c
    if abs(z) >= 1:
        raise PreconditionError("2F1 series needs |z| < 1")
    term, total = 1.0 + 0j, 0j
    for k in range(K + 1):
        total += term
        term *= _hyp_ratio(a, b, c, k) * z
    # term is now t_{K+1}; bound ratios t_{n+1}/t_n for n >= K+1
    n = K + 1
    cre = complex(c).real + n
    if cre <= 0:
        tail = math.inf
    else:
        ra = max(1.0, (abs(a) + n) / cre)
        rb = max(1.0, (abs(b) + n) / (n + 1))
        tail = _ratio_tail(term, abs(z) * ra * rb)
    return EvalResult(_as_number(total), tail)


def gauss_2f1_at_one(params: HypergeometricParams):
    """``F(a,b;c;1) = Gamma(c-a-b) Gamma(c) / (Gamma(c-a) Gamma(c-b))`` for real parameters."""
    a, b, c = params.a, params.b, params.c
    if any(isinstance(v, complex) for v in (a, b, c)):
        raise PreconditionError("unsupported: complex Gamma (parameters must be real)")
    s = c - a - b
    if not s > 0:
        raise PreconditionError("divergent at z=1: Re(c-a-b) = %r <= 0" % s)
    return math.gamma(s) * math.gamma(c) * _rgamma(c - a) * _rgamma(c - b)


def _principal_power(z: complex, d) -> complex:
    if z == 0:
        if d == 0:
            return 1.0 + 0j
        if complex(d).imag == 0 and complex(d).real > 0:
            return 0j
        raise PreconditionError("z^d undefined at z = 0 for d = %r" % (d,))
    return cmath.exp(d * cmath.log(z))


def bessel_w(params: BesselParams, z: complex, K: int = DEFAULT_TERMS) -> EvalResult:
    """Generalized Bessel function ``w_{d,e,delta}(z)`` by direct summation.

    ``(z/2)^d`` is the principal power. The Gamma factors need a real
    ``d + (e+1)/2``.
    """
    nu = params.nu
    if isinstance(nu, complex):
        raise PreconditionError("unsupported: complex Gamma (d + (e+1)/2 must be real)")
    d, delta = params.d, params.delta
    z = complex(z)
    d_is_int = complex(d).imag == 0 and float(complex(d).real).is_integer()
    if z.imag == 0 and z.real < 0 and not d_is_int:
        raise PreconditionError("branch ambiguity: z on the negative real axis with non-integer d")
    prefactor = _principal_power(z / 2, d)
    x = -delta * (z / 2) ** 2
    total, xk, kfact = 0j, 1.0 + 0j, 1.0
    for k in range(K + 1):
        total += xk * _rgamma(nu + k) / kfact
        xk *= x
        kfact *= k + 1
    nxt = xk * _rgamma(nu + K + 1) / kfact
    n = K + 1
    if nu + n > 0:
        tail = _ratio_tail(nxt, abs(x) / ((n + 1) * (nu + n)))
    else:
        tail = math.inf
    return EvalResult(_as_number(total * prefactor), tail * abs(prefactor))


def _bessel_u_terms(params: BesselParams, K: int):
    nu = params.nu
    q = -params.delta / 4
    out = np.empty(K + 2, dtype=complex)
    out[0] = 1.0
    for k in range(K + 1):
        out[k + 1] = out[k] * q / ((nu + k) * (k + 1))
    return out


def bessel_U(params: BesselParams, z: complex, K: int = DEFAULT_TERMS) -> EvalResult:
    """Normalized transform ``U(z) = sum (-delta/4)^k z^k / ((nu)_k k!)``; entire in z."""
    coeffs = _bessel_u_terms(params, K)
    z = complex(z)
    powers = z ** np.arange(K + 2)
    terms = coeffs * powers
    n = K + 1
    nre = complex(params.nu).real + n
    if nre > 0:
        tail = _ratio_tail(terms[-1], abs(params.delta) * abs(z) / 4 / ((n + 1) * nre))
    else:
        tail = math.inf
    return EvalResult(_as_number(terms[:-1].sum()), float(tail))


def gauss_2f1_series(params: HypergeometricParams, K: int) -> PowerSeries:
    a, b, c = params.a, params.b, params.c
    coeffs = np.empty(K + 1, dtype=complex)
    coeffs[0] = 1.0
    for k in range(K):
        coeffs[k + 1] = coeffs[k] * _hyp_ratio(a, b, c, k)
    return PowerSeries(coeffs, 0, K)


def bessel_U_series(params: BesselParams, K: int) -> PowerSeries:
    return PowerSeries(_bessel_u_terms(params, K)[:-1], 0, K)

"""Truncated complex power series.

A ``PowerSeries`` stores the coefficients of ``z**lead, ..., z**order``;
everything above ``order`` is unknown. Arithmetic never reports a
coefficient beyond the order its inputs actually determine, and anything
that sums a truncated series carries a ``TailModel`` describing how fast
the unknown coefficients may decay.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._json import complex_pair, parse_complex
from .errors import InvariantError, NearZeroError, PreconditionError

DEFAULT_ORDER = 256
DEFAULT_R_MAX = 0.999
TOL_FORM = 1e-12


@dataclass(frozen=True)
class TailModel:
    """Decay model for the coefficients that were truncated away.

    ``geometric``: ``|c_m| <= C * rate**m``.
    ``power``: ``|c_m| <= C / m**rate``.
    ``none``: nothing is known; bounds come back as 0 with ``bounded=False``.
    """

    kind: str = "none"
    rate: float = 0.0
    C: float = 0.0

    def __post_init__(self):
        if self.kind not in ("geometric", "power", "none"):
            raise InvariantError("unknown tail model %r" % self.kind)
        if self.kind != "none" and (self.C < 0 or self.rate <= 0):
            raise InvariantError("tail model needs C >= 0 and rate > 0")

    @property
    def bounded(self) -> bool:
        return self.kind != "none"

    def bound(self, K, r=1.0, A=1.0, B=0.0):
        """Upper bound on ``sum_{m > K} (A + B*m) |c_m| r**m``.

        ``r`` may be an array (one bound per radius). ``A`` is clipped at 0,
        so the bound stays valid for weights that are positive for m > K.
        """
        r = np.asarray(r, dtype=float)
        A = max(float(A), 0.0)
        B = max(float(B), 0.0)
        if self.kind == "none" or self.C == 0.0:
            return np.zeros_like(r)[()]
        if self.kind == "geometric":
            return self.C * _weighted_geometric_tail(K, self.rate * r, A, B)
        # power law: the better of a (K+1)^-q geometric-majorant bound and
        # integral comparison (the latter only uses r <= 1)
        q = self.rate
        geo = self.C * (K + 1.0) ** (-q) * _weighted_geometric_tail(K, r, A, B)
        integral = np.inf
        if K >= 1 and q > 1 and (B == 0.0 or q > 2):
            integral = A * K ** (1.0 - q) / (q - 1.0)
            if B:
                integral += B * K ** (2.0 - q) / (q - 2.0)
            integral *= self.C
        return np.minimum(geo, integral)[()]

    def to_dict(self):
        return {"kind": self.kind, "rate": self.rate, "C": self.C}

    @classmethod
    def from_dict(cls, d):
        if d is None:
            return NO_TAIL
        return cls(str(d.get("kind", "none")), float(d.get("rate", 0.0)), float(d.get("C", 0.0)))


def geometric(rate, C=1.0):
    return TailModel("geometric", float(rate), float(C))


def power(q, C=1.0):
    return TailModel("power", float(q), float(C))


NO_TAIL = TailModel()


def _weighted_geometric_tail(K, x, A, B):
    # sum_{m>K} (A + B m) x^m for 0 <= x < 1, inf otherwise
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        xk = x ** (K + 1)
        s = A * xk / (1.0 - x) + B * xk * ((K + 1) - K * x) / (1.0 - x) ** 2
    return np.where(x < 1.0, s, np.inf)


class EvalResult(NamedTuple):
    value: complex
    tail_bound: float
    bounded: bool = True


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients ``coeffs[j]`` of ``z**(lead + j)`` for ``lead + j <= order``.

    Shorter coefficient lists are zero-padded up to ``order``.
    """

    coeffs: np.ndarray
    lead: int = 0
    order: int = field(default=None)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        lead = int(self.lead)
        if lead < 0:
            raise InvariantError("lead must be >= 0")
        order = lead + len(c) - 1 if self.order is None else int(self.order)
        if order < lead:
            raise InvariantError("order %d below lead %d" % (order, lead))
        n = order - lead + 1
        if len(c) > n:
            raise InvariantError("%d coefficients do not fit lead=%d order=%d" % (len(c), lead, order))
        if len(c) < n:
            c = np.concatenate([c, np.zeros(n - len(c), dtype=complex)])
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "order", order)

    @classmethod
    def monomial(cls, p, order=None, coeff=1.0):
        return cls([coeff], lead=p, order=p if order is None else order)

    @classmethod
    def ones(cls, order):
        return cls(np.ones(order + 1), order=order)

    def coefficient(self, m):
        if m > self.order:
            raise PreconditionError("z^%d is beyond the truncation order %d" % (m, self.order))
        if m < self.lead:
            return 0j
        return complex(self.coeffs[m - self.lead])

    def dense(self):
        """Coefficients of ``z**0 .. z**order`` (zeros below ``lead``)."""
        out = np.zeros(self.order + 1, dtype=complex)
        out[self.lead:] = self.coeffs
        return out

    def shift(self, n):
        """Multiply by ``z**n``; negative ``n`` divides, which must be exact."""
        if self.lead + n < 0:
            raise PreconditionError("cannot divide by z^%d: series starts at z^%d" % (-n, self.lead))
        return PowerSeries(self.coeffs, self.lead + n, self.order + n)

    def truncate(self, order):
        if order < self.lead:
            raise PreconditionError("truncation below the leading exponent")
        order = min(order, self.order)
        return PowerSeries(self.coeffs[: order - self.lead + 1], self.lead, order)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other], order=self.order)  # constants are exact to any order
        order = min(self.order, other.order)
        lead = min(self.lead, other.lead, order)
        d = self.dense()[: order + 1] + other.dense()[: order + 1]
        return PowerSeries(d[lead:], lead, order)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs, self.lead, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return multiply(self, other)
        return PowerSeries(self.coeffs * complex(other), self.lead, self.order)

    def __rmul__(self, other):
        return self * other

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return "PowerSeries(lead=%d, order=%d, coeffs=%s)" % (
            self.lead, self.order, np.array2string(self.coeffs[:6], precision=4))

    def to_dict(self):
        return {"lead": self.lead, "order": self.order, "coeffs": [complex_pair(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, d):
        try:
            coeffs = [parse_complex(c) for c in d["coeffs"]]
            return cls(coeffs, int(d["lead"]), int(d["order"]))
        except (KeyError, TypeError) as exc:
            raise InvariantError("malformed series JSON: %s" % exc) from None


def multiply(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    """Cauchy product, truncated where either factor stops being known."""
    lead = s.lead + t.lead
    order = min(s.order + t.lead, t.order + s.lead)
    prod = np.convolve(s.coeffs, t.coeffs)[: order - lead + 1]
    return PowerSeries(prod, lead, order)


def differentiate(s: PowerSeries) -> PowerSeries:
    if s.order < 1:
        raise PreconditionError("series known only to order 0 has no known derivative")
    exps = np.arange(s.lead, s.order + 1)
    c = exps * s.coeffs
    if s.lead == 0:
        return PowerSeries(c[1:], 0, s.order - 1)
    return PowerSeries(c, s.lead - 1, s.order - 1)


def hadamard(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    """Coefficient-wise product of two series."""
    order = min(s.order, t.order)
    lead = max(s.lead, t.lead)
    if lead > order:
        return PowerSeries([0.0], order, order)
    a = s.coeffs[lead - s.lead: order - s.lead + 1]
    b = t.coeffs[lead - t.lead: order - t.lead + 1]
    return PowerSeries(a * b, lead, order)


def real_power(u: PowerSeries, t: float) -> PowerSeries:
    """Principal power ``u(z)**t`` for ``u = 1 + O(z)``.

    Uses the recurrence from ``g' u = t u' g``:
    ``m g_m = sum_{j=1..m} (t j - (m - j)) u_j g_{m-j}``.
    """
    if u.lead != 0 or u.coeffs[0] != 1:
        raise PreconditionError("real_power needs a series with constant term exactly 1")
    K = u.order
    g = np.zeros(K + 1, dtype=complex)
    g[0] = 1.0
    if t == 0:
        return PowerSeries(g, 0, K)
    uc = u.coeffs
    for m in range(1, K + 1):
        j = np.arange(1, m + 1)
        w = t * j - (m - j)
        g[m] = np.dot(w * uc[1: m + 1], g[m - 1:: -1]) / m
    return PowerSeries(g, 0, K)


class MuForm(NamedTuple):
    """``(z^p/f)^mu = 1 - sum_{k>=1} b[k-1] z^k``."""

    b: np.ndarray
    starts_at_p: bool
    p: int
    mu: float


def normalized(f: PowerSeries) -> PowerSeries:
    """``f(z)/z^p`` for ``f = z^p + ...``; rejects a non-unit leading coefficient."""
    if f.lead < 1:
        raise PreconditionError("f must start at z^p with p >= 1")
    if f.coeffs[0] != 1:
        raise PreconditionError("leading coefficient of f must be exactly 1, got %r" % complex(f.coeffs[0]))
    return f.shift(-f.lead)


def to_mu_form(f: PowerSeries, mu: float, tol: float = TOL_FORM) -> MuForm:
    if not mu > 0:
        raise InvariantError("mu must be positive")
    p = f.lead
    g = real_power(normalized(f), -mu)
    b = -np.array(g.coeffs[1:])
    starts = bool(np.all(np.abs(b[: p - 1]) <= tol))
    return MuForm(b, starts, p, float(mu))


def a_coefficients(f: PowerSeries) -> np.ndarray:
    """``a_{p+1}, ..., a_K`` of ``f = z^p + sum a_k z^k``."""
    normalized(f)
    return np.array(f.coeffs[1:])


def _horner(coeffs, z):
    acc = np.zeros_like(z, dtype=complex) + coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _check_radius(z, r_max):
    r = np.abs(z)
    if np.any(r >= 1.0):
        raise PreconditionError("evaluation point outside the open unit disk")
    if np.any(r > r_max):
        raise PreconditionError("|z| = %.17g exceeds r_max = %g" % (np.max(r), r_max))
    return r


def evaluate(s: PowerSeries, z, tail: TailModel = NO_TAIL, r_max: float = DEFAULT_R_MAX) -> EvalResult:
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=complex)
    r = _check_radius(z, r_max)
    value = _horner(s.coeffs, z)
    if s.lead:
        value = value * z ** s.lead
    bound = tail.bound(s.order, r)
    if value.ndim == 0:
        return EvalResult(complex(value), float(bound), tail.bounded)
    return EvalResult(value, np.broadcast_to(bound, value.shape), tail.bounded)


def eps_zero(z, p):
    return 1e-12 * np.maximum(1.0, np.abs(z) ** p)


def _log_derivative(f: PowerSeries, z, tail: TailModel = NO_TAIL):
    """Vectorized ``z f'(z)/f(z)``; returns (F, |f(z)|, bound on |error in F|).

    Computed as ``p + z u'(z)/u(z)`` with ``u = f/z^p`` so nothing underflows
    near the origin. The error bound propagates the tail model through u and u'.
    """
    p = f.lead
    u = f.shift(-p)
    j = np.arange(len(u.coeffs))
    uval = _horner(u.coeffs, z)
    duval = _horner(j * u.coeffs, z)  # z u'(z)
    r = np.abs(z)
    F = p + duval / np.where(uval == 0, 1.0, uval)
    fabs = np.abs(uval) * r ** p
    if tail.bounded:
        with np.errstate(divide="ignore", invalid="ignore"):
            rp = np.where(r > 0, r ** p, 1.0)
            eu = tail.bound(f.order, r, A=1.0) / rp
            ed = tail.bound(f.order, r, A=0.0, B=1.0) / rp
            den = np.abs(uval) - eu
            err = np.where(den > 0, (ed + np.abs(F - p) * eu) / den, np.inf)
    else:
        err = np.zeros(np.shape(F))
    return F, fabs, err


def log_derivative_F(f: PowerSeries, z: complex, r_max: float = DEFAULT_R_MAX) -> complex:
    """``F(z) = z f'(z) / f(z)`` at a single point of the disk."""
    z = complex(z)
    _check_radius(z, r_max)
    F, fabs, _ = _log_derivative(f, np.asarray(z))
    if fabs <= eps_zero(z, f.lead):
        raise NearZeroError("|f(z)| = %.3g is below eps_zero at z = %r" % (fabs, z))
    return complex(F)


__all__ = [
    "DEFAULT_ORDER", "DEFAULT_R_MAX", "TOL_FORM", "EvalResult", "MuForm", "NO_TAIL",
    "PowerSeries", "TailModel", "a_coefficients", "differentiate", "evaluate",
    "geometric", "hadamard", "log_derivative_F", "multiply", "normalized", "power",
    "real_power", "to_mu_form",
]

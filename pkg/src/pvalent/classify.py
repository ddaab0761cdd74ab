"""Membership in M_p(alpha, beta).

f = z^p + ... belongs to the class when, with F = z f'/f,

    Re F(z) < beta |F(z) - p| + p alpha      for all |z| < 1,

for some beta <= 0 and alpha > 1. This module evaluates that inequality
pointwise (the grid falsifier), describes the conic region it carves out
for F, and checks the three coefficient inequalities: two sufficient tests
(a_k form and b_k form) and one necessary test (b_k form, b_k >= 0).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._json import complex_pair
from .errors import InvariantError, PreconditionError
from .series import (
    NO_TAIL,
    TOL_FORM,
    MuForm,
    PowerSeries,
    TailModel,
    _log_derivative,
    a_coefficients,
    eps_zero,
    power,
)

PROVEN = "proven_member"
INCONCLUSIVE = "inconclusive"
VIOLATED = "necessary_violated"


@dataclass(frozen=True)
class ClassParams:
    p: int
    alpha: float
    beta: float
    mu: Optional[float] = None

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 1:
            raise InvariantError("p must be a positive integer, got %r" % (self.p,))
        if not self.alpha > 1:
            raise InvariantError("alpha must exceed 1, got %r" % (self.alpha,))
        if not self.beta <= 0:
            raise InvariantError("beta must be <= 0, got %r" % (self.beta,))
        if self.mu is not None and not self.mu > 0:
            raise InvariantError("mu must be positive, got %r" % (self.mu,))
        object.__setattr__(self, "p", int(self.p))

    def require_mu(self) -> float:
        if self.mu is None:
            raise InvariantError("this check needs mu in the class parameters")
        return self.mu

    def to_dict(self):
        d = {"p": self.p, "alpha": float(self.alpha), "beta": float(self.beta)}
        if self.mu is not None:
            d["mu"] = float(self.mu)
        return d

    @classmethod
    def from_dict(cls, d):
        try:
            mu = d.get("mu")
            return cls(int(d["p"]), float(d["alpha"]), float(d["beta"]), None if mu is None else float(mu))
        except (KeyError, TypeError) as exc:
            raise InvariantError("malformed class parameters: %s" % exc) from None


@dataclass(frozen=True)
class ConicShape:
    tag: str
    eccentricity: float


@dataclass(frozen=True)
class Certificate:
    theorem: str
    lhs_sum: float
    threshold: float
    margin: float
    tail_bound: float
    verdict: str
    # "bounded" (tail model used), "finite" (caller asserted no tail),
    # "heuristic" (truncated with no model) or "lower-bound" (T21, b_k >= 0)
    tail_status: str = "bounded"

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Grid:
    n_radii: int = 64
    n_angles: int = 64
    r_max: float = 0.99

    def __post_init__(self):
        if self.n_radii < 1 or self.n_angles < 1:
            raise InvariantError("grid needs at least one radius and one angle")
        if not 0 < self.r_max < 1:
            raise InvariantError("r_max must lie in (0, 1)")

    def radii(self):
        # Chebyshev-like clustering toward r_max; the last radius is r_max itself
        i = np.arange(1, self.n_radii + 1)
        return self.r_max * np.sin(0.5 * np.pi * i / self.n_radii)

    def angles(self):
        return 2 * np.pi * np.arange(self.n_angles) / self.n_angles

    def points(self):
        return self.radii()[:, None] * np.exp(1j * self.angles())[None, :]


@dataclass
class SampleReport:
    grid: Grid
    worst_slack: float
    violations: list = field(default_factory=list)  # (z, slack, error bound)
    skipped: list = field(default_factory=list)
    n_evaluated: int = 0

    @property
    def n_violations(self):
        return len(self.violations)

    def to_dict(self):
        return {
            "grid": asdict(self.grid),
            "worst_slack": self.worst_slack,
            "n_evaluated": self.n_evaluated,
            "violations": [[z.real, z.imag, s] for z, s, _ in self.violations],
            "violation_errors": [e for _, _, e in self.violations],
            "skipped": [complex_pair(z) for z in self.skipped],
        }


def slack(F_val, params: ClassParams):
    """``p alpha + beta |F - p| - Re F``; positive iff the defining inequality holds."""
    p = params.p
    return p * params.alpha + params.beta * np.abs(F_val - p) - np.real(F_val)


def conic_shape(params: ClassParams) -> ConicShape:
    b = params.beta
    if b == 0:
        return ConicShape("halfplane", math.inf)
    ecc = -1.0 / b
    if b < -1:
        return ConicShape("elliptic", ecc)
    if b == -1:
        return ConicShape("parabolic", ecc)
    return ConicShape("hyperbolic", ecc)


def _focus_directrix_residual(u, v, params):
    p, a, b = params.p, params.alpha, params.beta
    return u - p * a - b * math.hypot(u - p, v)


def conic_boundary(params: ClassParams, v_values: Sequence[float], tol: float = 1e-9):
    """Points (u, v) with ``u - p alpha = beta sqrt((u-p)^2 + v^2)``.

    For the ellipse both roots at a given v lie on the boundary and both are
    returned (smaller u first); for the hyperbola only the branch on the
    focus side of the directrix qualifies. Values of v that the curve never
    reaches are skipped.
    """
    p, alpha, beta = params.p, params.alpha, params.beta
    d = p * alpha
    out = []
    for v in v_values:
        v = float(v)
        if beta == 0:
            out.append((d, v))
            continue
        if beta == -1:
            u = (d * d - p * p - v * v) / (2 * p * (alpha - 1))
            out.append((u, v))
            continue
        b2 = beta * beta
        qa = 1 - b2
        qb = -2 * (d - b2 * p)
        qc = d * d - b2 * p * p - b2 * v * v
        disc = qb * qb - 4 * qa * qc
        if disc < 0:
            continue
        sq = math.sqrt(disc)
        # cancellation-free pair of roots
        qq = -0.5 * (qb + math.copysign(sq, qb))
        roots = sorted({qq / qa, qc / qq} if qq != 0 else {-qb / (2 * qa)})
        for u in roots:
            scale = max(1.0, abs(d), abs(u))
            if u <= d + tol * scale and abs(_focus_directrix_residual(u, v, params)) <= tol * scale:
                out.append((u, v))
    return out


def t23_weights(params: ClassParams, K: int) -> np.ndarray:
    """Weights ``p alpha + beta + k (1 - beta)`` for k = p+1 .. K."""
    k = np.arange(params.p + 1, K + 1)
    return params.p * params.alpha + params.beta + k * (1 - params.beta)


def _resolve_tail(tail: TailModel, assume_finite: bool, bound):
    if tail.bounded:
        return float(bound), "bounded"
    if assume_finite:
        return 0.0, "finite"
    return 0.0, "heuristic"


def _sufficient(theorem, lhs, threshold, tail_bound, status):
    lhs, threshold, tail_bound = float(lhs), float(threshold), float(tail_bound)
    ok = status != "heuristic" and lhs + tail_bound < threshold
    return Certificate(theorem, lhs, threshold, threshold - lhs, tail_bound, PROVEN if ok else INCONCLUSIVE, status)


def certify_T23(a, params: ClassParams, tail: TailModel = NO_TAIL, assume_finite: bool = False) -> Certificate:
    """Sufficient test ``sum_{k>p} [p alpha + beta + k(1-beta)] |a_k| < p(alpha-1)``.

    ``a`` is either the function itself (``PowerSeries`` starting at z^p) or
    the array ``a_{p+1}, a_{p+2}, ...``.
    """
    if isinstance(a, PowerSeries):
        if a.lead != params.p:
            raise PreconditionError("series starts at z^%d but p = %d" % (a.lead, params.p))
        a = a_coefficients(a)
    mods = np.abs(np.asarray(a, dtype=complex))
    K = params.p + len(mods)
    w = t23_weights(params, K)
    assert np.all(np.diff(w) > 0), "weights must increase with k"
    lhs = math.fsum(w * mods)
    bound = tail.bound(K, 1.0, A=params.p * params.alpha + params.beta, B=1 - params.beta)
    tb, status = _resolve_tail(tail, assume_finite, bound)
    return _sufficient("T23_sufficient", lhs, params.p * (params.alpha - 1), tb, status)


def _b_array(b, params: ClassParams):
    if isinstance(b, MuForm):
        if b.p != params.p:
            raise PreconditionError("b-form was computed for p = %d, not %d" % (b.p, params.p))
        if params.mu is not None and b.mu != params.mu:
            raise PreconditionError("b-form was computed for mu = %r, not %r" % (b.mu, params.mu))
        b = b.b
    b = np.asarray(b, dtype=complex)
    p = params.p
    if np.any(np.abs(b[: p - 1]) > TOL_FORM):
        raise PreconditionError("form violation: b_k != 0 for some k < p = %d" % p)
    return b


def _b_weights(params: ClassParams, K: int):
    mu = params.require_mu()
    k = np.arange(params.p, K + 1)
    return params.p * mu * (params.alpha - 1) + k * (1 - params.beta)


def certify_T22(b, params: ClassParams, tail: TailModel = NO_TAIL, assume_finite: bool = False) -> Certificate:
    """Sufficient test ``sum_{k>=p} [p mu (alpha-1) + k(1-beta)] |b_k| < p mu (alpha-1)``.

    ``b`` holds ``b_1, b_2, ...`` (or is a ``MuForm``); entries below k = p
    must vanish.
    """
    mu = params.require_mu()
    b = _b_array(b, params)
    p = params.p
    K = len(b)
    w = _b_weights(params, K)
    lhs = math.fsum(w * np.abs(b[p - 1:]))
    bound = tail.bound(K, 1.0, A=p * mu * (params.alpha - 1), B=1 - params.beta)
    tb, status = _resolve_tail(tail, assume_finite, bound)
    return _sufficient("T22_sufficient", lhs, p * mu * (params.alpha - 1), tb, status)


def check_T21_necessary(b, params: ClassParams, tail: TailModel = NO_TAIL) -> Certificate:
    """Necessary test for members with ``b_k >= 0`` and ``sum b_k < 1``.

    Members satisfy ``sum [p mu (alpha-1) + k(1-beta)] b_k <= p mu (alpha-1)``,
    so a larger sum proves non-membership. All terms are nonnegative, hence
    the stored sum is already a lower bound for the full one.
    """
    mu = params.require_mu()
    b = _b_array(b, params)
    if np.any(np.abs(b.imag) > TOL_FORM) or np.any(b.real < 0):
        raise PreconditionError("necessary test needs real b_k >= 0")
    b = b.real
    if not math.fsum(b) < 1:
        raise PreconditionError("necessary test needs sum b_k < 1")
    p = params.p
    K = len(b)
    w = _b_weights(params, K)
    lhs = math.fsum(w * b[p - 1:])
    threshold = float(p * mu * (params.alpha - 1))
    if tail.bounded:
        tb, status = float(tail.bound(K, 1.0, A=threshold, B=1 - params.beta)), "bounded"
    else:
        tb, status = 0.0, "lower-bound"
    verdict = VIOLATED if lhs - tb > threshold else INCONCLUSIVE
    return Certificate("T21_necessary", lhs, threshold, threshold - lhs, tb, verdict, status)


def paper_example(p: int, alpha: float, beta: float, theta: float, K: int) -> PowerSeries:
    """``z^p + sum_{k=p+1}^K p(p-1)(alpha-1) e^{i theta} / ([p alpha + beta + k(1-beta)] k (k-1)) z^k``."""
    params = ClassParams(p, alpha, beta)
    if K < p + 1:
        raise PreconditionError("K must be at least p + 1")
    k = np.arange(p + 1, K + 1)
    a = p * (p - 1) * (alpha - 1) * np.exp(1j * theta) / (t23_weights(params, K) * k * (k - 1))
    return PowerSeries(np.concatenate([[1.0], a]), p, K)


def paper_example_tail(p: int, alpha: float, beta: float) -> TailModel:
    """Rigorous decay model for the example's coefficients.

    The weight is at least k and k - 1 >= k/2, so
    ``|a_k| <= 2 p (p-1) (alpha-1) / k^3``.
    """
    return power(3, 2 * p * (p - 1) * (alpha - 1))


def sample_membership(f: PowerSeries, params: ClassParams, grid: Grid = Grid(), tail: TailModel = NO_TAIL) -> SampleReport:
    """Evaluate the defining inequality on a polar grid.

    A point with slack <= 0 is a violation, i.e. evidence that f is not in the
    class; its error bound (from ``tail``) is kept next to it. Points where
    |f(z)| is below ``eps_zero`` are listed as skipped and never judged.
    """
    if f.lead != params.p:
        raise PreconditionError("series starts at z^%d but p = %d" % (f.lead, params.p))
    if f.coeffs[0] != 1:
        raise PreconditionError("f must be normalized: leading coefficient 1")
    z = grid.points()
    F, fabs, err = _log_derivative(f, z, tail)
    sl = slack(F, params)
    skip = fabs <= eps_zero(z, params.p)
    ok = ~skip
    worst = float(np.min(sl[ok])) if np.any(ok) else math.inf
    # row-major over (radius, angle): violations come out sorted by (r, theta)
    bad = ok & (sl <= 0)
    slack_err = (1 + abs(params.beta)) * err
    violations = [(complex(z[i, j]), float(sl[i, j]), float(slack_err[i, j])) for i, j in zip(*np.nonzero(bad))]
    skipped = [complex(z[i, j]) for i, j in zip(*np.nonzero(skip))]
    return SampleReport(grid, worst, violations, skipped, int(np.count_nonzero(ok)))

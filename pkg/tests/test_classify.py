import math

import numpy as np
import pytest

from pvalent import (
    ClassParams,
    Grid,
    InvariantError,
    PowerSeries,
    PreconditionError,
    certify_T22,
    certify_T23,
    check_T21_necessary,
    conic_boundary,
    conic_shape,
    geometric,
    log_derivative_F,
    paper_example,
    paper_example_tail,
    real_power,
    sample_membership,
    slack,
    to_mu_form,
)
from pvalent.classify import t23_weights


def residual(u, v, params):
    return abs(abs(u - params.p * params.alpha) - abs(params.beta) * math.hypot(u - params.p, v))


def F_from_b(b, p, mu, z):
    """F = p + (1/mu) sum k b_k z^k / (1 - sum b_k z^k), b indexed from k = 1."""
    k = np.arange(1, len(b) + 1)
    num = np.sum(k * b * z**k)
    den = 1 - np.sum(b * z**k)
    return p + num / (mu * den)


class TestClassParams:
    @pytest.mark.parametrize("kw", [dict(p=0, alpha=2, beta=0), dict(p=1, alpha=1, beta=0),
                                    dict(p=1, alpha=2, beta=0.1), dict(p=1, alpha=2, beta=0, mu=0)])
    def test_invariants(self, kw):
        with pytest.raises(InvariantError):
            ClassParams(**kw)

    def test_json(self):
        c = ClassParams(2, 1.5, -0.5, 2.0)
        assert ClassParams.from_dict(c.to_dict()) == c
        assert "mu" not in ClassParams(1, 2, 0).to_dict()


class TestSlack:
    def test_at_p(self):
        assert slack(3, ClassParams(3, 1.7, -2)) == pytest.approx(3 * 0.7)

    def test_parabola_vertex(self):
        assert slack(1.5, ClassParams(1, 2, -1)) == 0

    def test_violation(self):
        assert slack(19.63, ClassParams(1, 1.1, 0)) == pytest.approx(1.1 - 19.63)


class TestConic:
    @pytest.mark.parametrize("beta,tag,ecc", [(-2, "elliptic", 0.5), (-1, "parabolic", 1.0),
                                              (-0.5, "hyperbolic", 2.0), (0, "halfplane", math.inf)])
    def test_shape(self, beta, tag, ecc):
        s = conic_shape(ClassParams(1, 2, beta))
        assert s.tag == tag and s.eccentricity == ecc

    def test_parabola_vertex(self):
        pts = conic_boundary(ClassParams(1, 2, -1), [0.0])
        assert pts == [(1.5, 0.0)]

    def test_directrix(self):
        assert conic_boundary(ClassParams(1, 2, 0), [0.7]) == [(2, 0.7)]

    @pytest.mark.parametrize("p,alpha,beta", [(2, 1.5, -2), (1, 2, -1), (1, 3, -0.5), (3, 1.2, -0.1), (2, 4, -7)])
    def test_residual(self, p, alpha, beta):
        params = ClassParams(p, alpha, beta)
        pts = conic_boundary(params, np.linspace(-5, 5, 201))
        assert pts
        for u, v in pts:
            assert residual(u, v, params) <= 1e-10
            assert u <= p * alpha + 1e-12

    def test_ellipse_has_both_sides(self):
        params = ClassParams(2, 1.5, -2)
        pts = conic_boundary(params, [0.0])
        # focus 2, directrix 3, eccentricity 1/2: vertices at 7/3 and 1
        np.testing.assert_allclose(sorted(u for u, _ in pts), [1.0, 7 / 3], rtol=1e-14)

    def test_hyperbola_unbounded_v(self):
        pts = conic_boundary(ClassParams(1, 2, -0.5), [0, 100.0])
        assert len(pts) == 2

    def test_boundary_points_have_zero_slack(self):
        params = ClassParams(2, 1.5, -2)
        for u, v in conic_boundary(params, np.linspace(-1, 1, 11)):
            assert abs(slack(complex(u, v), params)) <= 1e-12


class TestT23:
    def test_zero(self):
        c = certify_T23([0, 0, 0], ClassParams(2, 1.5, -1), assume_finite=True)
        assert c.verdict == "proven_member" and c.lhs_sum == 0 and c.margin == 1.0

    def test_member(self):
        c = certify_T23([0.2], ClassParams(1, 2, 0), assume_finite=True)
        assert c.lhs_sum == pytest.approx(0.8)
        assert c.verdict == "proven_member"

    def test_inconclusive(self):
        c = certify_T23([0.3], ClassParams(1, 2, 0), assume_finite=True)
        assert c.lhs_sum == pytest.approx(1.2)
        assert c.verdict == "inconclusive"
        assert c.margin == c.threshold - c.lhs_sum

    def test_member_confirmed_by_sampling(self):
        f = PowerSeries([1, 0.2], lead=1)
        assert sample_membership(f, ClassParams(1, 2, 0), Grid(32, 32, 0.999)).n_violations == 0

    def test_no_tail_model_is_heuristic(self):
        c = certify_T23([0.2], ClassParams(1, 2, 0))
        assert c.tail_status == "heuristic" and c.verdict == "inconclusive"

    def test_tail_model_counts(self):
        # a_k <= 0.05 * 0.5^k beyond the stored terms
        params = ClassParams(1, 2, 0)
        c = certify_T23([0.05 * 0.25], params, geometric(0.5, 0.05))
        k = np.arange(3, 400)
        exact_tail = np.sum((2 + k) * 0.05 * 0.5**k)
        assert c.tail_bound == pytest.approx(exact_tail, rel=1e-12)
        assert c.verdict == "proven_member"

    def test_boundary_is_inconclusive(self):
        # weight at k=2 is 4, threshold 1: lhs exactly 1
        c = certify_T23([0.25], ClassParams(1, 2, 0), assume_finite=True)
        assert c.lhs_sum == 1 and c.verdict == "inconclusive"

    def test_accepts_series(self):
        f = PowerSeries([1, 0.1, 0.05j], lead=2)
        c1 = certify_T23(f, ClassParams(2, 2, -1), assume_finite=True)
        c2 = certify_T23([0.1, 0.05j], ClassParams(2, 2, -1), assume_finite=True)
        assert c1 == c2

    def test_weights_increase(self):
        for beta in [0, -0.3, -5]:
            w = t23_weights(ClassParams(3, 1.01, beta), 50)
            assert np.all(np.diff(w) > 0) and np.all(w > 0)


class TestT22:
    def test_zero(self):
        c = certify_T22(np.zeros(5), ClassParams(2, 2, -1, 1.0), assume_finite=True)
        assert c.verdict == "proven_member"

    def test_member(self):
        c = certify_T22([0.2], ClassParams(1, 2, -1, 1.0), assume_finite=True)
        assert c.lhs_sum == pytest.approx(0.6)
        assert c.verdict == "proven_member"

    def test_form_violation(self):
        with pytest.raises(PreconditionError, match="form"):
            certify_T22([0.1, 0.0], ClassParams(2, 2, -1, 1.0))

    def test_needs_mu(self):
        with pytest.raises(InvariantError):
            certify_T22([0.1], ClassParams(1, 2, -1))

    def test_from_series_confirmed_by_sampling(self):
        # f = z / (1 - 0.2 z): (z/f)^1 = 1 - 0.2 z exactly
        K = 60
        f = PowerSeries(0.2 ** np.arange(K), lead=1, order=K)
        params = ClassParams(1, 2, -1, 1.0)
        c = certify_T22(to_mu_form(f, 1.0), params, assume_finite=True)
        assert c.verdict == "proven_member"
        assert sample_membership(f, params, Grid(32, 32, 0.99)).n_violations == 0


class TestT21:
    def test_zero(self):
        c = check_T21_necessary(np.zeros(3), ClassParams(1, 2, 0, 2.0))
        assert c.verdict == "inconclusive" and c.margin == pytest.approx(2.0)

    def test_violated(self):
        params = ClassParams(1, 1.1, 0, 1.0)
        c = check_T21_necessary([0.95], params)
        assert c.lhs_sum == pytest.approx(1.045)
        assert c.threshold == pytest.approx(0.1)
        assert c.verdict == "necessary_violated"
        F = F_from_b(np.array([0.95]), 1, 1.0, 0.999)
        assert slack(F, params) < 0

    def test_equality_is_inconclusive(self):
        # weight at k=1: 1*1*1 + 1 = 2, threshold 1 -> b_1 = 0.5 gives equality
        c = check_T21_necessary([0.5], ClassParams(1, 2, 0, 1.0))
        assert c.lhs_sum == c.threshold and c.verdict == "inconclusive"

    def test_rejects_negative(self):
        with pytest.raises(PreconditionError):
            check_T21_necessary([-0.1], ClassParams(1, 2, 0, 1.0))

    def test_rejects_large_sum(self):
        with pytest.raises(PreconditionError):
            check_T21_necessary([0.6, 0.5], ClassParams(1, 2, 0, 1.0))

    def test_contrapositive_instances(self, rng):
        found = 0
        while found < 40:
            p = int(rng.integers(1, 4))
            mu = float(rng.choice([0.5, 1.0, 2.0]))
            params = ClassParams(p, float(rng.uniform(1.01, 2.5)), float(rng.uniform(-2, 0)), mu)
            n = int(rng.integers(1, 6))
            b = np.zeros(p - 1 + n)
            b[p - 1:] = rng.dirichlet(np.ones(n)) * rng.uniform(0.3, 0.97)
            c = check_T21_necessary(b, params)
            if not (c.verdict == "necessary_violated" and c.lhs_sum - c.threshold >= 0.5):
                continue
            found += 1
            slacks = [slack(F_from_b(b, p, mu, z), params) for z in (0.9, 0.99, 0.999, 0.9999)]
            assert min(slacks) <= 0

    def test_b_form_series_agrees(self):
        # route through the series machinery for one instance
        p, mu = 1, 2.0
        params = ClassParams(p, 1.2, -0.5, mu)
        b = np.array([0.6])
        G = PowerSeries([1, -0.6], 0, 400)
        f = real_power(G, -1 / mu).shift(p)
        form = to_mu_form(f, mu)
        np.testing.assert_allclose(form.b[:3], [0.6, 0, 0], atol=1e-14)
        z = 0.9
        assert log_derivative_F(f, z) == pytest.approx(F_from_b(b, p, mu, z), rel=1e-12)


class TestWorkedExample:
    def test_p1_is_monomial(self):
        f = paper_example(1, 2, -1, 0.3, 10)
        np.testing.assert_array_equal(f.coeffs, [1] + [0] * 9)

    def test_lhs_telescopes(self):
        p, alpha, beta, K = 3, 2, -1, 10_000
        f = paper_example(p, alpha, beta, 0.0, K)
        c = certify_T23(f, ClassParams(p, alpha, beta), paper_example_tail(p, alpha, beta))
        assert c.lhs_sum == pytest.approx(6 * (1 / 3 - 1 / K), abs=1e-12)
        assert abs(c.lhs_sum - (p - 1) * (alpha - 1)) <= p * (p - 1) * (alpha - 1) / K
        assert c.threshold == 3 and c.verdict == "proven_member"

    def test_theta_invariance(self):
        params = ClassParams(4, 1.5, -0.3)
        tail = paper_example_tail(4, 1.5, -0.3)
        c0 = certify_T23(paper_example(4, 1.5, -0.3, 0, 500), params, tail)
        for theta in [math.pi / 2, 1.234, -3]:
            c = certify_T23(paper_example(4, 1.5, -0.3, theta, 500), params, tail)
            assert c.verdict == c0.verdict
            assert abs(c.lhs_sum - c0.lhs_sum) <= 1e-14

    def test_tail_model_is_valid(self):
        for p, alpha, beta in [(2, 1.1, -3), (3, 2, -1), (5, 4, 0)]:
            f = paper_example(p, alpha, beta, 0, 300)
            k = np.arange(p + 1, 301)
            bound = 2 * p * (p - 1) * (alpha - 1) / k**3
            assert np.all(np.abs(f.coeffs[1:]) <= bound)

    def test_sampling(self):
        p, alpha, beta = 3, 2, -1
        rep = sample_membership(paper_example(p, alpha, beta, 0.7, 2000), ClassParams(p, alpha, beta), Grid(64, 64, 0.95))
        assert rep.n_violations == 0 and rep.worst_slack > 0


class TestSampling:
    def test_monomial(self):
        params = ClassParams(2, 1.7, -0.5)
        rep = sample_membership(PowerSeries.monomial(2, order=5), params)
        assert rep.n_violations == 0
        assert rep.worst_slack == pytest.approx(2 * 0.7, abs=1e-14)
        assert rep.n_evaluated == 64 * 64

    def test_counterexample(self):
        K = 2000
        f = PowerSeries(0.95 ** np.arange(K), lead=1, order=K)
        rep = sample_membership(f, ClassParams(1, 1.1, 0), Grid(16, 16, 0.999), geometric(0.95, 1.0))
        assert rep.n_violations >= 1
        at_rim = [(s, err) for z, s, err in rep.violations if abs(z - 0.999) < 1e-12]
        assert len(at_rim) == 1
        s, err = at_rim[0]
        assert s == pytest.approx(1.1 - (1 + 0.95 * 0.999 / (1 - 0.95 * 0.999)), abs=1e-9)
        assert s + err < 0

    def test_violations_are_exactly_nonpositive_slack(self, rng):
        K = 12
        f = PowerSeries(np.concatenate([[1], rng.uniform(-0.4, 0.4, K)]), lead=1)
        params = ClassParams(1, 1.3, -0.5)
        grid = Grid(8, 12, 0.9)
        rep = sample_membership(f, params, grid)
        expected = []
        for r in grid.radii():
            for t in grid.angles():
                z = r * np.exp(1j * t)
                s = slack(log_derivative_F(f, z), params)
                if s <= 0:
                    expected.append((z, s))
        assert len(expected) == rep.n_violations
        for (z, s), (z2, s2, _) in zip(expected, rep.violations):
            assert z == z2 and s == pytest.approx(s2, abs=1e-12)

    def test_skipped_points(self):
        # f = z(1 - 2z) has a zero on the positive axis at r = 1/2
        f = PowerSeries([1, -2], lead=1)
        grid = Grid(3, 4, 0.5 / math.sin(0.5 * math.pi * 2 / 3))
        rep = sample_membership(f, ClassParams(1, 2, 0), grid)
        assert len(rep.skipped) == 1 and abs(rep.skipped[0] - 0.5) < 1e-12
        assert rep.n_evaluated == 11

    def test_grid_shape(self):
        g = Grid(64, 64, 0.99)
        r = g.radii()
        assert r[-1] == pytest.approx(0.99) and np.all(np.diff(r) > 0) and r[0] > 0
        # spacing shrinks toward the rim
        assert np.diff(r)[-1] < np.diff(r)[0]

    def test_deterministic(self, rng):
        f = PowerSeries(np.concatenate([[1], rng.uniform(-0.5, 0.5, 10)]), lead=1)
        a = sample_membership(f, ClassParams(1, 1.2, -0.2)).to_dict()
        b = sample_membership(f, ClassParams(1, 1.2, -0.2)).to_dict()
        assert a == b

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from domain_ensemble import (
    DomainSpec,
    InfeasibleError,
    InvalidInputError,
    OutOfRangeError,
    ThreeStateWeights,
    edge_weights_algebraic,
    entropy,
    gamma_from_nu,
    nu_from_gamma,
    report,
    weights_from_gamma,
)
from domain_ensemble.ensemble_core import log_partition_three_state

# frozen from oracles (40-digit mpmath) at q=1, gamma=1
W_MINUS_1 = 0.66524095577482189
W_CENTER_1 = 0.24472847105479765
W_PLUS_1 = 0.090030573170380458
NU_1 = -0.57521038260444143
S_1 = 0.83239558183993887
# oracles.gamma_for_nu(3, 2.9)
GAMMA_Q3_NU29 = -1.1436807324709619

gammas = st.floats(min_value=-30.0, max_value=30.0, allow_nan=False)
qs = st.integers(min_value=1, max_value=4)


def test_frozen_values_match_oracle():
    w = oracles.weights(1, 1)
    assert float(w[0]) == pytest.approx(W_MINUS_1, abs=1e-16)
    assert float(w[1]) == pytest.approx(W_CENTER_1, abs=1e-16)
    assert float(w[2]) == pytest.approx(W_PLUS_1, abs=1e-16)
    assert float(oracles.nu(1, 1)) == pytest.approx(NU_1, abs=1e-16)
    assert float(oracles.entropy(w)) == pytest.approx(S_1, abs=1e-16)
    assert float(oracles.gamma_for_nu(3, 2.9)) == pytest.approx(GAMMA_Q3_NU29, abs=1e-15)


class TestWeights:
    @pytest.mark.parametrize("q", [1, 2, 3, 7])
    def test_uniform_at_zero(self, q):
        assert weights_from_gamma(q, 0.0).as_tuple() == (1 / 3, 1 / 3, 1 / 3)

    def test_gamma_one(self):
        w = weights_from_gamma(1, 1.0)
        assert w.w_minus == pytest.approx(W_MINUS_1, abs=1e-15)
        assert w.w_center == pytest.approx(W_CENTER_1, abs=1e-15)
        assert w.w_plus == pytest.approx(W_PLUS_1, abs=1e-15)

    def test_depends_on_q_gamma_only(self):
        a = weights_from_gamma(1, 1.0).as_tuple()
        b = weights_from_gamma(2, 0.5).as_tuple()
        assert a == pytest.approx(b, abs=1e-15)

    @pytest.mark.parametrize("gamma", [710.0, -710.0, 1e6, -1e300])
    def test_no_overflow(self, gamma):
        w = weights_from_gamma(1, gamma)
        assert sum(w.as_tuple()) == pytest.approx(1.0, abs=1e-15)
        assert (w.w_minus if gamma > 0 else w.w_plus) == 1.0

    @pytest.mark.parametrize("gamma", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, gamma):
        with pytest.raises(InvalidInputError):
            weights_from_gamma(1, gamma)

    @pytest.mark.parametrize("q", [0, -1, 1.5, True, "2"])
    def test_rejects_bad_q(self, q):
        with pytest.raises(InvalidInputError):
            weights_from_gamma(q, 0.1)

    @given(qs, gammas)
    def test_against_oracle(self, q, gamma):
        w = weights_from_gamma(q, gamma).as_tuple()
        ref = oracles.weights(q, gamma)
        for a, b in zip(w, ref):
            assert a == pytest.approx(float(b), abs=1e-14)

    @given(qs, gammas)
    def test_normalised_and_bounded(self, q, gamma):
        w = weights_from_gamma(q, gamma)
        assert abs(sum(w.as_tuple()) - 1.0) <= 1e-12
        assert 0.0 < w.w_center <= 1 / 3
        # strict below 1/3 once the deviation 1/3 - w ~ x^2/9 exceeds rounding
        if abs(q * gamma) > 1e-6:
            assert w.w_center < 1 / 3

    @given(qs, gammas)
    def test_symmetry(self, q, gamma):
        w, m = weights_from_gamma(q, gamma), weights_from_gamma(q, -gamma)
        assert abs(w.w_plus - m.w_minus) <= 1e-12
        assert abs(w.w_center - m.w_center) <= 1e-12

    def test_weights_type_invariants(self):
        with pytest.raises(InvalidInputError):
            ThreeStateWeights(0.5, 0.5, 0.5)
        with pytest.raises(InvalidInputError):
            ThreeStateWeights(-0.1, 0.6, 0.5)


class TestNetCharge:
    def test_examples(self):
        assert nu_from_gamma(1, 0.0) == 0.0
        assert nu_from_gamma(1, 1.0) == pytest.approx(NU_1, abs=1e-15)
        assert nu_from_gamma(2, 0.5) == pytest.approx(2 * NU_1, abs=1e-15)

    @given(qs, gammas)
    def test_matches_weight_difference(self, q, gamma):
        w = weights_from_gamma(q, gamma)
        assert abs(q * (w.w_plus - w.w_minus) - nu_from_gamma(q, gamma)) <= 1e-12

    @given(qs, gammas)
    def test_against_oracle(self, q, gamma):
        assert nu_from_gamma(q, gamma) == pytest.approx(float(oracles.nu(q, gamma)), abs=1e-14)

    @given(qs, gammas)
    def test_odd_and_bounded(self, q, gamma):
        v = nu_from_gamma(q, gamma)
        assert abs(v + nu_from_gamma(q, -gamma)) <= 1e-12
        assert -q <= v <= q
        if abs(q * gamma) < 30:
            assert -q < v < q

    @given(qs, gammas)
    def test_scaling_collapse(self, q, gamma):
        assert abs(nu_from_gamma(q, gamma) - q * nu_from_gamma(1, q * gamma)) <= 1e-12

    @given(qs, gammas, gammas)
    def test_strictly_decreasing(self, q, g1, g2):
        g1, g2 = sorted((g1 / 3, g2 / 3))
        if g2 - g1 > 1e-6:
            assert nu_from_gamma(q, g1) > nu_from_gamma(q, g2)

    def test_tails(self):
        assert abs(nu_from_gamma(1, -20.0) - 1.0) < 1e-8
        assert abs(nu_from_gamma(1, 20.0) + 1.0) < 1e-8
        assert weights_from_gamma(1, -20.0).w_plus > 1 - 1e-8
        assert weights_from_gamma(1, 20.0).w_minus > 1 - 1e-8


class TestInversion:
    def test_examples(self):
        assert gamma_from_nu(1, 0.0) == 0.0
        assert gamma_from_nu(1, NU_1) == pytest.approx(1.0, abs=1e-12)
        g = gamma_from_nu(3, 2.9)
        assert g == pytest.approx(GAMMA_Q3_NU29, abs=1e-12)
        assert abs(nu_from_gamma(3, g) - 2.9) <= 1e-10

    @pytest.mark.parametrize("nu", [1.0, -1.0, 1.5, -3.0])
    def test_edges_rejected(self, nu):
        with pytest.raises(OutOfRangeError, match=r"strictly inside"):
            gamma_from_nu(1, nu)

    @settings(max_examples=300)
    @given(st.floats(min_value=-10.0, max_value=10.0))
    def test_round_trip_q1(self, gamma):
        assert abs(gamma - gamma_from_nu(1, nu_from_gamma(1, gamma))) < 1e-9

    @settings(max_examples=300)
    @given(qs, st.floats(min_value=-10.0, max_value=10.0))
    def test_round_trip_reduced_variable(self, q, x):
        # |q gamma| <= 10 keeps the charge well resolved in double precision
        gamma = x / q
        assert abs(gamma - gamma_from_nu(q, nu_from_gamma(q, gamma))) < 1e-9

    @given(qs, st.floats(min_value=-0.999999999, max_value=0.999999999))
    def test_forward_of_inverse(self, q, r):
        assert abs(nu_from_gamma(q, gamma_from_nu(q, q * r)) - q * r) <= 1e-12 * q

    @pytest.mark.parametrize("r", [1 - 1e-7, -(1 - 1e-7), 1 - 1e-12, -(1 - 1e-13)])
    def test_near_edge_matches_bisection_oracle(self, r):
        g = gamma_from_nu(1, r)
        ref = float(oracles.gamma_for_nu(1, r))
        assert g == pytest.approx(ref, rel=1e-6)


class TestAlgebraicWeights:
    def test_symmetric(self):
        a, b = edge_weights_algebraic(1 / 3, 0.0, 1)
        assert a == pytest.approx(1 / 3, abs=1e-16)
        assert b == pytest.approx(1 / 3, abs=1e-16)

    def test_reproduces_statistical_weights(self):
        a, b = edge_weights_algebraic(W_CENTER_1, NU_1, 1)
        assert a == pytest.approx(W_MINUS_1, abs=1e-15)
        assert b == pytest.approx(W_PLUS_1, abs=1e-15)

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            edge_weights_algebraic(0.4, 0.8, 1)

    @given(qs, gammas)
    def test_equivalence(self, q, gamma):
        w = weights_from_gamma(q, gamma)
        a, b = edge_weights_algebraic(w.w_center, nu_from_gamma(q, gamma), q)
        assert abs(a - w.w_minus) <= 1e-12
        assert abs(b - w.w_plus) <= 1e-12

    @given(qs, st.floats(-1, 1), st.floats(0, 1))
    def test_sums_to_one(self, q, r, c):
        c = c * (1 - abs(r))
        a, b = edge_weights_algebraic(c, q * r, q)
        assert abs(a + b + c - 1.0) <= 1e-12
        assert min(a, b) >= -1e-15


class TestEntropy:
    def test_examples(self):
        assert entropy(ThreeStateWeights(1 / 3, 1 / 3, 1 / 3)) == pytest.approx(math.log(3), abs=1e-15)
        w = ThreeStateWeights(W_MINUS_1, W_CENTER_1, W_PLUS_1)
        assert entropy(w) == pytest.approx(S_1, abs=1e-15)
        assert entropy(ThreeStateWeights(0.0, 1.0, 0.0)) == 0.0

    @given(qs, gammas)
    def test_legendre_identity(self, q, gamma):
        s = entropy(weights_from_gamma(q, gamma))
        assert abs(s - (log_partition_three_state(q, gamma) + gamma * nu_from_gamma(q, gamma))) <= 1e-10
        assert 0.0 <= s <= math.log(3) + 1e-15

    def test_identity_against_oracle(self):
        for gamma in (-3.0, -0.2, 0.7, 2.5):
            assert entropy(weights_from_gamma(2, gamma)) == pytest.approx(
                float(oracles.entropy(oracles.weights(2, gamma))), abs=1e-14
            )


class TestReport:
    def test_uniform(self):
        r = report(DomainSpec("x", 7, 1), 0.0)
        assert r.population == 7.0
        assert r.entropy == pytest.approx(math.log(3), abs=1e-15)
        assert r.chi == 0.0

    def test_gamma_one(self):
        r = report(DomainSpec("x", 7, 1), 1.0)
        assert r.population == pytest.approx(7 + NU_1, abs=1e-14)
        assert r.chi == -1.0

    def test_scaled(self):
        assert report(DomainSpec("x", 8, 2), 0.5).population == pytest.approx(8 + 2 * NU_1, abs=1e-14)

    @given(qs, gammas)
    def test_consistency(self, q, gamma):
        r = report(DomainSpec("d", 10, q), gamma)
        assert abs(r.nu - q * (r.weights.w_plus - r.weights.w_minus)) <= 1e-12
        assert r.chi == -r.gamma

    @pytest.mark.parametrize(
        "args", [("a", 0, 1), ("a", 2, 3), ("a", -1, 1), ("a", 3, 0), ("a", 3.0, 1), (1, 3, 1)]
    )
    def test_domain_spec_invariants(self, args):
        with pytest.raises(InvalidInputError):
            DomainSpec(*args)

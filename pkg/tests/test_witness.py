import math

import numpy as np
import pytest

from qwitness import algebra, dynamics, measurement, witness
from qwitness.dynamics import SystemParams
from qwitness.errors import DomainError
from qwitness.witness import ProtocolConfig

DAMPED = SystemParams(omega=1.0, gamma0=0.1, nbar=0.0)
UNDAMPED = SystemParams(omega=1.0)

# frozen reference values, computed from the closed-form expressions
P_UNMEASURED_PI = 0.0726820004233833  # (1 - exp(-0.05 pi)) / 2
P_MEASURED_HALFPI_06 = 0.5462232625188129  # strength 0.6 at tau = pi/2
WITNESS_PEAK_DAMPED = 0.4273179995766167  # exp(-0.05 pi) / 2


def _config(params=DAMPED, tau=math.pi, epsilon=1.0):
    return ProtocolConfig(params=params, tau=tau, epsilon=epsilon)


def _random_config(rng):
    params = SystemParams(
        omega=rng.uniform(0.2, 3.0),
        gamma0=rng.uniform(0.0, 0.5),
        nbar=rng.uniform(0.0, 2.0),
    )
    return ProtocolConfig(
        params=params, tau=rng.uniform(0.0, 20.0), epsilon=rng.uniform(0.0, 1.0)
    )


class TestProtocolConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            ProtocolConfig(params=DAMPED, tau=-1.0, epsilon=0.5)
        with pytest.raises(DomainError):
            ProtocolConfig(params=DAMPED, tau=1.0, epsilon=1.5)


class TestProbUnmeasured:
    def test_initial_time(self):
        assert witness.prob_unmeasured(_config(tau=0.0)) == 1.0

    def test_half_rotation_undamped(self):
        p = witness.prob_unmeasured(_config(params=UNDAMPED, tau=math.pi))
        assert abs(p) < 1e-15

    def test_damped_half_rotation(self):
        assert abs(witness.prob_unmeasured(_config(tau=math.pi)) - P_UNMEASURED_PI) < 1e-15

    def test_matches_projector_expectation(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            config = _random_config(rng)
            via_state = algebra.expectation(
                algebra.PROJECTOR_PLUS,
                dynamics.evolve_state(config.params, witness.INITIAL_STATE, config.tau),
            )
            assert abs(witness.prob_unmeasured(config) - via_state) < 1e-12


class TestProbMeasured:
    def test_zero_strength_reduces_to_unmeasured(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            config = _random_config(rng)
            weak = ProtocolConfig(params=config.params, tau=config.tau, epsilon=0.0)
            assert abs(witness.prob_measured(weak) - witness.prob_unmeasured(weak)) < 1e-15

    def test_projective_undamped_half_rotation(self):
        config = ProtocolConfig(params=UNDAMPED, tau=math.pi, epsilon=1.0)
        assert abs(witness.prob_measured(config) - 0.5) < 1e-15

    def test_frozen_value(self):
        config = _config(tau=math.pi / 2, epsilon=0.6)
        assert abs(witness.prob_measured(config) - P_MEASURED_HALFPI_06) < 1e-15

    def test_matches_composed_channel(self):
        rng = np.random.default_rng(43)
        for _ in range(50):
            config = _random_config(rng)
            mid = dynamics.evolve_state(config.params, witness.INITIAL_STATE, config.tau / 2)
            mid = measurement.nonselective_update(mid, config.epsilon)
            final = dynamics.evolve_state(config.params, mid, config.tau / 2)
            composed = algebra.expectation(algebra.PROJECTOR_PLUS, final)
            assert abs(witness.prob_measured(config) - composed) < 1e-12


class TestWitnessClosedForm:
    def test_projective_undamped_maximum(self):
        config = ProtocolConfig(params=UNDAMPED, tau=math.pi, epsilon=1.0)
        assert abs(witness.witness_closed_form(config) - 0.5) < 1e-12

    def test_zero_strength_vanishes(self):
        for tau in (0.0, 1.0, 7.3):
            assert witness.witness_closed_form(_config(tau=tau, epsilon=0.0)) == 0.0

    def test_damped_peak_value(self):
        assert abs(witness.witness_closed_form(_config()) - WITNESS_PEAK_DAMPED) < 1e-15

    def test_equals_probability_difference(self):
        rng = np.random.default_rng(44)
        for _ in range(200):
            config = _random_config(rng)
            direct = abs(witness.prob_unmeasured(config) - witness.prob_measured(config))
            assert abs(witness.witness_closed_form(config) - direct) < 1e-12

    def test_monotone_in_strength(self):
        config = _config(tau=2.0)
        values = [
            witness.witness_closed_form(_config(tau=2.0, epsilon=e))
            for e in np.linspace(0, 1, 21)
        ]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_zeros_at_full_rotations(self):
        for k in (1, 2, 5):
            for eps in (0.3, 1.0):
                config = _config(tau=2 * math.pi * k, epsilon=eps)
                assert witness.witness_closed_form(config) < 1e-12

    def test_global_bound(self):
        rng = np.random.default_rng(45)
        for _ in range(200):
            config = _random_config(rng)
            bound = 0.5 * math.exp(-config.params.gamma * config.tau / 2)
            assert witness.witness_closed_form(config) <= bound + 1e-15
            assert bound <= 0.5 + 1e-15

    def test_weak_measurement_quadratic_scaling(self):
        config = _config(tau=2.0)
        limit = math.exp(-DAMPED.gamma) * math.sin(1.0) ** 2 / 4.0

        def scaled(eps):
            return witness.witness_closed_form(_config(tau=2.0, epsilon=eps)) / eps**2

        d3, d4 = scaled(1e-3) - limit, scaled(1e-4) - limit
        assert abs(d3) < 1e-6
        assert abs(d4) < 1e-8
        # deviation from the limit shrinks quadratically in the strength
        assert 90.0 < d3 / d4 < 110.0


class TestWitnessPipeline:
    def test_grid_agreement(self):
        tol = 1e-9
        for eps in (0.0, 0.25, 0.5, 0.75, 1.0):
            for tau in np.linspace(0.5, 20.0, 10):
                config = _config(tau=float(tau), epsilon=eps)
                closed = witness.witness_closed_form(config)
                piped = witness.witness_pipeline(config, tol)
                assert abs(closed - piped) < 10 * tol

    def test_thermal_occupation_enters_only_through_gamma(self):
        # same total rate, different split between gamma0 and nbar
        tol = 1e-9
        thermal = SystemParams(omega=1.0, gamma0=0.04, nbar=0.75)
        assert abs(thermal.gamma - 0.1) < 1e-15
        for tau in (1.0, 4.0, 9.0):
            config = ProtocolConfig(params=thermal, tau=tau, epsilon=0.8)
            closed = witness.witness_closed_form(config)
            assert abs(closed - witness.witness_pipeline(config, tol)) < 10 * tol
            reference = ProtocolConfig(params=DAMPED, tau=tau, epsilon=0.8)
            assert abs(closed - witness.witness_closed_form(reference)) < 1e-15

    def test_mid_protocol_state(self):
        # nonselective update applied to the numerically evolved state must
        # reproduce the closed-form mid-protocol matrix
        tol, tau, eps = 1e-10, 3.2, 0.6
        g, g0, w = DAMPED.gamma, DAMPED.gamma0, DAMPED.omega
        shrink = math.sqrt(1 - eps * eps)
        mid = measurement.nonselective_update(
            dynamics.evolve_state_numerical(DAMPED, witness.INITIAL_STATE, tau / 2, tol),
            eps,
        )
        diag_shift = g0 * shrink * (1 - math.exp(-g * tau / 2)) / g
        off = math.exp(-g * tau / 4) * (
            math.cos(w * tau / 2) - 1j * shrink * math.sin(w * tau / 2)
        )
        expected = 0.5 * np.array(
            [[1 - diag_shift, off], [off.conjugate(), 1 + diag_shift]]
        )
        assert np.max(np.abs(mid - expected)) < 10 * tol
        # stated form of the first diagonal entry
        assert abs(2 * mid[0, 0].real - (1 - diag_shift)) < 10 * tol

    def test_zero_strength_vanishes(self):
        tol = 1e-9
        assert witness.witness_pipeline(_config(tau=4.0, epsilon=0.0), tol) < 10 * tol

    def test_off_center_measurement_time(self):
        # the probabilities pipeline accepts a general intermediate time;
        # at t = tau/2 it must agree with the default
        config = _config(tau=4.0, epsilon=0.8)
        p_default = witness.pipeline_probabilities(config, 1e-9)
        p_explicit = witness.pipeline_probabilities(config, 1e-9, t_measure=2.0)
        assert p_default == p_explicit
        p_shifted = witness.pipeline_probabilities(config, 1e-9, t_measure=1.0)
        assert p_shifted[0] == p_default[0]  # unmeasured arm unaffected
        with pytest.raises(DomainError):
            witness.pipeline_probabilities(config, 1e-9, t_measure=5.0)


class TestAmplitudeFactor:
    def test_endpoints(self):
        assert witness.amplitude_factor(0.0) == 0.0
        assert witness.amplitude_factor(1.0) == 1.0

    def test_pythagorean_value(self):
        assert abs(witness.amplitude_factor(0.6) - 0.2) < 1e-12

    def test_monotone(self):
        grid = np.linspace(0, 1, 101)
        values = [witness.amplitude_factor(e) for e in grid]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_weak_limit(self):
        for eps in (1e-3, 1e-5, 1e-7):
            assert abs(witness.amplitude_factor(eps) / eps**2 - 0.5) < 1e-5

    def test_divergent_slope_at_projective_end(self):
        eps, h = 1.0 - 1e-6, 1e-8
        slope = (witness.amplitude_factor(eps + h) - witness.amplitude_factor(eps - h)) / (2 * h)
        assert slope > 500.0

    def test_vanishing_slope_at_weak_end(self):
        h = 1e-8
        slope = witness.amplitude_factor(h) / h
        assert abs(slope) < 1e-7


class TestEffectiveStrength:
    def test_zero_time_returns_strength_exactly(self):
        for eps in (0.0, 0.123, 0.5, 0.987, 1.0):
            assert witness.effective_strength(_config(tau=0.0, epsilon=eps)) == eps

    def test_undamped_returns_strength(self):
        for tau in (0.5, 3.0, 12.0):
            config = ProtocolConfig(params=UNDAMPED, tau=tau, epsilon=0.7)
            assert witness.effective_strength(config) == 0.7

    def test_monotone_decay_toward_zero(self):
        taus = np.linspace(0.0, 120.0, 40)
        values = [witness.effective_strength(_config(tau=float(t))) for t in taus]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert values[-1] < 0.1

    def test_defining_identity(self):
        rng = np.random.default_rng(46)
        for _ in range(300):
            config = _random_config(rng)
            eff = witness.effective_strength(config)
            damped = math.exp(-config.params.gamma * config.tau / 2) * witness.amplitude_factor(
                config.epsilon
            )
            assert abs(witness.amplitude_factor(eff) - damped) < 1e-12
            assert 0.0 <= eff <= config.epsilon + 1e-15


class TestWitnessMonteCarlo:
    def test_converges_to_closed_form(self):
        estimate, stderr = witness.witness_monte_carlo(_config(), shots=10**6, seed=20260810)
        assert stderr < 1e-3
        assert abs(estimate - WITNESS_PEAK_DAMPED) < 5 * stderr

    def test_zero_strength(self):
        estimate, stderr = witness.witness_monte_carlo(
            _config(tau=2.0, epsilon=0.0), shots=10**6, seed=3
        )
        assert abs(estimate) <= 5 * stderr

    def test_deterministic_for_fixed_seed(self):
        first = witness.witness_monte_carlo(_config(tau=2.0, epsilon=0.7), shots=10**4, seed=99)
        second = witness.witness_monte_carlo(_config(tau=2.0, epsilon=0.7), shots=10**4, seed=99)
        assert first == second

    def test_shot_floor(self):
        with pytest.raises(DomainError):
            witness.witness_monte_carlo(_config(), shots=99, seed=1)

    def test_projective_branching_edge_case(self):
        # strength 1 at tiny tau: the minus outcome has near-zero probability
        estimate, stderr = witness.witness_monte_carlo(
            _config(tau=1e-9, epsilon=1.0), shots=10**4, seed=5
        )
        assert abs(estimate) <= max(5 * stderr, 1e-3)


class TestSweep:
    def test_single_point_reduces_to_scalars(self):
        points = witness.sweep(DAMPED, [math.pi], [1.0])
        assert len(points) == 1
        point = points[0]
        config = _config()
        assert point.p_unmeasured == witness.prob_unmeasured(config)
        assert point.p_measured == witness.prob_measured(config)
        assert point.witness == witness.witness_closed_form(config)
        assert point.epsilon_eff == witness.effective_strength(config)

    def test_zero_strength_rows(self):
        points = witness.sweep(DAMPED, np.linspace(0, 10, 21), [0.0])
        assert all(p.witness == 0.0 for p in points)

    def test_ordering_and_consistency(self):
        points = witness.sweep(DAMPED, [3.0, 1.0, 2.0], [0.5, 0.25])
        assert [p.epsilon for p in points] == [0.5] * 3 + [0.25] * 3
        assert [p.tau for p in points] == [1.0, 2.0, 3.0] * 2
        for p in points:
            assert abs(p.witness - abs(p.p_unmeasured - p.p_measured)) < 1e-12

    def test_empty_grid_rejected(self):
        with pytest.raises(DomainError):
            witness.sweep(DAMPED, [], [0.5])
        with pytest.raises(DomainError):
            witness.sweep(DAMPED, [1.0], [])

    def test_peak_positions_and_decay(self):
        # peaks sit at the stationarity points 2 atan(2 omega / gamma) + 2 pi k,
        # slightly left of the odd multiples of pi, with amplitudes decaying
        # by exp(-gamma pi / omega) per period
        taus = np.arange(0.0, 40.0, 0.01)
        points = witness.sweep(DAMPED, taus, [1.0])
        values = np.array([p.witness for p in points])
        peak_indices = [
            i
            for i in range(1, len(values) - 1)
            if values[i - 1] < values[i] >= values[i + 1]
        ]
        base = 2 * math.atan(2 * DAMPED.omega / DAMPED.gamma)
        expected = [base + 2 * math.pi * k for k in range(6)]
        assert len(peak_indices) == len(expected)
        for k, (index, position) in enumerate(zip(peak_indices, expected)):
            assert abs(taus[index] - position) <= 0.02
            assert taus[index] < (2 * k + 1) * math.pi
        heights = values[peak_indices]
        ratios = heights[1:] / heights[:-1]
        assert np.max(np.abs(ratios - math.exp(-DAMPED.gamma * math.pi / DAMPED.omega))) < 0.01

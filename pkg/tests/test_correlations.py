"""Correlation functions: exact transfer computation, decay fits, Monte Carlo."""

from math import fsum

import numpy as np
import pytest

from permix import (
    ComposedMap,
    DomainError,
    IntervalPermutation,
    SlopeSignature,
    StepObservable,
    Strategy,
    canonical_signatures,
    composed_map,
    correlation,
    decay_rate,
    eigenvector_observable,
    fine_markov,
    mixing_rate,
    monte_carlo_correlation,
    reduced_markov,
    tau,
    transfer_matrix,
    worst_mixing_rate,
)

TENT = SlopeSignature.from_text("+-")
SF2 = SlopeSignature.from_text("++")


class TestStepObservable:
    def test_validation(self):
        with pytest.raises(DomainError):
            StepObservable(3, (1.0, 2.0))
        with pytest.raises(DomainError):
            StepObservable.indicator(3, [0])

    def test_pointwise_values(self):
        obs = StepObservable.indicator(4, [1, 4])
        assert obs.at(0.0) == 1.0
        assert obs.at(0.3) == 0.0
        assert obs.at(0.99) == 1.0
        assert obs.at(1.0) == 1.0

    def test_level_must_match_map(self):
        g = composed_map(TENT, n=3)
        with pytest.raises(DomainError):
            correlation(g, StepObservable.constant(4), StepObservable.constant(3), 1)


class TestTransferMatrix:
    def test_doubly_stochastic(self):
        p = transfer_matrix(composed_map(TENT, n=3))
        assert p.sum(axis=0) == pytest.approx(np.ones(6))
        assert p.sum(axis=1) == pytest.approx(np.ones(6))

    def test_matches_scaled_fine_matrix(self):
        g = composed_map(TENT, n=3)
        assert np.array_equal(2 * transfer_matrix(g), fine_markov(g).a)

    def test_fixes_constants(self):
        g = composed_map(SF2, n=3)
        ones = np.ones(6)
        assert transfer_matrix(g) @ ones == pytest.approx(ones)

    def test_preserves_means(self):
        rng = np.random.default_rng(2)
        g = composed_map(canonical_signatures(3).zigzag, n=4)
        p = transfer_matrix(g)
        for _ in range(10):
            v = rng.uniform(-1, 1, size=12)
            assert fsum(p @ v) / 12 == pytest.approx(fsum(v) / 12, abs=1e-12)


class TestCorrelation:
    def test_constant_observables_vanish(self):
        g = composed_map(TENT, n=3)
        phi = StepObservable.constant(3)
        for n in range(6):
            assert correlation(g, phi, phi, n) == pytest.approx(0.0, abs=1e-14)

    def test_doubling_indicator_independence(self):
        # dyadic bits of the doubling map are independent of the first bit
        g = composed_map(SF2, n=2)
        phi = StepObservable.indicator(2, [1])
        for n in range(1, 8):
            assert correlation(g, phi, phi, n) == pytest.approx(0.0, abs=1e-14)
        assert correlation(g, phi, phi, 0) == pytest.approx(0.25, abs=1e-14)

    def test_tent_eigenvector_ratio(self):
        g = composed_map(TENT, n=3)
        # coarse pattern aligned with the subleading eigenvector of the
        # reduced matrix; its correlations decay by exactly 1/2 per step
        phi = StepObservable(3, (1.0, -2.0, 1.0))
        values = [correlation(g, phi, phi, n) for n in range(8)]
        for a, b in zip(values, values[1:]):
            assert abs(b) / abs(a) == pytest.approx(0.5, abs=1e-12)

    def test_refinement_consistency(self):
        g = composed_map(canonical_signatures(3).zigzag, n=4)
        coarse = StepObservable(4, (0.3, -1.2, 0.4, 0.5))
        fine = StepObservable(12, tuple(np.repeat(coarse.values, 3)))
        for n in range(6):
            assert correlation(g, coarse, coarse, n) == pytest.approx(
                correlation(g, fine, fine, n), abs=1e-12
            )

    def test_negative_time_rejected(self):
        g = composed_map(TENT, n=3)
        with pytest.raises(DomainError):
            correlation(g, StepObservable.constant(3), StepObservable.constant(3), -1)

    def test_envelope_bound(self):
        # |C(n)| <= K tau(g)^n with K calibrated at n=1, for diagonalizable cases
        rng = np.random.default_rng(17)
        for sig, n_cells in ((TENT, 3), (SF2, 3), (canonical_signatures(3).zigzag, 5)):
            g = composed_map(sig, n=n_cells)
            rate = mixing_rate(g)
            evals = np.linalg.eigvals(transfer_matrix(g))
            evals = np.sort_complex(evals)
            if min(abs(evals[i + 1] - evals[i]) for i in range(len(evals) - 1)) <= 1e-6:
                continue  # repeated eigenvalues: polynomial prefactors possible
            for _ in range(20):
                phi = StepObservable(n_cells, tuple(rng.uniform(-1, 1, size=n_cells)))
                psi = StepObservable(n_cells, tuple(rng.uniform(-1, 1, size=n_cells)))
                c1 = abs(correlation(g, phi, psi, 1))
                if c1 < 1e-12:
                    continue
                k = c1 / rate
                for n in range(2, 31):
                    assert abs(correlation(g, phi, psi, n)) <= 1.01 * k * rate**n + 1e-12


class TestDecayRate:
    def test_constant_gives_zero(self):
        g = composed_map(TENT, n=3)
        fit = decay_rate(g, StepObservable.constant(3), StepObservable.constant(3), 10)
        assert fit.fitted_rate == 0.0
        assert fit.valid_range is None

    def test_requires_minimum_horizon(self):
        g = composed_map(TENT, n=3)
        with pytest.raises(DomainError):
            decay_rate(g, StepObservable.constant(3), StepObservable.constant(3), 3)

    def test_eigenvector_recovery_identity(self):
        for sig, n in ((TENT, 3), (SF2, 3)):
            g = composed_map(sig, n=n)
            obs = eigenvector_observable(g)
            fit = decay_rate(g, obs, obs, 20)
            assert fit.fitted_rate == pytest.approx(0.5, abs=0.02)

    def test_eigenvector_recovery_worst_tent(self):
        worst = worst_mixing_rate(TENT, 5, mode="mixing_only", strategy=Strategy.exhaustive())
        g = ComposedMap(TENT, worst.argmax)
        obs = eigenvector_observable(g)
        fit = decay_rate(g, obs, obs, 25)
        assert fit.fitted_rate == pytest.approx(worst.value, abs=0.02)

    def test_bounded_by_mixing_rate(self):
        rng = np.random.default_rng(23)
        for sig, n_cells in ((TENT, 4), (canonical_signatures(3).sf, 5)):
            g = composed_map(sig, n=n_cells)
            for _ in range(5):
                phi = StepObservable(n_cells, tuple(rng.uniform(-1, 1, size=n_cells)))
                fit = decay_rate(g, phi, phi, 15)
                assert fit.fitted_rate <= mixing_rate(g) + 0.05


class TestMonteCarlo:
    def test_deterministic_given_seed(self):
        g = composed_map(TENT, n=3)
        phi = StepObservable.indicator(3, [1])
        one = monte_carlo_correlation(g, phi, phi, 2, samples=2000, seed=42)
        two = monte_carlo_correlation(g, phi, phi, 2, samples=2000, seed=42)
        assert one == two

    def test_constant_observable(self):
        g = composed_map(TENT, n=3)
        phi = StepObservable.constant(3)
        est = monte_carlo_correlation(g, phi, phi, 1, samples=500, seed=7)
        assert est.value == pytest.approx(0.0, abs=1e-12)
        assert est.std_error == pytest.approx(0.0, abs=1e-12)

    def test_matches_exact_within_four_sigma(self):
        g = composed_map(TENT, n=3)
        phi = StepObservable.indicator(3, [1])
        psi = StepObservable.indicator(3, [2, 3])
        for n in range(6):
            exact = correlation(g, phi, psi, n)
            est = monte_carlo_correlation(g, phi, psi, n, samples=100_000, seed=100 + n)
            margin = 4 * est.std_error if est.std_error > 0 else 1e-9
            assert abs(exact - est.value) <= margin

    def test_sample_count_required(self):
        g = composed_map(TENT, n=3)
        with pytest.raises(DomainError):
            monte_carlo_correlation(g, StepObservable.constant(3), StepObservable.constant(3), 1, 0, 1)


def test_eigenvector_observable_is_zero_mean():
    for sig, n in ((TENT, 3), (SF2, 3), (canonical_signatures(3).zigzag, 5)):
        g = composed_map(sig, n=n)
        obs = eigenvector_observable(g)
        assert obs.level == g.n * g.m
        assert obs.mean() == pytest.approx(0.0, abs=1e-10)
        assert max(abs(v) for v in obs.values) == pytest.approx(1.0)

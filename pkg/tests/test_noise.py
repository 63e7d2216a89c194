"""Tests for Gaussian perturbation, white noise, and ensemble averaging."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from spinwigner import noise
from spinwigner.errors import DegeneratePerturbationError
from spinwigner.metrics import fidelity_pure_mixed, fidelity_pure_pure
from spinwigner.noise import (
    GaussianNoiseSpec,
    ensemble_average,
    gaussian_perturb,
    white_noise,
)
from spinwigner.states import ghz_state, ket_to_dm, w_state


class TestGaussianPerturb:
    def test_zero_noise_is_identity(self):
        psi = ghz_state(3)
        spec = GaussianNoiseSpec(sigma=0.0)
        assert gaussian_perturb(psi, spec, 0) is psi

    def test_golden_values_complex_mode(self):
        # Pins the RNG algorithm and draw order (PCG64, real block then
        # imaginary block).  A change here is a breaking change to the
        # reproducibility contract.
        spec = GaussianNoiseSpec(sigma=0.1, seed=42, mode="complex")
        amps = gaussian_perturb(ghz_state(3), spec, 0).amplitudes
        assert amps[0] == complex(0.6865749443432514, 0.02570677967653704)
        assert amps[1] == complex(0.05551493460042339, 0.009854203458338767)
        assert amps[2] == complex(0.0026390671071127624, -0.1760854182792194)
        assert amps[3] == complex(-0.09939599400600778, 0.14471899167391328)

    def test_golden_values_real_mode(self):
        spec = GaussianNoiseSpec(sigma=0.1, seed=42, mode="real")
        amps = gaussian_perturb(ghz_state(3), spec, 0).amplitudes
        assert amps[0] == complex(0.7104023588740725, 0.0)
        assert amps[1] == complex(0.05744156674783016, 0.0)
        assert np.all(amps.imag == 0)

    def test_deterministic_per_seed_and_realization(self):
        psi = w_state(3)
        spec = GaussianNoiseSpec(sigma=0.3, seed=7)
        first = gaussian_perturb(psi, spec, 5).amplitudes
        second = gaussian_perturb(psi, spec, 5).amplitudes
        assert np.array_equal(first, second)
        other = gaussian_perturb(psi, spec, 6).amplitudes
        assert not np.array_equal(first, other)

    def test_distinct_seeds_decorrelate(self):
        psi = ghz_state(3)
        a = gaussian_perturb(psi, GaussianNoiseSpec(sigma=0.3, seed=1), 0)
        b = gaussian_perturb(psi, GaussianNoiseSpec(sigma=0.3, seed=2), 0)
        assert not np.array_equal(a.amplitudes, b.amplitudes)

    @pytest.mark.parametrize("mode", ["complex", "real"])
    def test_purity_preserved_any_sigma(self, mode):
        psi = ghz_state(3)
        rng = np.random.default_rng(99)
        for k in range(200):
            sigma = float(10 ** rng.uniform(-3, 2))
            spec = GaussianNoiseSpec(sigma=sigma, seed=11, mode=mode)
            rho = ket_to_dm(gaussian_perturb(psi, spec, k)).matrix
            assert abs(np.vdot(rho, rho).real - 1.0) < 1e-12

    def test_output_length_and_norm(self):
        psi = w_state(3)
        spec = GaussianNoiseSpec(sigma=2.0, seed=3)
        out = gaussian_perturb(psi, spec, 1)
        assert out.dim == psi.dim
        assert abs(np.linalg.norm(out.amplitudes) - 1.0) < 1e-12

    def test_small_sigma_keeps_overlap_high(self):
        # Monte-Carlo oracle over 1000 realizations at sigma=0.1.  Real-mode
        # perturbations keep a clear majority above fidelity 0.9; complex
        # mode spreads over twice as many noise components, landing most
        # realizations between 0.8 and 0.9 instead.
        psi = ghz_state(3)
        fractions = {}
        for mode in ("complex", "real"):
            spec = GaussianNoiseSpec(sigma=0.1, seed=42, mode=mode)
            values = np.array([
                fidelity_pure_pure(psi, gaussian_perturb(psi, spec, k)).value
                for k in range(1000)
            ])
            fractions[mode] = np.mean(values > 0.9)
            assert np.mean(values > 0.8) > 0.9
        assert fractions["real"] > 0.5
        assert 0.2 < fractions["complex"] < 0.5

    def test_negative_realization_rejected(self):
        with pytest.raises(ValueError):
            gaussian_perturb(ghz_state(3), GaussianNoiseSpec(sigma=0.1), -1)

    def test_degenerate_norm_raises(self):
        with pytest.raises(DegeneratePerturbationError):
            noise._renormalize(np.zeros(8, dtype=complex))


class TestGaussianNoiseSpec:
    @pytest.mark.parametrize("kwargs", [
        {"sigma": -0.1},
        {"sigma": 0.1, "ensemble_size": 0},
        {"sigma": 0.1, "mode": "both"},
        {"sigma": 0.1, "seed": -1},
        {"sigma": 0.1, "seed": 2 ** 64},
        {"sigma": float("nan")},
    ])
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(ValueError):
            GaussianNoiseSpec(**kwargs)


class TestWhiteNoise:
    def test_p_zero_is_identity(self):
        rho = ket_to_dm(ghz_state(3))
        assert np.array_equal(white_noise(rho, 0.0).matrix, rho.matrix)

    def test_p_one_is_maximally_mixed(self):
        rho = ket_to_dm(w_state(3))
        assert np.array_equal(white_noise(rho, 1.0).matrix, np.eye(8) / 8)

    def test_ghz_at_p_04(self):
        p = 0.4
        mixed = white_noise(ket_to_dm(ghz_state(3)), p).matrix
        diag = np.real(np.diagonal(mixed))
        assert abs(diag[0] - 0.35) < 1e-15
        assert abs(diag[7] - 0.35) < 1e-15
        assert_allclose(diag[1:7], np.full(6, 0.05), atol=1e-15)
        assert abs(mixed[0, 7] - 0.3) < 1e-15

    @pytest.mark.parametrize("p", [-0.1, 1.1, np.nan])
    def test_rejects_out_of_range(self, p):
        with pytest.raises(ValueError):
            white_noise(ket_to_dm(ghz_state(3)), p)

    @given(p=st.floats(min_value=0.0, max_value=1.0))
    @settings(max_examples=50, deadline=None)
    def test_purity_law(self, p):
        # Tr(ρ'²) = (1-p)² + 2p(1-p)/d + p²/d for pure input, by expanding
        # the square of (1-p)ρ + p·I/d.
        rho = white_noise(ket_to_dm(ghz_state(3)), p).matrix
        measured = np.vdot(rho, rho).real
        expected = (1 - p) ** 2 + 2 * p * (1 - p) / 8 + p ** 2 / 8
        assert abs(measured - expected) < 1e-10

    def test_purity_at_p_04(self):
        rho = white_noise(ket_to_dm(ghz_state(3)), 0.4).matrix
        assert abs(np.vdot(rho, rho).real - 0.44) < 1e-10

    def test_output_eigenvalues_nonnegative(self):
        mixed = white_noise(ket_to_dm(w_state(3)), 0.3)
        eigenvalues = np.linalg.eigvalsh(mixed.matrix)
        assert eigenvalues[0] > -1e-12
        assert abs(np.trace(mixed.matrix) - 1.0) < 1e-12


class TestEnsembleAverage:
    def test_zero_sigma_recovers_projector(self):
        psi = ghz_state(3)
        spec = GaussianNoiseSpec(sigma=0.0, ensemble_size=17)
        averaged = ensemble_average(psi, spec)
        assert np.array_equal(averaged.matrix, ket_to_dm(psi).matrix)

    def test_single_realization_equals_perturbed_projector(self):
        psi = w_state(3)
        spec = GaussianNoiseSpec(sigma=0.4, seed=9, ensemble_size=1)
        averaged = ensemble_average(psi, spec)
        single = ket_to_dm(gaussian_perturb(psi, spec, 0))
        assert np.array_equal(averaged.matrix, single.matrix)

    def test_mixing_lowers_purity(self):
        psi = ghz_state(3)
        spec = GaussianNoiseSpec(sigma=0.5, seed=42, ensemble_size=100)
        averaged = ensemble_average(psi, spec)
        assert np.vdot(averaged.matrix, averaged.matrix).real < 0.9

    def test_noise_dominated_fidelity_plateau(self):
        # With sigma far above the amplitude scale the perturbed states are
        # uniformly random in d=8, so the averaged overlap sits near 1/8.
        psi = ghz_state(3)
        spec = GaussianNoiseSpec(sigma=10.0, seed=42, ensemble_size=2000)
        value = fidelity_pure_mixed(psi, ensemble_average(psi, spec)).value
        assert 0.05 <= value <= 0.35

    def test_bit_reproducible(self):
        psi = ghz_state(3)
        spec = GaussianNoiseSpec(sigma=0.7, seed=13, ensemble_size=25)
        first = ensemble_average(psi, spec).matrix
        second = ensemble_average(psi, spec).matrix
        assert np.array_equal(first, second)

    def test_degenerate_realization_uses_retry_substream(self, monkeypatch):
        psi = ghz_state(3)
        spec = GaussianNoiseSpec(sigma=0.2, seed=5, ensemble_size=3)
        real_perturb = noise.gaussian_perturb

        def flaky(state, run_spec, realization_index):
            if realization_index == 1:
                raise DegeneratePerturbationError("forced degenerate draw")
            return real_perturb(state, run_spec, realization_index)

        monkeypatch.setattr(noise, "gaussian_perturb", flaky)
        averaged = ensemble_average(psi, spec)
        # Realization 1 falls back to the first retry sub-stream,
        # index M + RETRY_BUDGET·k = 3 + 3·1 = 6.
        expected = np.zeros((8, 8), dtype=complex)
        for index in (0, 6, 2):
            amps = real_perturb(psi, spec, index).amplitudes
            expected += np.outer(amps, amps.conj())
        assert np.array_equal(averaged.matrix, expected / 3)

    def test_raises_after_retry_budget(self, monkeypatch):
        def always_degenerate(state, run_spec, realization_index):
            raise DegeneratePerturbationError("forced degenerate draw")

        monkeypatch.setattr(noise, "gaussian_perturb", always_degenerate)
        with pytest.raises(DegeneratePerturbationError):
            ensemble_average(ghz_state(3), GaussianNoiseSpec(sigma=0.2, ensemble_size=2))

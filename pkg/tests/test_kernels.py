"""Kernel, emission-angle, cutoff and spin-factor tests."""

import math

import numpy as np
import pytest

from cherenkov import constants as const
from cherenkov.dispersion import solve_branches
from cherenkov.errors import DomainError, NoRadiationError
from cherenkov.kernels import (
    Particle,
    RegimeSpec,
    admissible_k_range,
    cutoff_frequency,
    emission_angle,
    on_shell_allowed,
    spectral_kernel,
    spin_sum_braces,
    spin_sum_factor,
    transparent_weights,
)
from cherenkov.medium import FixedResponseMedium, LorentzMedium
from cherenkov.quadrature import integrate_bracketed

U = 1e15
FULL = LorentzMedium(U, 2 * U, 0.1 * U, U, 2 * U, 0.1 * U)
ELECTRON = Particle(beta=0.9)


class TestSpectralKernel:
    def test_matches_complex_inverse(self):
        w, k = U, U / const.c
        expected = (1.0 / (-(w**2) * FULL.eps(w) + (k * const.c) ** 2 * FULL.kappa(w))).imag
        assert spectral_kernel(FULL, w, k) == pytest.approx(expected, rel=1e-14)

    def test_nonnegative_on_grid(self):
        w = np.linspace(0.05 * U, 10 * U, 60)
        k = np.linspace(0.05 * U / const.c, 10 * U / const.c, 60)
        kk = spectral_kernel(FULL, w[:, None], k[None, :])
        assert kk.min() >= 0.0

    def test_nonmagnetic_sign_structure(self):
        med = LorentzMedium(U, 2 * U, 0.1 * U)
        w = np.linspace(0.1 * U, 8 * U, 50)
        assert np.all(spectral_kernel(med, w, 2 * U / const.c) >= 0.0)

    def test_transparent_rejected(self):
        med = LorentzMedium(U, 2 * U, 0.0)
        with pytest.raises(DomainError):
            spectral_kernel(med, U, U / const.c)

    def test_peak_tracks_branch_as_gamma_shrinks(self):
        # kernel maximum in k converges to the real part of the on-shell k
        w = 0.7 * U
        for g in [1e-3 * U, 1e-5 * U]:
            med = LorentzMedium(U, 2 * U, g)
            n = complex(med.refractive_index(w))
            k_grid = np.linspace(0.9, 1.1, 20001) * (n.real * w / const.c)
            kk = spectral_kernel(med, w, k_grid)
            k_peak = k_grid[np.argmax(kk)]
            assert abs(k_peak - n.real * w / const.c) < 3 * (k_grid[1] - k_grid[0])


class TestEmissionAngle:
    def test_classical_on_shell(self):
        n, beta = 1.5, 0.9
        w = U
        k = n * w / const.c
        assert emission_angle("classical", Particle(beta=beta), w, k) == pytest.approx(
            1.0 / (n * beta), rel=1e-12
        )
        assert 1.0 / (n * beta) == pytest.approx(0.740741, abs=5e-7)

    def test_nonrel_reduces_to_classical_at_lambda_zero(self):
        p = Particle(beta=0.9, hbar_scale=0.0)
        for w, k in [(U, U / const.c), (3 * U, 7 * U / const.c)]:
            assert emission_angle("nonrel_quantum", p, w, k) == emission_angle("classical", p, w, k)

    def test_rel_vs_nonrel_leading_difference(self):
        # slow particle: the difference is the O(1/c^2) recoil term
        p = Particle(beta=0.01)
        w, k = 1e15, 1e7
        d = emission_angle("nonrel_quantum", p, w, k) - emission_angle("rel_quantum", p, w, k)
        expected = const.hbar * w**2 / (2 * p.mass * const.c**2 * p.v * k)
        assert d == pytest.approx(expected, rel=0.01)


class TestAdmissibleRange:
    def test_classical_lower_edge(self):
        p = Particle(beta=0.9)
        lo, hi = admissible_k_range("classical", p, U)
        assert lo == pytest.approx(U / (0.9 * const.c), rel=1e-14)
        assert hi == math.inf

    def test_nonrel_interval_collapses_at_bound(self):
        p = Particle(beta=0.9)
        w_bound = p.mass * p.v**2 / (2 * const.hbar)  # kinetic-energy bound
        rng = admissible_k_range("nonrel_quantum", p, 0.999999 * w_bound)
        assert rng is not None
        lo, hi = rng
        assert (hi - lo) / hi < 5e-3
        assert admissible_k_range("nonrel_quantum", p, 1.000001 * w_bound) is None

    def test_rel_spurious_band_excluded(self):
        p = Particle(beta=0.9)
        w_bound = (p.energy - p.mass * const.c**2) / const.hbar
        assert admissible_k_range("rel_quantum", p, 1.01 * w_bound) is None
        assert admissible_k_range("rel_quantum", p, 0.99 * w_bound) is not None

    def test_angle_is_unit_at_edges(self):
        p = Particle(beta=0.9)
        for mech in ("nonrel_quantum", "rel_quantum"):
            lo, hi = admissible_k_range(mech, p, 1e18)
            assert emission_angle(mech, p, 1e18, lo) == pytest.approx(1.0, abs=1e-9)
            assert emission_angle(mech, p, 1e18, hi) == pytest.approx(1.0, abs=1e-9)


class TestCutoffs:
    def test_nonrel_value(self):
        wc = cutoff_frequency("nonrel_quantum", ELECTRON, 1.5)
        mev = const.hbar * wc / const.e_charge / 1e6
        expected = 2.0 * const.m_e_c2_eV / 1e6 * 0.35 / 2.25
        assert mev == pytest.approx(expected, rel=1e-12)
        assert mev == pytest.approx(0.15898, abs=5e-5)

    def test_rel_value(self):
        wc = cutoff_frequency("rel_quantum", ELECTRON, 1.5)
        mev = const.hbar * wc / const.e_charge / 1e6
        expected = 2.0 * const.m_e_c2_eV / 1e6 * 0.35 / (1.25 * math.sqrt(0.19))
        assert mev == pytest.approx(expected, rel=1e-12)
        assert mev == pytest.approx(0.6565, abs=5e-5)

    def test_classical_limit_no_cutoff(self):
        p = Particle(beta=0.9, hbar_scale=0.0)
        assert cutoff_frequency("nonrel_quantum", p, 1.5) == math.inf

    def test_below_threshold_rejected(self):
        with pytest.raises(NoRadiationError):
            cutoff_frequency("nonrel_quantum", Particle(beta=0.5), 1.5)

    @pytest.mark.parametrize("mech", ["nonrel_quantum", "rel_quantum"])
    def test_on_shell_consistency(self, mech):
        wc = cutoff_frequency(mech, ELECTRON, 1.5)
        assert on_shell_allowed(mech, ELECTRON, wc * (1 - 1e-9), 1.5)
        assert not on_shell_allowed(mech, ELECTRON, wc * (1 + 1e-9), 1.5)


class TestTransparentWeights:
    def test_nondispersive_single_branch(self):
        med = FixedResponseMedium(2.25, 1.0)
        k = 1e7
        bs = solve_branches(med, k)
        (om, weight), = transparent_weights(med, bs)
        v_g = const.c / 1.5
        assert om == pytest.approx(const.c * k / 1.5, rel=1e-12)
        assert weight == pytest.approx(math.pi * v_g / (2 * om * 1.5 * const.c), rel=1e-12)

    def test_matches_lossy_kernel_integral(self):
        # gamma -> 0 oracle: int K dk over a bracket around the root equals
        # pi mu / (2 Om n c) within 0.1%
        w = 0.7 * U
        med = LorentzMedium(U, 2 * U, 1e-6 * U)
        n = complex(med.refractive_index(w)).real
        k0 = n * w / const.c
        f = lambda k: spectral_kernel(med, w, k)
        res = integrate_bracketed(f, [k0], 0.5 * k0, 2.0 * k0, tol=1e-10)
        mu = 1.0
        expected = math.pi * mu / (2.0 * w * n * const.c)
        assert res.value == pytest.approx(expected, rel=1e-3)

    def test_mu_one_reduces_to_frank_tamm_measure(self):
        med = FixedResponseMedium(2.25, 1.0)
        bs = solve_branches(med, 1e7)
        (om, weight), = transparent_weights(med, bs)
        n = 1.5
        v_g = const.c / n
        assert weight == pytest.approx(math.pi * v_g / (2 * om * n * const.c), rel=1e-12)

    def test_lossy_branchset_rejected(self):
        bs = solve_branches(FULL, U / const.c)
        with pytest.raises(DomainError):
            transparent_weights(FULL, bs)


class TestSpinSum:
    def test_zero_recoil_braces_vanish(self):
        for beta in (0.1, 0.5, 0.9, 0.99):
            p = Particle(beta=beta)
            braces = spin_sum_braces(p, 1e15, 1e7, 0.7, v2_override=p.v)
            assert abs(braces) < 1e-14

    def test_stopped_particle_limit(self):
        p = Particle(beta=1e-6)
        s = spin_sum_factor(p, 1e10, 1e2, 0.5)
        assert s < 1e-11

    def test_correction_small_for_soft_photons(self):
        p = Particle(beta=0.9)
        e_q = p.energy
        n = 1.5
        for frac in (0.01, 0.003):
            w = frac * e_q / const.hbar
            k = n * w / const.c
            ct = emission_angle("rel_quantum", p, w, k)
            leading = spin_sum_factor(p, w, k, ct)
            braces = spin_sum_braces(p, w, k, ct)
            assert abs(0.5 * braces) < 0.01 * leading

    def test_lambda_zero_gives_classical_factor(self):
        p = Particle(beta=0.9, hbar_scale=0.0)
        ct = 0.74
        full = spin_sum_factor(p, 1e15, 1e7, ct, include_recoil_term=True)
        assert full == pytest.approx((0.81) * (1 - ct * ct), rel=1e-12)


class TestTypes:
    def test_particle_validation(self):
        with pytest.raises(DomainError):
            Particle(beta=1.2)
        with pytest.raises(DomainError):
            Particle(beta=0.5, hbar_scale=2.0)
        with pytest.raises(DomainError):
            Particle(beta=0.5, mass=-1.0)

    def test_regime_validation(self):
        with pytest.raises(DomainError):
            RegimeSpec(mechanics="warp")
        with pytest.raises(DomainError):
            RegimeSpec(temperature=-1.0)
        with pytest.raises(DomainError):
            RegimeSpec(medium_mode="frosted")

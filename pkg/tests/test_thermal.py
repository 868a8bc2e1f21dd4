"""Thermal factor tests: occupations, coth weight, Matsubara grid, F_T."""

import math

import numpy as np
import pytest

from cherenkov import constants as const
from cherenkov.errors import DomainError, EnergyBranchWarning
from cherenkov.thermal import (
    ThermalState,
    bose_occupation,
    coth_weight,
    f_t_factor,
    fermi_occupation,
    matsubara_frequencies,
)


def w_of(x_over_kt: float, temperature: float) -> float:
    """omega such that hbar*omega = x_over_kt * k_B * T."""
    return x_over_kt * const.k_B * temperature / const.hbar


class TestBose:
    def test_ln2_gives_unity(self):
        t = 300.0
        assert bose_occupation(w_of(math.log(2.0), t), t) == pytest.approx(1.0, rel=1e-12)

    def test_zero_temperature(self):
        assert bose_occupation(1e15, 0.0) == 0.0

    def test_laurent_expansion(self):
        t = 300.0
        x = 1e-3
        n = bose_occupation(w_of(x, t), t)
        assert n == pytest.approx(1.0 / x - 0.5, rel=1e-6)

    def test_deep_exponential_tail(self):
        t = 300.0
        n = bose_occupation(w_of(800.0, t), t)
        assert n == pytest.approx(math.exp(-800.0), rel=1e-12)


class TestFermi:
    def test_zero_energy(self):
        assert fermi_occupation(0.0, 300.0) == pytest.approx(0.5)

    def test_zero_temperature(self):
        assert fermi_occupation(1e-20, 0.0) == 0.0

    def test_asymptotic_tail(self):
        t = 300.0
        e = 50.0 * const.k_B * t
        assert fermi_occupation(e, t) == pytest.approx(math.exp(-50.0), rel=1e-10)


class TestMatsubara:
    def test_first_frequency(self):
        t = 300.0
        xs = matsubara_frequencies(ThermalState(t, 4))
        assert xs[1] == pytest.approx(2 * math.pi * const.k_B * t / const.hbar, rel=1e-13)
        assert xs[1] == pytest.approx(2.4675e14, rel=2e-4)

    def test_zeroth_is_zero(self):
        xs = matsubara_frequencies(ThermalState(300.0, 3))
        assert xs[0] == 0.0

    def test_spacing_uniform(self):
        xs = matsubara_frequencies(ThermalState(120.0, 16))
        assert np.allclose(np.diff(xs), xs[1])

    def test_state_validation(self):
        with pytest.raises(DomainError):
            ThermalState(-1.0)
        with pytest.raises(DomainError):
            ThermalState(1.0, 0)
        with pytest.raises(DomainError):
            ThermalState(1.0, 5, "guess")


class TestCoth:
    def test_zero_temperature(self):
        assert coth_weight(1e15, 0.0) == 1.0

    def test_series_expansion(self):
        t = 300.0
        x = 1e-3  # hw/2kT
        val = coth_weight(w_of(2 * x, t), t)
        expected = (1.0 / x) * (1.0 + x * x / 3.0)
        assert val == pytest.approx(expected, rel=1e-9)

    def test_decomposition_identity(self):
        # identical rounding up to the final (1 + 2N) - 1 - 2N shuffle
        t = 77.0
        for x in (1e-5, 0.3, 4.0, 40.0):
            w = w_of(x, t)
            resid = coth_weight(w, t) - 1.0 - 2.0 * bose_occupation(w, t)
            assert abs(resid) <= 4.0 * 2.3e-16 * coth_weight(w, t)

    def test_coth_identity_across_range(self):
        t = 300.0
        for x in np.geomspace(1e-6, 50.0, 25):
            w = w_of(2 * x, t)  # hw/2kT = x
            lhs = coth_weight(w, t)
            rhs = 1.0 / math.tanh(x)
            assert lhs == pytest.approx(rhs, rel=1e-13)


class TestFT:
    def test_low_temperature_unity(self):
        t = 300.0
        w = w_of(100.0, t)
        e_q = 1000.0 * const.k_B * t + const.hbar * w
        assert f_t_factor(w, t, e_q) == pytest.approx(1.0, abs=1e-10)

    def test_high_temperature_limit(self):
        e_q = Particle_energy = 8.19e-14  # ~electron rest energy, J
        t = 100.0 * e_q / const.k_B
        w = 0.3 * e_q / const.hbar
        expected = e_q / (2.0 * const.hbar * w)
        assert f_t_factor(w, t, e_q) == pytest.approx(expected, rel=0.01)

    def test_compositional_oracle(self):
        # direct (N+1)(1-nF) - N nF from the occupations
        t = 5000.0
        e_q = 4e-16
        for frac in (0.1, 0.5, 0.9):
            w = frac * e_q / const.hbar
            n = bose_occupation(w, t)
            n_f = fermi_occupation(e_q - const.hbar * w, t)
            direct = (n + 1.0) * (1.0 - n_f) - n * n_f
            assert f_t_factor(w, t, e_q) == pytest.approx(direct, rel=1e-12)

    def test_zero_temperature(self):
        assert f_t_factor(1e15, 0.0, 1e-13) == 1.0

    def test_energy_branch_warns(self):
        with pytest.warns(EnergyBranchWarning):
            f_t_factor(1e21, 300.0, 1e-17)

    def test_bounded_and_monotone_toward_high_t_limit(self):
        # for soft photons F_T rises monotonically from its low-T plateau at 1
        # and saturates at E_q/(2 hw) from below
        e_q = 8.19e-14
        w = 1e-4 * e_q / const.hbar
        bound = e_q / (2.0 * const.hbar * w)
        vals = [f_t_factor(w, t, e_q) for t in np.geomspace(1e3, 1e15, 30)]
        assert all(0.0 < v <= max(1.0, bound) * (1 + 1e-12) for v in vals)
        assert all(b >= a - 1e-12 * abs(a) for a, b in zip(vals, vals[1:]))
        assert vals[-1] == pytest.approx(bound, rel=1e-9)

    def test_smooth_at_t_to_zero(self):
        e_q = 8.19e-14
        w = 0.01 * e_q / const.hbar
        t = const.hbar * w / (60.0 * const.k_B)  # hw/kT = 60
        assert abs(f_t_factor(w, t, e_q) - 1.0) < 2 * math.exp(-60.0)

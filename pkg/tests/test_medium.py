"""Response model tests: closed forms, coupling identities, PV reconstruction."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cherenkov import constants as const
from cherenkov.errors import DegenerateModelError, DomainError
from cherenkov.medium import (
    CouplingTable,
    FixedResponseMedium,
    LorentzMedium,
    ResponseSample,
    chi_e,
    coupling_f_sq,
    coupling_g_sq,
    kk_check,
    kk_check_medium,
    mu_and_kappa,
    susceptibility_from_coupling,
)

MED = LorentzMedium(1.0, 2.0, 0.1, 1.0, 2.0, 0.1)
ELECTRIC = LorentzMedium(1.0, 2.0, 0.1)


class TestChiE:
    def test_static_limit(self):
        assert chi_e(ELECTRIC, 0.0) == pytest.approx(0.25)

    def test_on_resonance(self):
        val = chi_e(ELECTRIC, 2.0)
        assert val.real == pytest.approx(0.0, abs=1e-15)
        assert val.imag == pytest.approx(5.0)

    def test_negative_frequency_rejected(self):
        with pytest.raises(DomainError):
            chi_e(ELECTRIC, -1.0)

    def test_reconstruction_oracle_at_three(self):
        table = CouplingTable.from_medium(ELECTRIC, "electric", omega_max=40.0)
        recon = susceptibility_from_coupling(table, 3.0, kind="electric", tol=1e-10)
        closed = chi_e(ELECTRIC, 3.0)
        assert abs(recon - closed) / abs(closed) < 1e-6

    def test_vectorized(self):
        w = np.array([0.0, 1.0, 2.0])
        v = ELECTRIC.chi_e(w)
        assert v.shape == (3,)
        assert v[0] == pytest.approx(0.25)


class TestMuKappa:
    def test_static(self):
        mu, kap = mu_and_kappa(MED, 0.0)
        assert mu == pytest.approx(1.25)
        assert kap == pytest.approx(0.8)

    def test_nonmagnetic(self):
        mu, kap = mu_and_kappa(ELECTRIC, 7.3)
        assert mu == 1.0 + 0j
        assert kap == 1.0 + 0j

    def test_algebraic_rearrangement(self):
        # kappa = (w0m^2 - w^2 - i g w) / (w0m^2 + wpm^2 - w^2 - i g w)
        w = 2.1
        _, kap = mu_and_kappa(MED, w)
        d_m = 4.0 - w * w - 0.1j * w
        expected = d_m / (d_m + 1.0)
        assert abs(kap - expected) < 1e-12

    def test_kappa_pole_detected(self):
        # mu = 0 at w^2 = w0m^2 + wpm^2 with gamma_m = 0
        med = LorentzMedium(0.0, 0.0, 0.0, 1.0, 2.0, 0.0)
        with pytest.raises(DegenerateModelError):
            med.kappa(math.sqrt(5.0))


class TestCouplings:
    def test_f_sq_zero_frequency(self):
        assert coupling_f_sq(ELECTRIC, 0.0) == 0.0

    def test_f_sq_on_resonance(self):
        # 2 eps0 wpe^2 / (pi gamma_e)
        expected = 2.0 * const.eps0 / (math.pi * 0.1)
        assert coupling_f_sq(ELECTRIC, 2.0) == pytest.approx(expected, rel=1e-13)

    def test_f_sq_is_im_eps_identity(self):
        w = 1.5
        lhs = coupling_f_sq(ELECTRIC, w)
        rhs = (2.0 * w * const.eps0 / math.pi) * ELECTRIC.chi_e(w).imag
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_f_sq_transparent_rejected(self):
        med = LorentzMedium(1.0, 2.0, 0.0)
        with pytest.raises(DomainError):
            coupling_f_sq(med, 1.0)

    def test_g_sq_zero_frequency(self):
        assert coupling_g_sq(MED, 0.0) == 0.0

    def test_g_sq_shifted_resonance(self):
        w = math.sqrt(5.0)
        expected = 2.0 / (math.pi * const.mu0 * 0.1)
        assert coupling_g_sq(MED, w) == pytest.approx(expected, rel=1e-13)

    def test_g_sq_is_im_kappa_identity(self):
        w = 1.0
        lhs = coupling_g_sq(MED, w)
        rhs = -(2.0 * w / (math.pi * const.mu0)) * MED.kappa(w).imag
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestReconstruction:
    def test_zero_coupling(self):
        table = CouplingTable(np.linspace(0, 40, 64), np.zeros(64))
        assert susceptibility_from_coupling(table, 1.0) == 0.0

    def test_electric_round_trip(self):
        table = CouplingTable.from_medium(ELECTRIC, "electric", omega_max=40.0)
        recon = susceptibility_from_coupling(table, 1.0, kind="electric", tol=1e-10)
        closed = ELECTRIC.chi_e(1.0)
        assert abs(recon - closed) / abs(closed) < 1e-6

    def test_magnetic_round_trip(self):
        table = CouplingTable.from_medium(MED, "magnetic", omega_max=40.0)
        recon = susceptibility_from_coupling(table, 1.0, kind="magnetic", tol=1e-10)
        closed = MED.chi_m(1.0)
        assert abs(recon - closed) / abs(closed) < 1e-6

    def test_tabulated_round_trip(self):
        grid = np.linspace(0.0, 40.0, 6000)
        table = CouplingTable(grid, ELECTRIC.coupling_f_sq(grid))
        recon = susceptibility_from_coupling(table, 1.0, kind="electric", tol=1e-9)
        closed = ELECTRIC.chi_e(1.0)
        assert abs(recon - closed) / abs(closed) < 1e-6


class TestKramersKronig:
    def test_lorentz_residual_small(self):
        res = kk_check_medium(ELECTRIC, [0.5, 1.0, 3.0], omega_max=100.0, tol=1e-9)
        assert res < 1e-4

    def test_zero_susceptibility(self):
        w = np.linspace(0, 10, 64)
        assert kk_check(w, np.zeros(64, dtype=complex), [1.0, 2.0]) == 0.0

    def test_constant_real_part_detected(self):
        w = np.linspace(0, 10, 256)
        chi = np.full(256, 1.0 + 0j)
        res = kk_check(w, chi, [2.0, 5.0])
        assert res == pytest.approx(1.0, rel=1e-6)


class TestInvariants:
    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(re=st.floats(-5, 5), im=st.floats(0.01, 5))
    def test_conjugation_symmetry(self, re, im):
        w = complex(re, im)
        for fn in (MED.chi_e, MED.kappa):
            assert abs(fn(-w.conjugate()) - fn(w).conjugate()) <= 1e-12 * max(1.0, abs(fn(w)))

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(w=st.floats(0.01, 50))
    def test_positivity(self, w):
        assert MED.eps(w).imag > 0.0
        assert MED.mu(w).imag > 0.0
        assert MED.kappa(w).imag < 0.0
        assert MED.coupling_f_sq(w) >= 0.0
        assert MED.coupling_g_sq(w) >= 0.0

    @settings(max_examples=30, deadline=None, derandomize=True)
    @given(w=st.floats(4.01, 200))
    def test_high_frequency_decay_bound(self, w):
        # |chi_e| <= wpe^2/(w^2 - w0e^2) above 2*w0e
        assert abs(MED.chi_e(w)) <= 1.0 / (w * w - 4.0) * (1 + 1e-12)

    def test_round_trip_band(self):
        table = CouplingTable.from_medium(ELECTRIC, "electric", omega_max=60.0)
        for w in np.linspace(0.2, 20.0, 12):
            recon = susceptibility_from_coupling(table, float(w), kind="electric", tol=1e-10)
            closed = ELECTRIC.chi_e(float(w))
            assert abs(recon - closed) / abs(closed) < 1e-6

    def test_response_sample_consistency(self):
        s = ResponseSample.from_medium(MED, 1.3)
        assert abs(s.kappa * s.mu - 1.0) < 1e-12

    def test_fixed_response(self):
        med = FixedResponseMedium(2.25, 1.0)
        assert med.eps(3.0) == 2.25 + 0j
        assert med.refractive_index(3.0) == pytest.approx(1.5)
        assert not med.is_lossy

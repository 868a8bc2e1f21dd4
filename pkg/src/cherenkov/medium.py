"""Electromagnetic response of a single-resonance Lorentz magnetodielectric.

The medium is specified by six nonnegative frequencies: coupling strengths
(omega_pe, omega_pm), transverse resonances (omega_0e, omega_0m) and
absorption rates (gamma_e, gamma_m).  The complex permittivity and
permeability are

    eps(w)   = 1 + omega_pe^2 / (omega_0e^2 - w^2 - i gamma_e w)
    mu(w)    = 1 + omega_pm^2 / (omega_0m^2 - w^2 - i gamma_m w)
    kappa(w) = 1 / mu(w)

kappa is computed as 1/mu rather than through an independent magnetic
Lorentz form: the magnetic coupling density then carries the shifted
resonance (omega_0m^2 + omega_pm^2) in its denominator, which keeps the
coupling/susceptibility identities mutually consistent.

All response evaluations accept real nonnegative frequencies, complex
frequencies, or numpy arrays of either; branch-resolving code relies on
evaluation off the real axis.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from . import constants as const
from .errors import ConvergenceError, DegenerateModelError, DomainError
from .quadrature import integrate_pv

__all__ = [
    "LorentzMedium",
    "FixedResponseMedium",
    "ResponseSample",
    "chi_e",
    "mu_and_kappa",
    "coupling_f_sq",
    "coupling_g_sq",
    "CouplingTable",
    "susceptibility_from_coupling",
    "kk_check",
]

_KAPPA_POLE_TOL = 1e-14


def _check_real_frequency(omega) -> None:
    """Reject negative real frequencies; complex arguments pass through."""
    if isinstance(omega, complex):  # covers np.complex128
        return
    if isinstance(omega, (int, float)):  # covers np.float64
        if omega < 0.0:
            raise DomainError(f"frequency must be >= 0, got {omega!r}")
        return
    w = np.asarray(omega)
    if np.iscomplexobj(w):
        return
    if np.any(w < 0.0):
        raise DomainError(f"frequency must be >= 0, got {omega!r}")


@dataclass(frozen=True)
class LorentzMedium:
    """Six-parameter single-resonance magnetodielectric model.

    Absorption rates may be zero only for transparent-mode evaluation; the
    lossy radiation kernel requires gamma_e > 0 or gamma_m > 0.
    """

    omega_pe: float
    omega_0e: float
    gamma_e: float
    omega_pm: float = 0.0
    omega_0m: float = 0.0
    gamma_m: float = 0.0

    def __post_init__(self):
        for name in ("omega_pe", "omega_0e", "gamma_e", "omega_pm", "omega_0m", "gamma_m"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0.0):
                raise DomainError(f"LorentzMedium.{name} must be a finite nonnegative number, got {v!r}")
        if self.omega_pe > 0.0 and self.omega_0e <= 0.0:
            raise DomainError("omega_0e must be > 0 when omega_pe > 0")
        if self.omega_pm > 0.0 and self.omega_0m <= 0.0:
            raise DomainError("omega_0m must be > 0 when omega_pm > 0")

    # -- susceptibilities and response functions ---------------------------

    def chi_e(self, omega):
        """Electric susceptibility omega_pe^2 / (omega_0e^2 - w^2 - i gamma_e w)."""
        _check_real_frequency(omega)
        w = omega
        return self.omega_pe**2 / (self.omega_0e**2 - w * w - 1j * self.gamma_e * w)

    def chi_m(self, omega):
        """Magnetic susceptibility 1 - kappa(w)."""
        return 1.0 - self.kappa(omega)

    def eps(self, omega):
        return 1.0 + self.chi_e(omega)

    def mu(self, omega):
        _check_real_frequency(omega)
        w = omega
        if self.omega_pm == 0.0:
            if isinstance(w, np.ndarray):
                return np.ones(w.shape, dtype=complex)
            return 1.0 + 0j
        return 1.0 + self.omega_pm**2 / (self.omega_0m**2 - w * w - 1j * self.gamma_m * w)

    def kappa(self, omega):
        m = self.mu(omega)
        if isinstance(m, np.ndarray):
            small = np.abs(m) < _KAPPA_POLE_TOL
            if np.any(small):
                raise DegenerateModelError(
                    f"kappa pole: |mu| < {_KAPPA_POLE_TOL} at omega = {np.asarray(omega)[small]}"
                )
        elif abs(m) < _KAPPA_POLE_TOL:
            raise DegenerateModelError(f"kappa pole: |mu| < {_KAPPA_POLE_TOL} at omega = {omega}")
        return 1.0 / m

    def refractive_index(self, omega):
        """n(w) = sqrt(eps * mu), principal branch (Im n >= 0 for a lossy medium)."""
        return np.sqrt(self.eps(omega) * self.mu(omega) + 0j)

    # derivatives in omega, needed by Newton polish and group velocities

    def eps_prime(self, omega):
        w = omega
        d = self.omega_0e**2 - w * w - 1j * self.gamma_e * w
        return self.omega_pe**2 * (2.0 * w + 1j * self.gamma_e) / (d * d)

    def mu_prime(self, omega):
        if self.omega_pm == 0.0:
            if isinstance(omega, np.ndarray):
                return np.zeros(omega.shape, dtype=complex)
            return 0j
        w = omega
        d = self.omega_0m**2 - w * w - 1j * self.gamma_m * w
        return self.omega_pm**2 * (2.0 * w + 1j * self.gamma_m) / (d * d)

    def kappa_prime(self, omega):
        m = self.mu(omega)
        return -self.mu_prime(omega) / (m * m)

    # -- coupling densities -------------------------------------------------

    def coupling_f_sq(self, omega):
        """Electric oscillator-continuum coupling density f^2(w) >= 0.

        Equals (2 w eps0 / pi) * Im eps(w); defined only for an absorbing
        electric response (gamma_e > 0).
        """
        _check_real_frequency(omega)
        if self.gamma_e <= 0.0:
            raise DomainError("f^2 requires gamma_e > 0: a transparent medium has no absorption continuum")
        w = float(omega) if isinstance(omega, (int, float)) else np.asarray(omega, dtype=float)
        num = 2.0 * self.gamma_e * const.eps0 * self.omega_pe**2 * w * w / math.pi
        den = (self.omega_0e**2 - w * w) ** 2 + self.gamma_e**2 * w * w
        return num / den

    def coupling_g_sq(self, omega):
        """Magnetic coupling density g^2(w) = -(2 w / pi mu0) * Im kappa(w).

        The shifted resonance omega_0m^2 + omega_pm^2 in the denominator is
        what kappa = 1/mu produces for the single-resonance mu model.
        """
        _check_real_frequency(omega)
        if self.gamma_m <= 0.0:
            raise DomainError("g^2 requires gamma_m > 0: a transparent medium has no absorption continuum")
        w = float(omega) if isinstance(omega, (int, float)) else np.asarray(omega, dtype=float)
        num = 2.0 * self.gamma_m * self.omega_pm**2 * w * w / (math.pi * const.mu0)
        den = (self.omega_0m**2 + self.omega_pm**2 - w * w) ** 2 + self.gamma_m**2 * w * w
        return num / den

    # -- misc ----------------------------------------------------------------

    @property
    def is_lossy(self) -> bool:
        return self.gamma_e > 0.0 or self.gamma_m > 0.0

    @property
    def is_magnetic(self) -> bool:
        return self.omega_pm > 0.0

    def frequency_scale(self) -> float:
        """Characteristic frequency used for default grids and caps."""
        candidates = [self.omega_0e, self.omega_0m, self.omega_pe, self.omega_pm]
        return max([v for v in candidates if v > 0.0], default=1.0)


@dataclass(frozen=True)
class FixedResponseMedium:
    """Constant (nondispersive) eps and mu, for textbook transparent limits."""

    eps_value: float = 1.0
    mu_value: float = 1.0

    def __post_init__(self):
        if self.eps_value <= 0.0 or abs(self.mu_value) < _KAPPA_POLE_TOL:
            raise DomainError("fixed-response medium requires eps > 0 and mu != 0")

    def _const(self, omega, value):
        if np.ndim(omega):
            return np.full(np.shape(omega), value, dtype=complex)
        return complex(value)

    def chi_e(self, omega):
        return self._const(omega, self.eps_value - 1.0)

    def chi_m(self, omega):
        return self._const(omega, 1.0 - 1.0 / self.mu_value)

    def eps(self, omega):
        return self._const(omega, self.eps_value)

    def mu(self, omega):
        return self._const(omega, self.mu_value)

    def kappa(self, omega):
        return self._const(omega, 1.0 / self.mu_value)

    def refractive_index(self, omega):
        return np.sqrt(self.eps(omega) * self.mu(omega))

    def eps_prime(self, omega):
        return self._const(omega, 0.0)

    def mu_prime(self, omega):
        return self._const(omega, 0.0)

    def kappa_prime(self, omega):
        return self._const(omega, 0.0)

    @property
    def is_lossy(self) -> bool:
        return False

    @property
    def is_magnetic(self) -> bool:
        return self.mu_value != 1.0

    def frequency_scale(self) -> float:
        return 1.0


@dataclass(frozen=True)
class ResponseSample:
    """All response functions of a medium at one real frequency."""

    omega: float
    eps: complex
    mu: complex
    kappa: complex
    chi_e: complex
    chi_m: complex

    @classmethod
    def from_medium(cls, medium, omega: float) -> "ResponseSample":
        eps = complex(medium.eps(omega))
        mu = complex(medium.mu(omega))
        kappa = complex(medium.kappa(omega))
        sample = cls(float(omega), eps, mu, kappa, complex(medium.chi_e(omega)), complex(medium.chi_m(omega)))
        sample.validate()
        return sample

    def validate(self, rel: float = 1e-12) -> None:
        if abs(self.eps - 1.0 - self.chi_e) > rel * max(1.0, abs(self.eps)):
            raise DomainError("response sample violates eps = 1 + chi_e")
        if abs(self.kappa - 1.0 + self.chi_m) > rel * max(1.0, abs(self.kappa)):
            raise DomainError("response sample violates kappa = 1 - chi_m")
        if abs(self.kappa * self.mu - 1.0) > rel:
            raise DomainError("response sample violates kappa * mu = 1")


# -- module-level operation wrappers (functional API) -------------------------


def chi_e(medium: LorentzMedium, omega):
    return medium.chi_e(omega)


def mu_and_kappa(medium: LorentzMedium, omega):
    """Return (mu, kappa) at omega; raises DegenerateModelError at a kappa pole."""
    return medium.mu(omega), medium.kappa(omega)


def coupling_f_sq(medium: LorentzMedium, omega):
    return medium.coupling_f_sq(omega)


def coupling_g_sq(medium: LorentzMedium, omega):
    return medium.coupling_g_sq(omega)


class CouplingTable:
    """A coupling density, either tabulated on a grid or given as a callable.

    Tabulated input is interpolated with a cubic spline; the analytic
    1/w^2 tail beyond the last grid point is calibrated from the endpoint
    (both Lorentz coupling densities decay exactly like 1/w^2).
    """

    def __init__(
        self,
        omega_grid: Sequence[float] | None = None,
        values: Sequence[float] | None = None,
        func: Callable[[float], float] | None = None,
        omega_max: float | None = None,
    ):
        if func is not None:
            if omega_max is None:
                raise DomainError("a callable coupling needs an explicit omega_max for the tail split")
            self._func = func
            self.omega_max = float(omega_max)
        else:
            w = np.asarray(omega_grid, dtype=float)
            v = np.asarray(values, dtype=float)
            if w.ndim != 1 or w.size < 4 or w.shape != v.shape:
                raise DomainError("tabulated coupling needs matching 1D grids with >= 4 points")
            if np.any(np.diff(w) <= 0.0) or w[0] < 0.0:
                raise DomainError("coupling grid must be strictly increasing and nonnegative")
            spline = CubicSpline(w, v)
            lo, hi = w[0], w[-1]
            self._func = lambda x: float(spline(np.clip(x, lo, hi)))
            self.omega_max = float(hi)
        # tail amplitude A such that density ~ A / w^2 beyond omega_max
        self.tail_amplitude = float(self._func(self.omega_max)) * self.omega_max**2

    @classmethod
    def from_medium(cls, medium: LorentzMedium, kind: str, omega_max: float) -> "CouplingTable":
        if kind == "electric":
            return cls(func=medium.coupling_f_sq, omega_max=omega_max)
        if kind == "magnetic":
            return cls(func=medium.coupling_g_sq, omega_max=omega_max)
        raise DomainError(f"unknown coupling kind {kind!r}")

    def __call__(self, omega: float) -> float:
        return float(self._func(omega))


def _tail_integral(amplitude: float, omega: float, cut: float) -> float:
    """int_cut^inf (A/w'^2) / (w'^2 - w^2) dw' in closed form (w < cut)."""
    if amplitude == 0.0:
        return 0.0
    if omega == 0.0:
        return amplitude / (3.0 * cut**3)
    w2 = omega * omega
    return (amplitude / w2) * (
        -1.0 / (2.0 * omega) * math.log((cut - omega) / (cut + omega)) - 1.0 / cut
    )


def susceptibility_from_coupling(
    coupling: CouplingTable,
    omega: float,
    kind: str = "electric",
    tol: float = 1e-8,
) -> complex:
    """Reconstruct a complex susceptibility from its coupling density.

    Evaluates the frequency-domain dispersion integral

        chi(w) = pref * [ PV int_0^W  rho(w') / (w'^2 - w^2) dw' + tail ]
                 + i pi * pref * rho(w) / (2 w)

    with pref = 1/eps0 for the electric density and mu0 for the magnetic one;
    the imaginary part is the -i0+ prescription made explicit.  This is the
    independent oracle tying the coupling densities back to the closed-form
    susceptibilities.
    """
    if kind == "electric":
        pref = 1.0 / const.eps0
    elif kind == "magnetic":
        pref = const.mu0
    else:
        raise DomainError(f"unknown coupling kind {kind!r}")
    if omega < 0.0:
        raise DomainError(f"frequency must be >= 0, got {omega}")

    cut = coupling.omega_max
    if omega >= cut:
        raise DomainError(f"reconstruction frequency {omega} must lie inside the sampled grid [0, {cut})")

    # pref is folded into the integrand so its magnitude is O(|chi|); the
    # quadrature tolerance is then meaningfully relative
    if omega == 0.0:
        res = _integrate_coupling_static(coupling, pref, tol)
        if not res.converged:
            raise ConvergenceError(f"PV reconstruction did not converge: {res.detail}")
        real = res.value + pref * _tail_integral(coupling.tail_amplitude, 0.0, cut)
        return complex(real, 0.0)

    # PV over [0, cut] with the pole at omega; smooth factor pref*rho(w')/(w' + w)
    smooth = lambda wp: pref * coupling(wp) / (wp + omega)
    res = integrate_pv(smooth, omega, 0.0, cut, tol=tol)
    if not res.converged:
        raise ConvergenceError(f"PV reconstruction did not converge at omega={omega}: {res.detail}")
    real = res.value + pref * _tail_integral(coupling.tail_amplitude, omega, cut)
    imag = math.pi * pref * coupling(omega) / (2.0 * omega)
    return complex(real, imag)


def _integrate_coupling_static(coupling: CouplingTable, pref: float, tol: float):
    from .quadrature import integrate_adaptive

    return integrate_adaptive(lambda wp: pref * coupling(wp) / (wp * wp) if wp > 0 else 0.0,
                              1e-12 * coupling.omega_max, coupling.omega_max, tol=tol)


def kk_check(
    omega_grid: Sequence[float],
    chi_values: Sequence[complex],
    test_omegas: Sequence[float],
    tol: float = 1e-8,
) -> float:
    """Maximum relative Kramers-Kronig residual of a tabulated susceptibility.

    For each test frequency w the residual is

        | Re chi(w) - (2/pi) PV int_0^W  w' Im chi(w') / (w'^2 - w^2) dw' - tail |
        -----------------------------------------------------------------------
                                max(|chi(w)|, tiny)

    with the analytic 1/w'^3 tail of Im chi beyond the grid.  A small residual
    certifies causality of the model; a frequency-independent real offset is
    detected at full size.
    """
    w = np.asarray(omega_grid, dtype=float)
    chi = np.asarray(chi_values, dtype=complex)
    if w.ndim != 1 or w.shape != chi.shape or w.size < 8:
        raise DomainError("kk_check needs matching 1D grids with >= 8 points")
    if np.any(np.diff(w) <= 0.0) or w[0] < 0.0:
        raise DomainError("kk_check grid must be strictly increasing and nonnegative")

    re_spline = CubicSpline(w, chi.real)
    im_spline = CubicSpline(w, chi.imag)
    cut = float(w[-1])
    # Im chi ~ B / w^3 asymptotically for any absorptive single-resonance model
    tail_b = float(im_spline(cut)) * cut**3

    worst = 0.0
    for w0 in np.asarray(test_omegas, dtype=float):
        if not (0.0 < w0 < cut):
            raise DomainError(f"test frequency {w0} must lie inside (0, {cut})")
        smooth = lambda wp: wp * float(im_spline(np.clip(wp, w[0], cut))) / (wp + w0)
        res = integrate_pv(smooth, w0, 0.0, cut, tol=tol)
        if not res.converged:
            raise ConvergenceError(f"KK transform did not converge at omega={w0}: {res.detail}")
        tail = _tail_integral(tail_b, w0, cut)
        reconstructed = (2.0 / math.pi) * (res.value + tail)
        target = float(re_spline(w0))
        denom = max(abs(complex(target, float(im_spline(w0)))), 1e-300)
        worst = max(worst, abs(target - reconstructed) / denom)
    return worst


def kk_check_medium(
    medium: LorentzMedium,
    test_omegas: Sequence[float],
    omega_max: float | None = None,
    n_grid: int = 4001,
    tol: float = 1e-8,
) -> float:
    """Convenience wrapper: KK residual of the medium's electric susceptibility."""
    scale = medium.omega_0e if medium.omega_0e > 0 else medium.frequency_scale()
    cut = omega_max if omega_max is not None else 50.0 * scale
    grid = np.linspace(0.0, cut, n_grid)
    chi = medium.chi_e(grid)
    return kk_check(grid, chi, test_omegas, tol=tol)

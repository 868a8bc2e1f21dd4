"""Radiated-power spectra for all mechanics regimes, lossy and transparent.

Spectral density per angular frequency is the primary output; totals are
trapezoid integrals of the density and inherit its caps.  The lossy-medium
density at each omega is

    dP/dw = (e^2 v / 2 pi^2 eps0) * w * [thermal factor] *
            int dk k K(w, k) (1 - cos^2 theta_regime(w, k))

over the admissible k-range, where K is the radiation kernel.  Internally
the k-integral is evaluated in the dimensionless variable u = k v / w, which
makes the integrand O(1) and the classical threshold sit at u = 1:

    int dk k K (1 - cos^2 th) = (1/v^2) * int du (u - u cos^2 th) Khat(w, u),
    Khat = Im( 1 / (u^2 kappa / beta^2 - eps) ).

Classical integrals need explicit caps (the uncapped integrals diverge for a
magnetic medium); totals are therefore labelled cap-dependent and a tail
estimate triggers a warning when the cap bites.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import constants as const
from .errors import CapWarning, ConvergenceError, DomainError
from .kernels import Particle, RegimeSpec, admissible_k_range, emission_angle
from .quadrature import integrate_bracketed
from .thermal import ThermalState, coth_weight, f_t_factor

__all__ = [
    "Spectrum",
    "IntegrationDomain",
    "MatsubaraResult",
    "power_classical_lossy",
    "power_classical_transparent",
    "power_classical_matsubara",
    "power_quantum",
    "power_quantum_transparent",
    "frank_tamm_density",
]


@dataclass(frozen=True)
class IntegrationDomain:
    """User-supplied integration caps and quadrature controls."""

    omega_max: float
    k_max: float
    relative_tolerance: float = 1e-6
    bracket_refinement: int = 3

    def __post_init__(self):
        if not (self.omega_max > 0.0 and self.k_max > 0.0):
            raise DomainError("omega_max and k_max must be > 0")
        if not (1e-12 < self.relative_tolerance < 1e-2):
            raise DomainError(
                f"relative_tolerance must lie in (1e-12, 1e-2), got {self.relative_tolerance}"
            )
        if self.bracket_refinement < 0:
            raise DomainError("bracket_refinement must be >= 0")


@dataclass(frozen=True)
class Spectrum:
    """Tabulated spectral power density dP/domega with provenance metadata.

    ``density`` is in W/(rad/s); ``total`` is its trapezoid integral over
    ``omega_grid`` (cap-dependent in classical mode).  ``components`` carries
    the labelled zero-temperature / thermal split when T > 0.
    """

    omega_grid: np.ndarray
    density: np.ndarray
    total: float
    regime: RegimeSpec
    error_estimate: np.ndarray
    total_error: float
    cutoffs_applied: dict
    components: dict = field(default_factory=dict)
    warnings: tuple = ()


@dataclass(frozen=True)
class MatsubaraResult:
    """Total energy-loss rate from the Matsubara-frequency route."""

    total: float
    mode_sums: np.ndarray
    tail: float
    truncation_error: float
    converged: bool
    temperature: float
    mode_count: int


def _prefactor(particle: Particle) -> float:
    """e^2 / (2 pi^2 eps0 v); multiplies w * Jhat to give the density."""
    return particle.charge**2 / (2.0 * math.pi**2 * const.eps0 * particle.v)


def _thermal_factor(mechanics: str, particle: Particle, omega: float, temperature: float) -> float:
    if temperature == 0.0:
        return 1.0
    if particle.hbar_scale == 0.0:
        raise DomainError(
            "hbar_scale = 0 with T > 0 has no finite spectrum: the thermal weight "
            "diverges like 2 k_B T / (hbar_scale * hbar * omega)"
        )
    w_eff = particle.hbar_scale * omega
    if mechanics == "classical":
        return coth_weight(w_eff, temperature)
    return f_t_factor(w_eff, temperature, particle.energy)


def _cos_theta_scaled(mechanics: str, particle: Particle, omega: float):
    """cos(theta) as a function of u = k v / omega, with per-omega constants folded in."""
    if mechanics == "classical" or particle.hbar_eff == 0.0:
        return lambda u: 1.0 / u
    if mechanics == "nonrel_quantum":
        q = particle.hbar_eff * omega / (2.0 * particle.mass * particle.v**2)
        return lambda u: 1.0 / u + q * u
    if mechanics == "rel_quantum":
        b = particle.hbar_eff * omega * math.sqrt(1.0 - particle.beta**2) / (
            2.0 * particle.mass * const.c**2
        )
        q = b / particle.beta**2
        return lambda u: (1.0 - b) / u + q * u
    raise DomainError(f"unknown mechanics {mechanics!r}")


def _peak_breakpoints(medium, omega: float, beta: float, u_lo: float, u_hi: float, levels: int):
    """Cluster of u-breakpoints around the kernel resonance at u = Re(n) beta."""
    n = complex(medium.refractive_index(omega))
    u_peak = n.real * beta
    if not (u_lo < u_peak < u_hi):
        return []
    width = max(abs(n.imag) * beta, 1e-13 * u_peak)
    pts = [u_peak]
    d = width
    for _ in range(levels + 4):
        pts.extend((u_peak - d, u_peak + d))
        d *= 8.0
    return [p for p in pts if u_lo < p < u_hi]


def _k_integral(medium, particle: Particle, mechanics: str, omega: float,
                domain: IntegrationDomain):
    """Dimensionless Jhat(omega) = int du (u - u cos^2 th) Khat, its error and notes.

    Returns (value, error, notes).  An empty admissible range gives an exact
    zero (beyond the recoil cutoff); a cap that truncates the range is noted.
    """
    notes = []
    rng = admissible_k_range(mechanics, particle, omega)
    if rng is None:
        return 0.0, 0.0, notes
    k_lo, k_hi_nat = rng
    k_hi = min(k_hi_nat, domain.k_max)
    if k_hi <= k_lo:
        notes.append(("cap excludes range", f"k cap {domain.k_max:.6g} below admissible range at omega={omega:.6g}"))
        return 0.0, 0.0, notes
    if math.isfinite(k_hi_nat) and k_hi_nat > domain.k_max:
        notes.append(("cap before cutoff", f"k cap binds before the natural cutoff at omega={omega:.6g}"))

    v = particle.v
    beta = particle.beta
    u_lo = k_lo * v / omega
    u_hi = k_hi * v / omega

    eps = complex(medium.eps(omega))
    kap = complex(medium.kappa(omega))
    inv_beta2 = 1.0 / beta**2
    cos_theta = _cos_theta_scaled(mechanics, particle, omega)

    def integrand(u: float) -> float:
        z = (u * u * inv_beta2) * kap - eps
        khat = (1.0 / z).imag
        ct = cos_theta(u)
        return u * (1.0 - ct * ct) * khat

    pts = _peak_breakpoints(medium, omega, beta, u_lo, u_hi, domain.bracket_refinement)
    res = integrate_bracketed(integrand, pts, u_lo, u_hi, tol=domain.relative_tolerance)
    if not res.converged:
        notes.append(("k-integral not converged", f"at omega={omega:.6g}: {res.detail}"))

    # crude look-ahead over one decade past the cap: log-divergent magnetic tail
    if u_hi < k_hi_nat * v / omega:
        tail = abs(integrand(0.999 * u_hi)) * u_hi * math.log(10.0)
        if tail > domain.relative_tolerance * max(1.0, abs(res.value)) * 100.0:
            notes.append(("cap-dependent tail",
                          f"k-integral tail beyond cap ~{tail:.3e} at omega={omega:.6g}"))
    return res.value, res.error_estimate, notes


def _lossy_spectrum(medium, particle: Particle, domain: IntegrationDomain,
                    mechanics: str, temperature: float, omega_grid) -> Spectrum:
    if not medium.is_lossy:
        raise DomainError("lossy-mode power needs an absorbing medium; use the transparent routines")
    if omega_grid is None:
        omega_grid = np.linspace(domain.omega_max / 200.0, domain.omega_max, 200)
    w = np.asarray(omega_grid, dtype=float)
    if w.ndim != 1 or np.any(np.diff(w) <= 0) or w[0] <= 0.0:
        raise DomainError("omega_grid must be strictly increasing and positive")
    if w[-1] > domain.omega_max * (1.0 + 1e-12):
        raise DomainError("omega_grid exceeds domain.omega_max")

    pref = _prefactor(particle)
    density0 = np.empty_like(w)
    err = np.empty_like(w)
    notes: list[tuple[str, str]] = []
    for i, wi in enumerate(w):
        jhat, jerr, jnotes = _k_integral(medium, particle, mechanics, wi, domain)
        density0[i] = pref * wi * jhat
        err[i] = pref * wi * jerr
        notes.extend(jnotes)

    if temperature > 0.0:
        factor = np.array([_thermal_factor(mechanics, particle, wi, temperature) for wi in w])
        density = density0 * factor
        err = err * factor
        components = {"zero_T": density0, "thermal": density0 * (factor - 1.0)}
    else:
        density = density0
        components = {}

    # one warning per condition kind, not one per frequency bin
    grouped: dict[str, list[str]] = {}
    for kind, msg in notes:
        grouped.setdefault(kind, []).append(msg)
    summaries = tuple(
        f"{kind} in {len(msgs)} of {len(w)} frequency bins (first: {msgs[0]})"
        for kind, msgs in grouped.items()
    )
    for msg in summaries:
        warnings.warn(msg, CapWarning, stacklevel=3)

    regime = RegimeSpec(mechanics=mechanics, temperature=temperature, medium_mode="lossy")
    cutoffs = {
        "omega_max": domain.omega_max,
        "k_max": domain.k_max,
        "k_lo": "omega/v (classical threshold)" if mechanics == "classical" else "admissible range",
        "total_is_cap_dependent": mechanics == "classical",
    }
    return Spectrum(
        omega_grid=w,
        density=density,
        total=float(np.trapezoid(density, w)),
        regime=regime,
        error_estimate=err,
        total_error=float(np.trapezoid(err, w)),
        cutoffs_applied=cutoffs,
        components=components,
        warnings=summaries,
    )


def power_classical_lossy(medium, particle: Particle, domain: IntegrationDomain,
                          temperature: float = 0.0, omega_grid=None) -> Spectrum:
    """Classical energy-loss spectrum in a lossy medium, optionally at T > 0.

    The temperature enters only through the multiplicative coth weight, so
    the T > 0 spectrum carries the labelled zero-T / thermal split in
    ``components`` without a second quadrature pass.
    """
    return _lossy_spectrum(medium, particle, domain, "classical", temperature, omega_grid)


def power_quantum(medium, particle: Particle, domain: IntegrationDomain,
                  regime: RegimeSpec, temperature: float | None = None,
                  omega_grid=None) -> Spectrum:
    """Quantum (nonrelativistic or relativistic) spectrum in a lossy medium.

    The k-integral runs over the recoil-admissible range, so the density is
    exactly zero beyond the kinematic cutoff; with hbar_scale = 0 it
    reproduces the classical spectrum bin for bin.
    """
    if regime.mechanics not in ("nonrel_quantum", "rel_quantum"):
        raise DomainError("power_quantum needs a quantum mechanics regime")
    t = regime.temperature if temperature is None else temperature
    return _lossy_spectrum(medium, particle, domain, regime.mechanics, t, omega_grid)


def _transparent_band_check(medium):
    if medium.is_lossy:
        raise DomainError("transparent-mode power needs gamma_e = gamma_m = 0 (or a fixed response)")


def _real_index(medium, omega: float):
    """(n, mu) on the transparent band, or None inside a stop band (n^2 <= 0)."""
    eps = complex(medium.eps(omega))
    mu = complex(medium.mu(omega))
    n2 = (eps * mu).real
    if n2 <= 0.0:
        return None
    return math.sqrt(n2), mu.real


def power_classical_transparent(medium, particle: Particle, band,
                                temperature: float = 0.0) -> Spectrum:
    """Classical transparent-medium spectrum: the Frank-Tamm measure times mu.

    dP/dOm = (e^2 v / 4 pi eps0 c^2) Om mu(Om) [coth] (1 - c^2 / (v^2 n^2(Om)))
    wherever the medium propagates (n^2 > 0) and the threshold n beta > 1
    holds; zero elsewhere.
    """
    _transparent_band_check(medium)
    w = np.asarray(band, dtype=float)
    if w.ndim != 1 or np.any(w <= 0.0):
        raise DomainError("band must be a 1D grid of positive frequencies")
    pref = particle.charge**2 * particle.v / (4.0 * math.pi * const.eps0 * const.c**2)
    v = particle.v

    density0 = np.zeros_like(w)
    for i, wi in enumerate(w):
        nm = _real_index(medium, wi)
        if nm is None:
            continue
        n, mu = nm
        if n * particle.beta <= 1.0:
            continue
        density0[i] = pref * wi * mu * (1.0 - const.c**2 / (v * v * n * n))

    if temperature > 0.0:
        factor = np.array([_thermal_factor("classical", particle, wi, temperature) for wi in w])
        density = density0 * factor
        components = {"zero_T": density0, "thermal": density0 * (factor - 1.0)}
    else:
        density = density0
        components = {}

    regime = RegimeSpec(mechanics="classical", temperature=temperature, medium_mode="transparent")
    return Spectrum(
        omega_grid=w,
        density=density,
        total=float(np.trapezoid(density, w)),
        regime=regime,
        error_estimate=np.zeros_like(w),
        total_error=0.0,
        cutoffs_applied={"band": (float(w[0]), float(w[-1]))},
        components=components,
        warnings=(),
    )


def power_quantum_transparent(medium, particle: Particle, band, regime: RegimeSpec,
                              temperature: float | None = None) -> Spectrum:
    """Quantum transparent-medium spectrum with the exact recoil bracket.

    dP/dOm = (e^2 v / 4 pi eps0 c^2) Om mu [F_T] (1 - (c^2/n^2 v^2) B^2),
    clamped to zero where the parenthesis is negative (below threshold or
    above the recoil cutoff), with

        B = 1 + (l hbar Om / 2 m c^2) (n^2 - 1) sqrt(1 - beta^2)   (relativistic)
        B = 1 + (l hbar Om / 2 m c^2) n^2                          (nonrelativistic)

    the on-shell cos(theta) brackets of the two quantum angle relations.
    """
    if regime.mechanics not in ("nonrel_quantum", "rel_quantum"):
        raise DomainError("power_quantum_transparent needs a quantum mechanics regime")
    _transparent_band_check(medium)
    t = regime.temperature if temperature is None else temperature
    w = np.asarray(band, dtype=float)
    if w.ndim != 1 or np.any(w <= 0.0):
        raise DomainError("band must be a 1D grid of positive frequencies")

    pref = particle.charge**2 * particle.v / (4.0 * math.pi * const.eps0 * const.c**2)
    v = particle.v
    mc2 = particle.mass * const.c**2
    lh = particle.hbar_eff
    sqrt_g = math.sqrt(1.0 - particle.beta**2)

    density0 = np.zeros_like(w)
    for i, wi in enumerate(w):
        nm = _real_index(medium, wi)
        if nm is None:
            continue
        n, mu = nm
        if regime.mechanics == "rel_quantum":
            bracket = 1.0 + (lh * wi / (2.0 * mc2)) * (n * n - 1.0) * sqrt_g
        else:
            bracket = 1.0 + (lh * wi / (2.0 * mc2)) * n * n
        measure = 1.0 - (const.c**2 / (n * n * v * v)) * bracket * bracket
        if measure > 0.0:
            density0[i] = pref * wi * mu * measure

    if t > 0.0:
        factor = np.array([_thermal_factor(regime.mechanics, particle, wi, t) for wi in w])
        density = density0 * factor
        components = {"zero_T": density0, "thermal": density0 * (factor - 1.0)}
    else:
        density = density0
        components = {}

    out_regime = RegimeSpec(mechanics=regime.mechanics, temperature=t, medium_mode="transparent")
    return Spectrum(
        omega_grid=w,
        density=density,
        total=float(np.trapezoid(density, w)),
        regime=out_regime,
        error_estimate=np.zeros_like(w),
        total_error=0.0,
        cutoffs_applied={"band": (float(w[0]), float(w[-1]))},
        components=components,
        warnings=(),
    )


def power_classical_matsubara(medium, particle: Particle, domain: IntegrationDomain,
                              temperature: float, state: ThermalState | None = None,
                              omega_grid=None) -> MatsubaraResult:
    """Classical thermal total via the Matsubara-frequency sum.

    The coth weight is expanded over its poles at xi_l = 2 pi k_B T l / hbar,

        coth(h w / 2 k T) = (2 pi k T / hbar) sum_l' (2 w / pi) / (w^2 + xi_l^2)

    (primed sum: the l = 0 term is half-weighted), which turns the coth-form
    total into a convergent sum of Lorentzian-weighted moments of the
    zero-temperature density.  With the integral tail over l >= L the result
    equals the coth-form total; without it, the sum vanishes with T -> 0 at
    fixed L while the tail carries the temperature-independent part.
    """
    if temperature <= 0.0:
        raise DomainError("power_classical_matsubara needs T > 0")
    if particle.hbar_scale == 0.0:
        raise DomainError("hbar_scale = 0 has no Matsubara grid (classical thermal limit diverges)")
    if state is None:
        state = ThermalState(temperature=temperature, matsubara_count=10_000,
                             tail_policy="integral_tail")
    elif abs(state.temperature - temperature) > 1e-9 * max(temperature, state.temperature):
        raise DomainError(
            f"temperature argument {temperature} disagrees with state.temperature {state.temperature}"
        )

    if omega_grid is None:
        omega_grid = np.linspace(domain.omega_max / 400.0, domain.omega_max, 400)
    base = power_classical_lossy(medium, particle, domain, temperature=0.0, omega_grid=omega_grid)
    w = base.omega_grid
    d0 = base.density

    hbar_eff = particle.hbar_eff
    spacing = const.TWO_PI * const.k_B * temperature / hbar_eff
    n_modes = state.matsubara_count
    xi = spacing * np.arange(n_modes, dtype=float)
    pref = const.TWO_PI * const.k_B * temperature / hbar_eff

    # mode_sums[l] = pref * w_l * (2/pi) int dw d0(w) w / (w^2 + xi_l^2)
    lorentz = w[None, :] / (w[None, :] ** 2 + xi[:, None] ** 2)
    mode_integrals = (2.0 / math.pi) * np.trapezoid(d0[None, :] * lorentz, w, axis=1)
    weights = np.ones(n_modes)
    weights[0] = 0.5
    mode_sums = pref * weights * mode_integrals

    def tail_from(cut: float) -> float:
        if cut <= 0.0:
            return float(np.trapezoid(d0, w))
        return float(np.trapezoid(d0 * (2.0 / math.pi) * np.arctan(w / cut), w))

    tail_mid = tail_from(spacing * (n_modes - 0.5))
    tail_lo = tail_from(spacing * (n_modes - 1.0))
    tail_hi = tail_from(spacing * n_modes)
    truncation_error = 0.5 * abs(tail_lo - tail_hi)

    if state.tail_policy == "integral_tail":
        tail = tail_mid
    else:
        tail = 0.0
        truncation_error = tail_lo  # everything beyond the truncation is dropped

    total = float(np.sum(mode_sums) + tail)
    scale = max(abs(total), float(np.trapezoid(d0, w)), 1e-300)
    converged = truncation_error <= max(domain.relative_tolerance, 1e-3) * scale
    if not converged:
        warnings.warn(
            f"Matsubara truncation error {truncation_error:.3e} exceeds tolerance "
            f"for total {total:.6e}; increase matsubara_count or enable the integral tail",
            CapWarning,
            stacklevel=2,
        )
    return MatsubaraResult(
        total=total,
        mode_sums=mode_sums,
        tail=tail,
        truncation_error=truncation_error,
        converged=converged,
        temperature=temperature,
        mode_count=n_modes,
    )


def frank_tamm_density(particle: Particle, n: float, omega: float, mu: float = 1.0) -> float:
    """Textbook transparent-medium density (e^2 v / 4 pi eps0 c^2) w mu (1 - 1/(n b)^2)."""
    nb = n * particle.beta
    if nb <= 1.0:
        return 0.0
    pref = particle.charge**2 * particle.v / (4.0 * math.pi * const.eps0 * const.c**2)
    return pref * omega * mu * (1.0 - 1.0 / nb**2)

"""Spectral radiation kernel, emission angles and kinematic cutoffs.

The lossy-medium energy loss integrals all share the kernel

    K(w, k) = Im( 1 / (-w^2 eps(w) + k^2 c^2 kappa(w)) )
            = (w^2 Im eps - k^2 c^2 Im kappa) / |同|^2  >= 0,

which collapses to delta weights on the dispersion branches in the
transparent limit.  Emission is allowed where the regime's cos(theta)
relation lands in [-1, 1]:

    classical     cos th = w/(k v)
    nonrel        cos th = (w/(k v)) (1 + l hbar k^2 / (2 m w))
    relativistic  cos th = (w/(k v)) [1 + (l hbar w / 2 m c^2)
                                        (k^2 c^2/w^2 - 1) sqrt(1 - beta^2)]

with l = hbar_scale the classical-limit knob multiplying hbar.  The quantum
relations are exact kinematics (energy-momentum conservation for photon
emission), which is what produces the recoil cutoff frequencies.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import constants as const
from .dispersion import BranchSet
from .errors import DegenerateBranchWarning, DomainError, NoRadiationError

__all__ = [
    "Particle",
    "RegimeSpec",
    "MECHANICS",
    "MEDIUM_MODES",
    "spectral_kernel",
    "emission_angle",
    "admissible_k_range",
    "cutoff_frequency",
    "on_shell_allowed",
    "transparent_weights",
    "spin_sum_factor",
]

MECHANICS = ("classical", "nonrel_quantum", "rel_quantum")
MEDIUM_MODES = ("lossy", "transparent")


@dataclass(frozen=True)
class Particle:
    """Uniformly moving point charge.

    ``hbar_scale`` multiplies hbar wherever it enters emission kinematics and
    thermal occupation arguments, giving a continuous classical-limit path
    (0 = classical kinematics, 1 = physical).
    """

    charge: float = const.e_charge
    mass: float = const.m_e
    beta: float = 0.9
    hbar_scale: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise DomainError(f"particle.beta must be in (0, 1), got {self.beta}")
        if not self.mass > 0.0:
            raise DomainError(f"particle.mass must be > 0, got {self.mass}")
        if not 0.0 <= self.hbar_scale <= 1.0:
            raise DomainError(f"particle.hbar_scale must be in [0, 1], got {self.hbar_scale}")

    @property
    def v(self) -> float:
        return self.beta * const.c

    @property
    def lorentz_gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.beta**2)

    @property
    def energy(self) -> float:
        """Relativistic total energy m c^2 / sqrt(1 - beta^2), in J."""
        return self.lorentz_gamma * self.mass * const.c**2

    @property
    def hbar_eff(self) -> float:
        return self.hbar_scale * const.hbar


@dataclass(frozen=True)
class RegimeSpec:
    """Which mechanics, temperature and medium evaluation mode to use."""

    mechanics: str = "classical"
    temperature: float = 0.0
    medium_mode: str = "lossy"

    def __post_init__(self):
        if self.mechanics not in MECHANICS:
            raise DomainError(f"regime.mechanics must be one of {MECHANICS}, got {self.mechanics!r}")
        if self.medium_mode not in MEDIUM_MODES:
            raise DomainError(f"regime.medium_mode must be one of {MEDIUM_MODES}, got {self.medium_mode!r}")
        if self.temperature < 0.0:
            raise DomainError(f"regime.temperature must be >= 0, got {self.temperature}")


def spectral_kernel(medium, omega, k):
    """Radiation kernel Im(1/(-w^2 eps + k^2 c^2 kappa)), nonnegative for lossy media.

    Accepts scalars or broadcastable arrays.  Transparent media must go
    through ``transparent_weights`` instead; the kernel is singular on the
    branch set there.
    """
    if not medium.is_lossy:
        raise DomainError("spectral_kernel needs an absorbing medium; use transparent_weights for gamma = 0")
    w = np.asarray(omega, dtype=float) if np.ndim(omega) else omega
    kk = np.asarray(k, dtype=float) if np.ndim(k) else k
    den = -(w * w) * medium.eps(w) + (kk * const.c) ** 2 * medium.kappa(w)
    out = (1.0 / den).imag
    return out


def _cos_theta_classical(particle: Particle, omega, k):
    return omega / (k * particle.v)


def _cos_theta_nonrel(particle: Particle, omega, k):
    lh = particle.hbar_eff
    return omega / (k * particle.v) + lh * k / (2.0 * particle.mass * particle.v)


def _recoil_parameter(particle: Particle, omega):
    """b = l hbar w sqrt(1 - beta^2) / (2 m c^2), the relativistic recoil strength."""
    return particle.hbar_eff * omega * math.sqrt(1.0 - particle.beta**2) / (2.0 * particle.mass * const.c**2)


def _cos_theta_rel(particle: Particle, omega, k):
    b = _recoil_parameter(particle, omega)
    v = particle.v
    return (1.0 - b) * omega / (k * v) + b * k * const.c**2 / (omega * v)


def emission_angle(mechanics: str, particle: Particle, omega, k):
    """cos(theta) of the emitted wave vector relative to the particle path.

    The value is unbounded; |cos theta| > 1 means emission at this (w, k) is
    kinematically forbidden.
    """
    if mechanics == "classical":
        return _cos_theta_classical(particle, omega, k)
    if mechanics == "nonrel_quantum":
        return _cos_theta_nonrel(particle, omega, k)
    if mechanics == "rel_quantum":
        return _cos_theta_rel(particle, omega, k)
    raise DomainError(f"unknown mechanics {mechanics!r}")


def admissible_k_range(mechanics: str, particle: Particle, omega: float):
    """Wave-number interval where |cos theta| <= 1, or None if empty.

    Classical: [w/v, inf).  The quantum relations have the form A/k + B k
    with positive A, B, so the admissible set is the closed interval between
    the roots of B k^2 - k + A = 0; it shrinks to a point at the kinematic
    bound and is empty above it.  The relativistic quadratic has a second
    (spurious) band at high frequency where the final energy would fall below
    m c^2; it is excluded by the exact bound l hbar w <= E_q - m c^2.
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    v = particle.v
    lh = particle.hbar_eff

    if mechanics == "classical" or lh == 0.0:
        return (omega / v, math.inf)

    if mechanics == "nonrel_quantum":
        a_coef = omega / v
        b_coef = lh / (2.0 * particle.mass * v)
    elif mechanics == "rel_quantum":
        if lh * omega > particle.energy - particle.mass * const.c**2:
            return None
        b = _recoil_parameter(particle, omega)
        a_coef = (1.0 - b) * omega / v
        b_coef = b * const.c**2 / (omega * v)
    else:
        raise DomainError(f"unknown mechanics {mechanics!r}")

    disc = 1.0 - 4.0 * a_coef * b_coef
    if disc < 0.0:
        return None
    root = math.sqrt(disc)
    k_lo = (1.0 - root) / (2.0 * b_coef)
    k_hi = (1.0 + root) / (2.0 * b_coef)
    return (k_lo, k_hi)


def cutoff_frequency(mechanics: str, particle: Particle, n: float) -> float:
    """Recoil cutoff for on-shell emission in a transparent medium of index n.

    Above the cutoff the radiated spectral density is exactly zero:

        nonrel   w_c = 2 m c^2 (n beta - 1) / (l hbar n^2)
        rel      w_c = 2 m c^2 (n beta - 1) / (l hbar (n^2 - 1) sqrt(1 - beta^2))

    Requires the Cherenkov condition n beta > 1; the classical limit
    (hbar_scale = 0) has no cutoff and returns +inf.
    """
    if mechanics not in ("nonrel_quantum", "rel_quantum"):
        raise DomainError("cutoff_frequency is defined for the quantum regimes only")
    nb = n * particle.beta
    if nb <= 1.0:
        raise NoRadiationError(f"no Cherenkov radiation: n*beta = {nb:.6g} <= 1")
    lh = particle.hbar_eff
    if lh == 0.0:
        return math.inf
    mc2 = particle.mass * const.c**2
    if mechanics == "nonrel_quantum":
        return 2.0 * mc2 * (nb - 1.0) / (lh * n * n)
    return 2.0 * mc2 * (nb - 1.0) / (lh * (n * n - 1.0) * math.sqrt(1.0 - particle.beta**2))


def on_shell_allowed(mechanics: str, particle: Particle, omega: float, n: float) -> bool:
    """Whether the on-shell wave number k = n w / c lies in the admissible range."""
    rng = admissible_k_range(mechanics, particle, omega)
    if rng is None:
        return False
    k = n * omega / const.c
    return rng[0] <= k <= rng[1]


def transparent_weights(medium, branchset: BranchSet):
    """Delta-function weights replacing the kernel in the transparent limit.

    Each real branch frequency Om_j carries the weight

        pi mu(Om_j) v_g^j / (2 Om_j n(Om_j) c)    per delta(w - Om_j);

    after trading the k-integral for a frequency integral the v_g factor
    cancels against dk/dOm, leaving the Frank-Tamm measure (times mu).
    Returns a list of (Om_j, weight_j) pairs.
    """
    weights = []
    omegas = []
    for b in branchset.branches:
        w = b.omega
        if abs(w.imag) > 1e-6 * abs(w):
            raise DomainError(
                f"transparent_weights needs real branch frequencies (gamma -> 0 limit); got {w}"
            )
        om = w.real
        if om <= 0.0:
            continue
        n = medium.refractive_index(om)
        mu = medium.mu(om)
        weight = math.pi * complex(mu).real * complex(b.v_g).real / (2.0 * om * complex(n).real * const.c)
        omegas.append(om)
        weights.append((om, weight))

    for i in range(len(omegas)):
        for j in range(i + 1, len(omegas)):
            if abs(omegas[i] - omegas[j]) < 1e-9 * max(abs(omegas[i]), abs(omegas[j])):
                warnings.warn(
                    f"degenerate transparent branches at omega ~ {omegas[i]:.6g}; "
                    "delta weights may double-count",
                    DegenerateBranchWarning,
                    stacklevel=2,
                )
    return weights


def _recoil_final_state(particle: Particle, omega: float, k: float, cos_theta: float):
    """(v2, v1_dot_v2) of the particle after emitting (omega, k) at cos_theta."""
    lh = particle.hbar_eff
    e1 = particle.energy
    e2 = e1 - lh * omega
    mc2 = particle.mass * const.c**2
    if e2 < mc2 * (1.0 - 1e-12):
        raise DomainError(
            f"photon energy {lh * omega:.6g} J exceeds the particle's kinetic energy; no final state"
        )
    e2 = max(e2, mc2)
    # initial momentum (times c): p1c = sqrt(E1^2 - (mc^2)^2) = E1 v1 / c
    p1c = e1 * particle.beta
    khc = lh * k * const.c
    p2c_sq = max(p1c**2 - 2.0 * p1c * khc * cos_theta + khc**2, 0.0)
    v2 = const.c * math.sqrt(p2c_sq) / e2
    # v1 . v2 = (c^2 / (E1 E2)) * p1c . p2c  with p2c = p1c - khc along the angle
    v1_dot_v2 = const.c**2 * (p1c**2 - p1c * khc * cos_theta) / (e1 * e2)
    return v2, v1_dot_v2


def spin_sum_factor(
    particle: Particle,
    omega: float,
    k: float,
    cos_theta: float,
    include_recoil_term: bool = False,
) -> float:
    """Polarization- and spin-summed matrix-element factor S.

    S = (v1^2/c^2)(1 - cos^2 th)
        + 1/2 { 1 - sqrt((1 - v1^2/c^2)(1 - v2^2/c^2)) - v1.v2/c^2 }

    The braces term vanishes identically at zero recoil (v2 = v1) and stays
    below a percent of the leading term for soft photons; it is neglected by
    default, matching the radiated-power formulas, and retained with
    ``include_recoil_term=True``.
    """
    v1 = particle.v
    leading = (v1**2 / const.c**2) * (1.0 - cos_theta**2)
    if not include_recoil_term:
        return leading
    v2, v1v2 = _recoil_final_state(particle, omega, k, cos_theta)
    g1 = 1.0 - v1**2 / const.c**2
    g2 = max(1.0 - v2**2 / const.c**2, 0.0)
    braces = 1.0 - math.sqrt(g1 * g2) - v1v2 / const.c**2
    return leading + 0.5 * braces


def spin_sum_braces(particle: Particle, omega: float, k: float, cos_theta: float,
                    v2_override: float | None = None) -> float:
    """The recoil braces term alone; ``v2_override`` forces the zero-recoil check."""
    v1 = particle.v
    if v2_override is not None:
        v2, v1v2 = v2_override, v1 * v2_override
    else:
        v2, v1v2 = _recoil_final_state(particle, omega, k, cos_theta)
    g1 = 1.0 - v1**2 / const.c**2
    g2 = max(1.0 - v2**2 / const.c**2, 0.0)
    return 1.0 - math.sqrt(g1 * g2) - v1v2 / const.c**2

"""Temperature-dependent statistical factors.

Everything is evaluated through expm1/exp(-x) forms so that arguments
spanning ten orders of magnitude in hbar*w/k_B*T stay accurate: the thermal
weights multiply spectra whose dynamic range is already large.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import constants as const
from .errors import DomainError, EnergyBranchWarning

__all__ = [
    "ThermalState",
    "bose_occupation",
    "fermi_occupation",
    "matsubara_frequencies",
    "coth_weight",
    "f_t_factor",
]

TAIL_POLICIES = ("none", "integral_tail")


@dataclass(frozen=True)
class ThermalState:
    """Temperature plus the Matsubara truncation used by the power module.

    The frequency grid is xi_l = 2 pi k_B T l / hbar, l = 0 .. L-1, with the
    l = 0 term half-weighted by every consumer; ``tail_policy`` selects how
    l >= L is estimated.
    """

    temperature: float
    matsubara_count: int = 10_000
    tail_policy: str = "integral_tail"

    def __post_init__(self):
        if self.temperature < 0.0:
            raise DomainError(f"temperature must be >= 0, got {self.temperature}")
        if self.matsubara_count < 1:
            raise DomainError(f"matsubara_count must be >= 1, got {self.matsubara_count}")
        if self.tail_policy not in TAIL_POLICIES:
            raise DomainError(f"tail_policy must be one of {TAIL_POLICIES}, got {self.tail_policy!r}")


def bose_occupation(omega: float, temperature: float) -> float:
    """Photon occupation 1/(e^{hw/kT} - 1); 0 at T = 0."""
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if temperature == 0.0:
        return 0.0
    x = const.hbar * omega / (const.k_B * temperature)
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def fermi_occupation(energy: float, temperature: float) -> float:
    """Electron occupation 1/(e^{E/kT} + 1) for relativistic energy E >= 0."""
    if energy < 0.0:
        raise DomainError(f"energy must be >= 0, got {energy}")
    if temperature == 0.0:
        return 0.5 if energy == 0.0 else 0.0
    x = energy / (const.k_B * temperature)
    ex = math.exp(-x)
    return ex / (1.0 + ex)


def matsubara_frequencies(state: ThermalState) -> np.ndarray:
    """xi_l = 2 pi k_B T l / hbar for l = 0 .. L-1 (xi_0 = 0 is half-weighted)."""
    spacing = const.TWO_PI * const.k_B * state.temperature / const.hbar
    return spacing * np.arange(state.matsubara_count, dtype=float)


def coth_weight(omega: float, temperature: float) -> float:
    """coth(hw/2kT) = 1 + 2/(e^{hw/kT} - 1); the classical thermal enhancement.

    Built from ``bose_occupation`` so the decomposition
    coth - 1 - 2N = 0 holds exactly, not just to rounding.
    """
    return 1.0 + 2.0 * bose_occupation(omega, temperature)


def f_t_factor(omega: float, temperature: float, particle_energy: float) -> float:
    """Quantum thermal weight F_T = (N+1)(1 - n_F) - N n_F in closed form.

    N is the photon occupation at omega and n_F the electron blocking at the
    final energy |E_q - hw|.  Evaluated as

        F_T = (1 - e^{-(x+y)}) / ((1 - e^{-x}) (1 + e^{-y}))

    with x = hw/kT and y = |E_q - hw|/kT, which is exact and overflow-free.
    Tends to 1 at T = 0 and to E_q/(2 hw) when k_B T >> E_q.
    """
    if omega <= 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if particle_energy <= 0.0:
        raise DomainError(f"particle_energy must be > 0, got {particle_energy}")
    hw = const.hbar * omega
    if hw > particle_energy:
        warnings.warn(
            "photon energy exceeds the particle energy; |E_q - hw| branch flipped",
            EnergyBranchWarning,
            stacklevel=2,
        )
    if temperature == 0.0:
        return 1.0
    kt = const.k_B * temperature
    x = hw / kt
    y = abs(particle_energy - hw) / kt
    num = -math.expm1(-(x + y))
    den = (-math.expm1(-x)) * (1.0 + math.exp(-y))
    return num / den

"""Complex-frequency dispersion branches and their consistency identities.

For a wave number k the branch frequencies Om_j(k) are the roots of

    D(w, k) = w^2 eps(w) - k^2 c^2 kappa(w) = 0

in the lower half plane.  Clearing denominators of the Lorentz responses
turns D into a polynomial of degree 6 (4 nonmagnetic, 2 in vacuum or for a
fixed response); the roots come in {Om, -Om*} pairs and the representatives
with Re Om >= 0 define the physical branch set.

Root finding is companion-matrix eigenvalues of the cleared polynomial
followed by complex Newton polish on the uncleared D, which restores
residuals to machine level and filters any spurious factor roots.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import constants as const
from .errors import OverdampedRootWarning, PolishDivergenceError, RootCountError
from .medium import FixedResponseMedium, LorentzMedium
from .quadrature import QuadResult, integrate_bracketed, integrate_to_infinity

__all__ = [
    "DispersionBranch",
    "BranchSet",
    "dispersion_poly",
    "solve_branches",
    "sum_rules",
    "bromwich_coefficients",
    "kernel_sum_rule_integral",
]

_RESIDUAL_TOL = 1e-10
_IMAG_AXIS_TOL = 1e-9


@dataclass(frozen=True)
class DispersionBranch:
    """One branch representative Om_j(k) with its velocities.

    ``half_weight`` marks a purely imaginary (overdamped) root: it is its own
    mirror under Om -> -Om*, so it enters mode sums with weight 1/2.
    """

    k: float
    omega: complex
    v_g: complex
    v_p: complex
    damping_time: float
    kappa: complex
    half_weight: bool = False

    @property
    def weight(self) -> float:
        return 0.5 if self.half_weight else 1.0


@dataclass(frozen=True)
class BranchSet:
    k: float
    branches: tuple[DispersionBranch, ...]
    polynomial_degree: int


def _quadratic(a2: float, a1c: complex, a0: float) -> np.ndarray:
    """Coefficients (descending) of a2*w^2 + a1c*w + a0."""
    return np.array([a2, a1c, a0], dtype=complex)


def dispersion_poly(medium, k: float) -> np.ndarray:
    """Descending complex coefficients of the denominator-cleared dispersion polynomial.

    For the full Lorentz medium this is

        w^2 (D_e + omega_pe^2) N_m - k^2 c^2 D_m D_e

    with D_e = omega_0e^2 - w^2 - i gamma_e w, D_m its magnetic analogue and
    N_m = D_m + omega_pm^2.  Trivial factors are dropped when a response is
    inactive, so the degree is 6, 4 or 2.
    """
    if not k > 0.0:
        raise ValueError(f"wave number must be > 0, got {k}")
    kc2 = (k * const.c) ** 2

    if isinstance(medium, FixedResponseMedium):
        eps = medium.eps_value
        kap = 1.0 / medium.mu_value
        return np.array([eps, 0.0, -kc2 * kap], dtype=complex)

    d_e = _quadratic(-1.0, -1j * medium.gamma_e, medium.omega_0e**2)
    n_e = d_e.copy()
    n_e[2] += medium.omega_pe**2
    d_m = _quadratic(-1.0, -1j * medium.gamma_m, medium.omega_0m**2)
    n_m = d_m.copy()
    n_m[2] += medium.omega_pm**2

    w2 = np.array([1.0, 0.0, 0.0], dtype=complex)

    electric_on = medium.omega_pe > 0.0
    magnetic_on = medium.omega_pm > 0.0
    if not electric_on and not magnetic_on:
        return np.array([1.0, 0.0, -kc2], dtype=complex)
    if electric_on and not magnetic_on:
        return np.polysub(np.polymul(w2, n_e), kc2 * d_e)
    if magnetic_on and not electric_on:
        return np.polysub(np.polymul(w2, n_m), kc2 * d_m)
    return np.polysub(np.polymul(np.polymul(w2, n_e), n_m), kc2 * np.polymul(d_m, d_e))


def _dispersion_value(medium, w: complex, k: float) -> complex:
    kc2 = (k * const.c) ** 2
    return w * w * medium.eps(w) - kc2 * medium.kappa(w)


def _dispersion_derivative(medium, w: complex, k: float) -> complex:
    kc2 = (k * const.c) ** 2
    return 2.0 * w * medium.eps(w) + w * w * medium.eps_prime(w) - kc2 * medium.kappa_prime(w)


def _newton_polish(medium, w0: complex, k: float, max_iter: int = 50) -> complex:
    """Polish a root of the uncleared D(w, k) by complex Newton iteration.

    Returns the lowest-residual iterate; explicit blow-up raises.  Spurious
    roots of the cleared polynomial (poles of the responses) do not converge
    and are left for the caller's residual filter.
    """
    w = w0
    scale = abs(w0) + k * const.c
    best = w0
    best_res = abs(_dispersion_value(medium, w0, k))
    for _ in range(max_iter):
        deriv = _dispersion_derivative(medium, w, k)
        if deriv == 0:
            break
        w = w - _dispersion_value(medium, w, k) / deriv
        if not cmath.isfinite(w) or abs(w) > 1e6 * scale:
            raise PolishDivergenceError(f"Newton polish diverged from root guess {w0} at k={k}")
        res = abs(_dispersion_value(medium, w, k))
        if res < best_res:
            best, best_res = w, res
        elif res > 4.0 * best_res:
            break
    return best


def solve_branches(medium, k: float) -> BranchSet:
    """Solve the dispersion relation at wave number k and build the branch set.

    Companion-matrix roots of the cleared polynomial are Newton-polished on
    the uncleared D; roots failing the |D| < 1e-10 k^2 c^2 residual filter
    (spurious factor roots) are dropped.  Purely imaginary roots are kept as
    half-weight representatives and flagged.
    """
    coeffs = dispersion_poly(medium, k)
    degree = len(coeffs) - 1
    raw = np.roots(coeffs)
    kc2 = (k * const.c) ** 2

    polished = []
    for r in raw:
        w = _newton_polish(medium, complex(r), k)
        # residual scale: the larger of the two competing terms of D, floored
        # at k^2 c^2; spurious factor roots sit at response poles where D is
        # huge on this scale, genuine roots at machine level
        scale = max(kc2, abs(w * w * medium.eps(w)), kc2 * abs(medium.kappa(w)))
        if abs(_dispersion_value(medium, w, k)) < _RESIDUAL_TOL * scale:
            polished.append(w)

    # classify representatives: Re > 0 kept, purely imaginary kept unpaired
    reps: list[complex] = []
    unpaired: list[complex] = []
    n_negative = 0
    for w in polished:
        if abs(w.real) <= _IMAG_AXIS_TOL * abs(w):
            unpaired.append(w)
        elif w.real > 0.0:
            reps.append(w)
        else:
            n_negative += 1

    if len(reps) != n_negative or 2 * len(reps) + len(unpaired) != len(polished):
        raise RootCountError(
            f"root pairing failed at k={k}: {len(polished)} polished roots, "
            f"{len(reps)} right-half, {n_negative} left-half, {len(unpaired)} imaginary"
        )
    expected = degree // 2
    if len(reps) + len(unpaired) != expected:
        raise RootCountError(
            f"expected {expected} branch representatives at k={k}, got {len(reps) + len(unpaired)}"
        )
    if unpaired:
        warnings.warn(
            f"{len(unpaired)} purely imaginary (overdamped) root(s) at k={k}; "
            "included with half weight in mode sums",
            OverdampedRootWarning,
            stacklevel=2,
        )

    # deduplicate imaginary roots that are mirror copies of each other
    branches = []
    for w, half in [(w, False) for w in reps] + [(w, True) for w in unpaired]:
        v_p = w / k
        v_g = 2.0 * k * const.c**2 * medium.kappa(w) / _dispersion_derivative(medium, w, k)
        im = abs(w.imag)
        tau = math.inf if im <= 1e-14 * abs(w) else 1.0 / im
        branches.append(
            DispersionBranch(
                k=k,
                omega=w,
                v_g=complex(v_g),
                v_p=complex(v_p),
                damping_time=tau,
                kappa=complex(medium.kappa(w)),
                half_weight=half,
            )
        )
    branches.sort(key=lambda b: b.omega.real)
    return BranchSet(k=k, branches=tuple(branches), polynomial_degree=degree)


def sum_rules(branchset: BranchSet) -> tuple[float, float, float]:
    """Residuals of the three velocity sum rules.

    S1 = |sum_j Re(v_g/v_p) - 1|, S2 = |sum_j Im(v_g/(c kappa(Om_j)))| and
    S3 = |sum_j Re(v_g v_p)/c^2 - 1|; each should vanish for every k.
    They encode the initial conditions of the field evolution and the
    equal-time commutator, so they double as a root-set completeness check.
    """
    s1 = 0.0
    s2 = 0.0
    s3 = 0.0
    for b in branchset.branches:
        w = b.weight
        s1 += w * (b.v_g / b.v_p).real
        s2 += w * (b.v_g / (const.c * b.kappa)).imag
        s3 += w * (b.v_g * b.v_p).real / const.c**2
    return abs(s1 - 1.0), abs(s2), abs(s3 - 1.0)


def bromwich_coefficients(branchset: BranchSet, t: float) -> tuple[float, float, complex]:
    """Time-domain mode coefficients (xi, zeta, eta) at time t >= 0.

    xi multiplies the initial field, zeta its initial velocity:

        xi(t)   =        sum_j Re(e^{-i Om_j t} v_g/v_p)
        zeta(t) = -(1/kc) sum_j Im(e^{-i Om_j t} v_g/(c kappa(Om_j)))
        eta(t)  = xi(t) - i k c zeta(t)

    All decay at the slowest branch damping rate; at t = 0 the sum rules give
    xi = 1, zeta = 0, eta = 1.  In vacuum xi = cos(ckt), zeta = sin(ckt)/(kc)
    and eta = e^{-ickt}.
    """
    if t < 0.0:
        raise ValueError(f"time must be >= 0, got {t}")
    kc = branchset.k * const.c
    xi = 0.0
    zeta = 0.0
    for b in branchset.branches:
        phase = cmath.exp(-1j * b.omega * t)
        xi += b.weight * (phase * b.v_g / b.v_p).real
        zeta -= b.weight * (phase * b.v_g / (const.c * b.kappa)).imag / kc
    eta = complex(xi, -kc * zeta)
    return xi, zeta, eta


def kernel_sum_rule_integral(medium, k: float, tol: float = 1e-9) -> QuadResult:
    """Frequency integral of the radiation kernel against omega at fixed k.

    Computes int_0^inf dw (w^3 Im eps - k^2 c^2 w Im kappa)/|k^2 c^2 kappa - w^2 eps|^2,
    which equals pi/2 for any causal medium; this cross-checks the kernel
    against the branch representation (it is the integral form of the third
    velocity sum rule).
    """
    kc2 = (k * const.c) ** 2

    def integrand(w: float) -> float:
        eps = medium.eps(w)
        kap = medium.kappa(w)
        den = -w * w * eps + kc2 * kap
        num = w**3 * eps.imag - kc2 * w * kap.imag
        return num / (den.real**2 + den.imag**2)

    # peaks sit at the real parts of the branch frequencies
    bset = solve_branches(medium, k)
    peaks = sorted({b.omega.real for b in bset.branches if b.omega.real > 0.0})
    w_hi = 4.0 * max([abs(b.omega) for b in bset.branches] + [k * const.c])
    body = integrate_bracketed(integrand, peaks, 0.0, w_hi, tol=tol)
    tail = integrate_to_infinity(integrand, w_hi, tol=tol, scale=w_hi)
    return body + tail

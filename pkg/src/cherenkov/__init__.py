"""Cherenkov radiation observables in lossy dispersive magnetodielectric media.

Response models and coupling densities (``medium``), complex dispersion
branches with velocity sum rules (``dispersion``), emission kinematics and
the radiation kernel (``kernels``), thermal factors (``thermal``), the
regime-specific power spectra (``power``) and a scenario-driven CLI
(``cli``), all on top of an in-house adaptive quadrature core
(``quadrature``).
"""

from .constants import c, eps0, hbar, k_B, m_e, mu0
from .dispersion import (
    BranchSet,
    DispersionBranch,
    bromwich_coefficients,
    dispersion_poly,
    kernel_sum_rule_integral,
    solve_branches,
    sum_rules,
)
from .kernels import (
    Particle,
    RegimeSpec,
    admissible_k_range,
    cutoff_frequency,
    emission_angle,
    on_shell_allowed,
    spectral_kernel,
    spin_sum_factor,
    transparent_weights,
)
from .medium import (
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
from .power import (
    IntegrationDomain,
    MatsubaraResult,
    Spectrum,
    frank_tamm_density,
    power_classical_lossy,
    power_classical_matsubara,
    power_classical_transparent,
    power_quantum,
    power_quantum_transparent,
)
from .quadrature import QuadResult, integrate_adaptive, integrate_bracketed, integrate_pv
from .thermal import (
    ThermalState,
    bose_occupation,
    coth_weight,
    f_t_factor,
    fermi_occupation,
    matsubara_frequencies,
)

__version__ = "0.1.0"

"""Exception and warning types shared across the package."""


class CherenkovError(Exception):
    """Base class for all package errors."""


class DomainError(CherenkovError, ValueError):
    """An argument is outside the physically admissible domain of an operation."""


class DegenerateModelError(CherenkovError, ValueError):
    """Response model hits a degenerate point (e.g. a kappa pole where |mu| ~ 0)."""


class ConvergenceError(CherenkovError, RuntimeError):
    """A quadrature or series failed to reach the requested tolerance."""


class RootCountError(CherenkovError, RuntimeError):
    """Dispersion root pairing produced an unexpected branch count."""


class PolishDivergenceError(CherenkovError, RuntimeError):
    """Newton polish of a dispersion root failed to converge."""


class NoRadiationError(CherenkovError, ValueError):
    """Cherenkov threshold n*beta > 1 not met; no radiation, no cutoff."""


class ConfigError(CherenkovError, ValueError):
    """Scenario configuration is malformed or fails validation."""


class CherenkovWarning(UserWarning):
    """Base class for package warnings."""


class OverdampedRootWarning(CherenkovWarning):
    """A purely imaginary (overdamped, unpaired) dispersion root was half-weighted."""


class DegenerateBranchWarning(CherenkovWarning):
    """Two transparent branch frequencies coincide; delta weights may double-count."""


class CapWarning(CherenkovWarning):
    """An integration cap binds before the integrand has decayed; total is cap-dependent."""


class BreakpointWarning(CherenkovWarning):
    """A quadrature breakpoint outside the integration interval was ignored."""


class EnergyBranchWarning(CherenkovWarning):
    """The |E_q - h*omega| absolute-value branch flipped (photon above particle energy)."""

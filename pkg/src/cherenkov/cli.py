"""Scenario runner: flat-key config in, CSV artifacts plus a JSON manifest out.

Config format is intentionally dull: one ``dotted.key = value [unit]`` per
line, ``#`` comments, no nesting.  Every physical quantity carries an
explicit unit suffix and is converted to SI on parse; unknown keys are hard
errors so typos cannot be silently absorbed.  A ``sweep.<key>`` line expands
into one independently manifested run per value.

Artifacts are written to a temporary directory and promoted atomically on
success, so partially written files are never visible at the final paths.
CSV payloads use 17 significant digits and are byte-identical across runs of
the same config.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import math
import os
import shutil
import sys
import tempfile
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from . import constants as const
from .dispersion import solve_branches, sum_rules
from .errors import CherenkovError, ConfigError
from .kernels import MECHANICS, MEDIUM_MODES, Particle, RegimeSpec, cutoff_frequency, spectral_kernel
from .medium import FixedResponseMedium, LorentzMedium
from .power import (
    IntegrationDomain,
    Spectrum,
    power_classical_lossy,
    power_classical_transparent,
    power_quantum,
    power_quantum_transparent,
)
from .thermal import TAIL_POLICIES, ThermalState, bose_occupation, coth_weight, f_t_factor

ARTIFACTS = ("spectrum", "branches", "sumrules", "kernelmap", "response", "thermalfactors")

# unit tables per dimension; values are multipliers to SI
_UNITS = {
    "frequency": {"rad_s": 1.0, "ev": const.e_charge / const.hbar},
    "wavenumber": {"rad_m": 1.0},
    "temperature": {"K": 1.0},
    "charge": {"C": 1.0, "e": const.e_charge},
    "mass": {"kg": 1.0, "m_e": const.m_e},
}

# key -> (kind, default); kind is a dimension name, "number", "int", "word:<choices>"
# or "words".  Required keys have default REQUIRED.
_REQUIRED = object()
_KEYS: dict[str, tuple[str, object]] = {
    "medium.model": ("word:lorentz,fixed", "lorentz"),
    "medium.omega_pe": ("frequency", 0.0),
    "medium.omega_0e": ("frequency", 0.0),
    "medium.gamma_e": ("frequency", 0.0),
    "medium.omega_pm": ("frequency", 0.0),
    "medium.omega_0m": ("frequency", 0.0),
    "medium.gamma_m": ("frequency", 0.0),
    "medium.eps": ("number", 1.0),
    "medium.mu": ("number", 1.0),
    "particle.charge": ("charge", const.e_charge),
    "particle.mass": ("mass", const.m_e),
    "particle.beta": ("number", _REQUIRED),
    "particle.hbar_scale": ("number", 1.0),
    "regime.mechanics": ("word:" + ",".join(MECHANICS), "classical"),
    "regime.temperature": ("temperature", 0.0),
    "regime.medium_mode": ("word:" + ",".join(MEDIUM_MODES), None),
    "domain.omega_max": ("frequency", None),
    "domain.k_max": ("wavenumber", None),
    "domain.relative_tolerance": ("number", 1e-6),
    "domain.bracket_refinement": ("int", 3),
    "grid.omega_min": ("frequency", None),
    "grid.omega_max": ("frequency", None),
    "grid.omega_points": ("int", 200),
    "grid.spacing": ("word:linear,log", "linear"),
    "grid.k_min": ("wavenumber", None),
    "grid.k_max": ("wavenumber", None),
    "grid.k_points": ("int", 50),
    "thermal.matsubara_count": ("int", 10_000),
    "thermal.tail_policy": ("word:" + ",".join(TAIL_POLICIES), "integral_tail"),
    "outputs": ("words", ()),
}


@dataclass(frozen=True)
class Scenario:
    """A fully validated run description with all defaults resolved."""

    medium: object
    particle: Particle
    regime: RegimeSpec
    domain: IntegrationDomain
    thermal_state: ThermalState
    omega_grid: np.ndarray
    k_grid: np.ndarray
    outputs: tuple
    label: str
    resolved: dict


# -- parsing -------------------------------------------------------------------


def _parse_value(key: str, raw: str, line_no: int):
    kind, _ = _KEYS[key]
    tokens = raw.replace(",", " ").split()
    where = f"line {line_no}: {key}"

    if kind == "words":
        for t in tokens:
            if t not in ARTIFACTS:
                raise ConfigError(f"{where}: unknown artifact {t!r}; expected subset of {ARTIFACTS}")
        return tuple(tokens)

    if kind.startswith("word:"):
        choices = kind.split(":", 1)[1].split(",")
        if len(tokens) != 1 or tokens[0] not in choices:
            raise ConfigError(f"{where}: expected one of {choices}, got {raw!r}")
        return tokens[0]

    if kind == "int":
        if len(tokens) != 1:
            raise ConfigError(f"{where}: expected a bare integer, got {raw!r}")
        try:
            return int(tokens[0])
        except ValueError as exc:
            raise ConfigError(f"{where}: not an integer: {tokens[0]!r}") from exc

    if kind == "number":
        if len(tokens) != 1:
            raise ConfigError(f"{where}: expected a bare dimensionless number, got {raw!r}")
        try:
            return float(tokens[0])
        except ValueError as exc:
            raise ConfigError(f"{where}: not a number: {tokens[0]!r}") from exc

    # dimensioned quantity: number followed by a unit from the right table
    units = _UNITS[kind]
    if len(tokens) != 2:
        raise ConfigError(
            f"{where}: expected '<number> <unit>' with a {kind} unit {sorted(units)}, got {raw!r}"
        )
    try:
        value = float(tokens[0])
    except ValueError as exc:
        raise ConfigError(f"{where}: not a number: {tokens[0]!r}") from exc
    if tokens[1] not in units:
        raise ConfigError(f"{where}: unit {tokens[1]!r} is not a {kind} unit; expected {sorted(units)}")
    return value * units[tokens[1]]


def _tokenize(config_text: str):
    """Yield (line_no, key, raw_value) for every assignment in the config."""
    for i, line in enumerate(config_text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {i}: expected 'key = value', got {line.rstrip()!r}")
        key, raw = (s.strip() for s in body.split("=", 1))
        if not key or not raw:
            raise ConfigError(f"line {i}: empty key or value")
        yield i, key, raw


def _parse_flat(config_text: str):
    """Config text -> (values dict, sweep dict {key: [values]})."""
    values: dict[str, object] = {}
    lines: dict[str, int] = {}
    sweeps: dict[str, list] = {}
    for line_no, key, raw in _tokenize(config_text):
        if key.startswith("sweep."):
            base = key[len("sweep."):]
            if base not in _KEYS:
                raise ConfigError(f"line {line_no}: unknown sweep key {base!r}")
            kind, _ = _KEYS[base]
            if kind in ("words",):
                raise ConfigError(f"line {line_no}: cannot sweep {base!r}")
            items = [s.strip() for s in raw.split(",") if s.strip()]
            if not items:
                raise ConfigError(f"line {line_no}: empty sweep for {base!r}")
            sweeps[base] = [_parse_value(base, item, line_no) for item in items]
            continue
        if key not in _KEYS:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {line_no}: duplicate key {key!r} (first on line {lines[key]})")
        values[key] = _parse_value(key, raw, line_no)
        lines[key] = line_no
    return values, sweeps


def _get(values: dict, key: str):
    v = values.get(key, _KEYS[key][1])
    if v is _REQUIRED:
        raise ConfigError(f"{key}: required key missing")
    return v


def _build_scenario(values: dict, label: str = "run") -> Scenario:
    model = _get(values, "medium.model")
    if model == "fixed":
        medium = FixedResponseMedium(_get(values, "medium.eps"), _get(values, "medium.mu"))
    else:
        try:
            medium = LorentzMedium(
                omega_pe=_get(values, "medium.omega_pe"),
                omega_0e=_get(values, "medium.omega_0e"),
                gamma_e=_get(values, "medium.gamma_e"),
                omega_pm=_get(values, "medium.omega_pm"),
                omega_0m=_get(values, "medium.omega_0m"),
                gamma_m=_get(values, "medium.gamma_m"),
            )
        except CherenkovError as exc:
            raise ConfigError(f"medium: {exc}") from exc

    beta = _get(values, "particle.beta")
    if not 0.0 < beta < 1.0:
        raise ConfigError(f"particle.beta: must be in (0, 1), got {beta}")
    hbar_scale = _get(values, "particle.hbar_scale")
    if not 0.0 <= hbar_scale <= 1.0:
        raise ConfigError(f"particle.hbar_scale: must be in [0, 1], got {hbar_scale}")
    mass = _get(values, "particle.mass")
    if mass <= 0.0:
        raise ConfigError(f"particle.mass: must be > 0, got {mass}")
    particle = Particle(charge=_get(values, "particle.charge"), mass=mass,
                        beta=beta, hbar_scale=hbar_scale)

    mechanics = _get(values, "regime.mechanics")
    temperature = _get(values, "regime.temperature")
    if temperature < 0.0:
        raise ConfigError(f"regime.temperature: must be >= 0, got {temperature}")
    mode = _get(values, "regime.medium_mode")
    if mode is None:
        mode = "lossy" if medium.is_lossy else "transparent"
    if mode == "transparent" and medium.is_lossy:
        raise ConfigError("regime.medium_mode: transparent mode requires gamma_e = gamma_m = 0")
    if mode == "lossy" and not medium.is_lossy:
        raise ConfigError("regime.medium_mode: lossy mode requires an absorbing medium "
                          "(gamma_e > 0 or gamma_m > 0)")
    regime = RegimeSpec(mechanics=mechanics, temperature=temperature, medium_mode=mode)

    outputs = _get(values, "outputs")
    scale = medium.frequency_scale() if medium.frequency_scale() > 1.0 else 1e15

    omega_max = _get(values, "domain.omega_max")
    k_max = _get(values, "domain.k_max")
    needs_caps = "spectrum" in outputs and mode == "lossy"
    if omega_max is None or k_max is None:
        if mechanics in ("nonrel_quantum", "rel_quantum") and hbar_scale > 0.0:
            # caps follow from the recoil cutoff at the static index
            n0 = complex(medium.refractive_index(scale * 1e-9)).real
            if n0 * beta > 1.0:
                wc = cutoff_frequency(mechanics, particle, n0)
                if omega_max is None and math.isfinite(wc):
                    omega_max = 1.05 * wc
                if k_max is None:
                    spread = math.sqrt(1.0 - beta**2) if mechanics == "rel_quantum" else 1.0
                    k_max = 1.05 * 2.0 * mass * particle.v / (particle.hbar_eff * spread)
            elif needs_caps:
                raise ConfigError(
                    "domain.omega_max: cannot auto-set caps, static index gives n*beta <= 1; "
                    "supply explicit caps"
                )
        elif needs_caps:
            raise ConfigError(
                "domain.omega_max/domain.k_max: classical lossy spectra need explicit caps "
                "(the uncapped integrals diverge); refusing to invent them"
            )
    if omega_max is None:
        omega_max = 10.0 * scale
    if k_max is None:
        k_max = 10.0 * scale / const.c
    try:
        domain = IntegrationDomain(
            omega_max=omega_max,
            k_max=k_max,
            relative_tolerance=_get(values, "domain.relative_tolerance"),
            bracket_refinement=_get(values, "domain.bracket_refinement"),
        )
    except CherenkovError as exc:
        raise ConfigError(f"domain: {exc}") from exc

    thermal_state = ThermalState(
        temperature=temperature,
        matsubara_count=_get(values, "thermal.matsubara_count"),
        tail_policy=_get(values, "thermal.tail_policy"),
    )

    w_hi = _get(values, "grid.omega_max") or domain.omega_max
    w_lo = _get(values, "grid.omega_min") or w_hi / _get(values, "grid.omega_points")
    n_w = _get(values, "grid.omega_points")
    if not 0.0 < w_lo < w_hi:
        raise ConfigError(f"grid.omega_min: need 0 < omega_min < omega_max, got {w_lo} vs {w_hi}")
    if n_w < 2:
        raise ConfigError(f"grid.omega_points: must be >= 2, got {n_w}")
    if _get(values, "grid.spacing") == "log":
        omega_grid = np.geomspace(w_lo, w_hi, n_w)
    else:
        omega_grid = np.linspace(w_lo, w_hi, n_w)

    k_hi = _get(values, "grid.k_max") or 10.0 * scale / const.c
    k_lo = _get(values, "grid.k_min") or 0.1 * scale / const.c
    n_k = _get(values, "grid.k_points")
    if not 0.0 < k_lo < k_hi:
        raise ConfigError(f"grid.k_min: need 0 < k_min < k_max, got {k_lo} vs {k_hi}")
    if n_k < 2:
        raise ConfigError(f"grid.k_points: must be >= 2, got {n_k}")
    k_grid = np.geomspace(k_lo, k_hi, n_k)

    if "thermalfactors" in outputs and temperature > 0.0 and hbar_scale == 0.0:
        raise ConfigError("particle.hbar_scale: thermal factors diverge at hbar_scale = 0 with T > 0")

    resolved = {k: repr(values.get(k, _KEYS[k][1])) for k in _KEYS if _KEYS[k][1] is not _REQUIRED or k in values}
    resolved["domain.omega_max"] = repr(domain.omega_max)
    resolved["domain.k_max"] = repr(domain.k_max)
    return Scenario(
        medium=medium,
        particle=particle,
        regime=regime,
        domain=domain,
        thermal_state=thermal_state,
        omega_grid=omega_grid,
        k_grid=k_grid,
        outputs=outputs,
        label=label,
        resolved=resolved,
    )


def parse_scenario(config_text: str) -> Scenario:
    """Parse and fully validate a single-run config (sweep keys not allowed here)."""
    values, sweeps = _parse_flat(config_text)
    if sweeps:
        raise ConfigError("config contains sweep keys; use expand_sweeps/run for batch runs")
    return _build_scenario(values)


def expand_sweeps(config_text: str) -> list[Scenario]:
    """Expand sweep keys into the Cartesian product of scenarios."""
    values, sweeps = _parse_flat(config_text)
    if not sweeps:
        return [_build_scenario(values)]
    keys = sorted(sweeps)
    scenarios = []
    for i, combo in enumerate(itertools.product(*(sweeps[k] for k in keys))):
        v = dict(values)
        v.update(dict(zip(keys, combo)))
        scenarios.append(_build_scenario(v, label=f"run_{i:03d}"))
    return scenarios


# -- artifact writers ----------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def _spectrum_for(scn: Scenario) -> Spectrum:
    mech = scn.regime.mechanics
    t = scn.regime.temperature
    if scn.regime.medium_mode == "transparent":
        if mech == "classical":
            return power_classical_transparent(scn.medium, scn.particle, scn.omega_grid, t)
        return power_quantum_transparent(scn.medium, scn.particle, scn.omega_grid, scn.regime, t)
    if mech == "classical":
        return power_classical_lossy(scn.medium, scn.particle, scn.domain, t, scn.omega_grid)
    return power_quantum(scn.medium, scn.particle, scn.domain, scn.regime, t, scn.omega_grid)


def _artifact_spectrum(scn: Scenario, path: Path) -> None:
    spec = _spectrum_for(scn)
    cumulative = np.concatenate(
        ([0.0], np.cumsum(np.diff(spec.omega_grid) * 0.5 * (spec.density[1:] + spec.density[:-1])))
    )
    header = ["omega", "density", "error", "cumulative"]
    cols = [spec.omega_grid, spec.density, spec.error_estimate, cumulative]
    if spec.components:
        header += ["zero_T", "thermal"]
        cols += [spec.components["zero_T"], spec.components["thermal"]]
    _write_csv(path, header, zip(*cols))


def _artifact_branches(scn: Scenario, path: Path) -> None:
    rows = []
    for k in scn.k_grid:
        bs = solve_branches(scn.medium, float(k))
        for j, b in enumerate(bs.branches):
            rows.append([
                k, j, b.omega.real, b.omega.imag, b.v_g.real, b.v_g.imag,
                b.v_p.real, b.v_p.imag, b.damping_time, 1.0 if b.half_weight else 0.0,
            ])
    _write_csv(path, ["k", "branch", "re_omega", "im_omega", "re_v_g", "im_v_g",
                      "re_v_p", "im_v_p", "damping_time", "half_weight"], rows)


def _artifact_sumrules(scn: Scenario, path: Path) -> None:
    rows = []
    for k in scn.k_grid:
        s1, s2, s3 = sum_rules(solve_branches(scn.medium, float(k)))
        rows.append([k, s1, s2, s3])
    _write_csv(path, ["k", "S1", "S2", "S3"], rows)


def _artifact_kernelmap(scn: Scenario, path: Path) -> None:
    if not scn.medium.is_lossy:
        raise ConfigError("outputs: kernelmap requires a lossy medium")
    rows = []
    for w in scn.omega_grid:
        kv = spectral_kernel(scn.medium, float(w), scn.k_grid)
        rows.extend([w, k, v] for k, v in zip(scn.k_grid, kv))
    _write_csv(path, ["omega", "k", "kernel"], rows)


def _artifact_response(scn: Scenario, path: Path) -> None:
    m = scn.medium
    header = ["omega", "re_eps", "im_eps", "re_mu", "im_mu", "re_kappa", "im_kappa"]
    have_f = getattr(m, "gamma_e", 0.0) > 0.0
    have_g = getattr(m, "gamma_m", 0.0) > 0.0
    if have_f:
        header.append("f_sq")
    if have_g:
        header.append("g_sq")
    rows = []
    for w in scn.omega_grid:
        eps = complex(m.eps(float(w)))
        mu = complex(m.mu(float(w)))
        kap = complex(m.kappa(float(w)))
        row = [w, eps.real, eps.imag, mu.real, mu.imag, kap.real, kap.imag]
        if have_f:
            row.append(m.coupling_f_sq(float(w)))
        if have_g:
            row.append(m.coupling_g_sq(float(w)))
        rows.append(row)
    _write_csv(path, header, rows)


def _artifact_thermalfactors(scn: Scenario, path: Path) -> None:
    t = scn.regime.temperature
    e_q = scn.particle.energy
    lam = scn.particle.hbar_scale
    rows = []
    for w in scn.omega_grid:
        w_eff = lam * float(w) if lam > 0.0 else float(w)
        if t > 0.0:
            rows.append([w, bose_occupation(w_eff, t), coth_weight(w_eff, t),
                         f_t_factor(w_eff, t, e_q)])
        else:
            rows.append([w, 0.0, 1.0, 1.0])
    _write_csv(path, ["omega", "bose", "coth", "f_t"], rows)


_WRITERS = {
    "spectrum": _artifact_spectrum,
    "branches": _artifact_branches,
    "sumrules": _artifact_sumrules,
    "kernelmap": _artifact_kernelmap,
    "response": _artifact_response,
    "thermalfactors": _artifact_thermalfactors,
}


@dataclass(frozen=True)
class RunResult:
    status: int
    out_dir: Path
    artifacts: tuple
    manifest: dict


def run_scenario(scenario: Scenario, out_dir, config_text: str = "",
                 tol_override: float | None = None) -> RunResult:
    """Execute one scenario: compute requested artifacts, then promote atomically.

    On any failure nothing is promoted; the manifest (written last) records
    the config hash, tool version, wall time and every warning exactly once.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if tol_override is not None:
        scenario = Scenario(
            medium=scenario.medium, particle=scenario.particle, regime=scenario.regime,
            domain=IntegrationDomain(scenario.domain.omega_max, scenario.domain.k_max,
                                     tol_override, scenario.domain.bracket_refinement),
            thermal_state=scenario.thermal_state, omega_grid=scenario.omega_grid,
            k_grid=scenario.k_grid, outputs=scenario.outputs, label=scenario.label,
            resolved=scenario.resolved,
        )

    started = time.monotonic()
    tmp = Path(tempfile.mkdtemp(prefix=".tmp-", dir=out))
    captured: list[str] = []
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            names = []
            for artifact in scenario.outputs:
                name = f"{artifact}.csv"
                _WRITERS[artifact](scenario, tmp / name)
                names.append(name)
            captured = list(dict.fromkeys(str(w.message) for w in caught))

        manifest = {
            "tool_version": __version__,
            "config_sha256": hashlib.sha256(config_text.encode("utf-8")).hexdigest(),
            "label": scenario.label,
            "timestamp_utc": datetime.now(timezone.utc).isoformat(),
            "wall_time_s": time.monotonic() - started,
            "warnings": captured,
            "artifacts": names,
            "scenario": dict(sorted(scenario.resolved.items())),
            "exit_status": 0,
        }
        with open(tmp / "manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")

        for name in names + ["manifest.json"]:
            os.replace(tmp / name, out / name)
        return RunResult(0, out, tuple(names), manifest)
    finally:
        shutil.rmtree(tmp, ignore_errors=True)


def _run_one(args):
    scenario, out_dir, text, tol = args
    return run_scenario(scenario, out_dir, text, tol)


EXAMPLE_CONFIGS = {
    "classical_lossy.cfg": """\
# classical energy loss of a fast electron in a lossy magnetodielectric
medium.omega_pe = 1.0e15 rad_s
medium.omega_0e = 2.0e15 rad_s
medium.gamma_e = 1.0e14 rad_s
medium.omega_pm = 1.0e15 rad_s
medium.omega_0m = 2.0e15 rad_s
medium.gamma_m = 1.0e14 rad_s
particle.beta = 0.9
regime.mechanics = classical
domain.omega_max = 8.0e15 rad_s
domain.k_max = 1.0e8 rad_m
grid.omega_points = 160
outputs = spectrum sumrules response
""",
    "quantum_transparent.cfg": """\
# relativistic quantum spectrum in a transparent n = 1.5 medium;
# density drops to zero at the recoil cutoff
medium.model = fixed
medium.eps = 2.25
medium.mu = 1.0
particle.beta = 0.9
regime.mechanics = rel_quantum
regime.medium_mode = transparent
grid.omega_min = 1.0e18 rad_s
grid.omega_max = 1.05e21 rad_s
grid.omega_points = 300
grid.spacing = log
outputs = spectrum
""",
    "thermal_sweep.cfg": """\
# finite-temperature classical spectra, swept over particle speed
medium.omega_pe = 1.0e15 rad_s
medium.omega_0e = 2.0e15 rad_s
medium.gamma_e = 1.0e14 rad_s
particle.beta = 0.9
regime.mechanics = classical
regime.temperature = 30000 K
domain.omega_max = 6.0e15 rad_s
domain.k_max = 6.0e7 rad_m
outputs = spectrum thermalfactors
sweep.particle.beta = 0.7, 0.8, 0.9
""",
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cherenkov",
        description="Cherenkov radiation observables in dispersive magnetodielectric media.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config and write artifacts")
    p_run.add_argument("config", type=Path)
    p_run.add_argument("--out", type=Path, default=None, help="output directory (default runs/<stem>)")
    p_run.add_argument("--tol", type=float, default=None, help="override domain.relative_tolerance")
    p_run.add_argument("--jobs", type=int, default=1, help="parallel workers for sweep runs")

    p_val = sub.add_parser("validate", help="parse and validate a config without running")
    p_val.add_argument("config", type=Path)

    sub.add_parser("list-examples", help="print built-in example configs")

    args = parser.parse_args(argv)

    if args.command == "list-examples":
        for name, text in EXAMPLE_CONFIGS.items():
            print(f"# ===== {name} =====")
            print(text)
        return 0

    try:
        text = args.config.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return 2

    try:
        scenarios = expand_sweeps(text)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        print(f"ok: {len(scenarios)} scenario(s)")
        return 0

    out_base = args.out if args.out is not None else Path("runs") / args.config.stem
    try:
        if len(scenarios) == 1:
            results = [run_scenario(scenarios[0], out_base, text, args.tol)]
        else:
            jobs = [(s, out_base / s.label, text, args.tol) for s in scenarios]
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    results = list(pool.map(_run_one, jobs))
            else:
                results = [_run_one(j) for j in jobs]
    except CherenkovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    for r in results:
        print(f"wrote {len(r.artifacts)} artifact(s) + manifest to {r.out_dir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

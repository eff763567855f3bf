"""Declarative experiment runner: configs, presets, sweeps, and reports.

An experiment is described by a flat key=value text file (or a shipped
preset): which model to evaluate, its parameters, the time grid, the fit
protocol, and the numeric targets the outcome is held to.  Running one
produces CSV traces (17 significant digits, byte-identical across runs), an
optional SVG plot, and a JSON report pairing every fitted value with its
target, tolerance, and verdict.

Three kinds of experiment exist, selected by the config blocks present:

* plain  -- one curve, one fit (``fig3a``, ``fig3b``, ``fig4`` presets);
* ladder -- one fit per rung of the ion frequency ladder, then a power-law
  fit of the decay rates (``fig5``, ``master-eq-baseline``);
* sweep  -- one fit per value of a swept parameter, then a log-log slope
  and optional dephasing-prediction comparison (``eid-sweep``).

Sweep elements may run in parallel worker processes; results are reassembled
in input order, and a failed element is recorded rather than aborting the
rest.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .core import TimeSeries, frequency_ladder, make_time_grid
from .distinguishable import DistinguishableParams, predictive_probability_dist
from .fitting import fit_damped_sinusoid, fit_ladder_exponent
from .indistinguishable import (
    IndistParams,
    closed_form_truncated,
    eid_gamma_prediction,
    rescale_to_coordinate_time,
)
from .master_equation import MasterEqParams, master_eq_probability, strong_driving_limit

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "Report",
    "parse_config_file",
    "load_preset",
    "preset_names",
    "run_experiment",
    "sweep",
    "resolve_out_dir",
    "ENV_OUT_DIR",
]

#: Environment variable naming the default output directory.
ENV_OUT_DIR = "RABIDECAY_OUT"

_MODELS = ("distinguishable", "indistinguishable", "closed-form", "master-equation")
_CURVES = ("strong-driving", "full")

_TOP_KEYS = {"name", "model"}
_MODEL_KEYS = {"omega", "dt", "eta", "beta", "depth", "gamma_spont", "curve"}
_GRID_KEYS = {"periods", "samples_per_period"}
_FIT_KEYS = {"window_periods", "free_amplitude", "max_iterations", "init_gamma", "init_omega"}
_LADDER_KEYS = {"base_omega", "n_max"}
_SWEEP_KEYS = {"axis", "values"}
_TARGET_KEYS = {
    "gamma_over_omega",
    "gamma_over_omega_tolerance",
    "alpha_min",
    "alpha_max",
    "slope",
    "slope_tolerance",
    "eid_match_tolerance",
    "ratio_spread_tolerance",
    "characteristic_frequency",
    "characteristic_frequency_tolerance",
}


class ConfigError(Exception):
    """Invalid experiment configuration; the message names the offending key."""


@dataclass
class ExperimentConfig:
    """Declarative description of one experiment.

    Attributes
    ----------
    name : str
        Experiment name; prefixes every output file.
    model : str
        One of ``distinguishable``, ``indistinguishable``, ``closed-form``,
        ``master-equation``.
    params : dict
        Model parameter block (``model.*`` keys of the config file).
    grid_periods : float
        Grid length in oscillation periods of the run's drive frequency.
    samples_per_period : int
        Grid resolution; 40 resolves the oscillation comfortably for fitting.
    fit : dict
        Fit protocol block: ``window_periods``, ``free_amplitude``,
        ``max_iterations``, ``init_gamma``, ``init_omega``.
    ladder : dict or None
        When set (``base_omega``, ``n_max``), the run repeats per ladder rung.
    sweep_spec : dict or None
        When set (``axis``, ``values``), the run repeats per swept value.
    targets : dict
        Numeric targets to verdict the outcome against.
    """

    name: str
    model: str
    params: dict = field(default_factory=dict)
    grid_periods: float = 6.0
    samples_per_period: int = 40
    fit: dict = field(default_factory=dict)
    ladder: dict | None = None
    sweep_spec: dict | None = None
    targets: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in _MODELS:
            raise ConfigError(
                f"model: unknown model '{self.model}' (choose from {', '.join(_MODELS)})"
            )
        if not (math.isfinite(self.grid_periods) and self.grid_periods > 0):
            raise ConfigError("grid.periods must be positive")
        if not (isinstance(self.samples_per_period, int) and self.samples_per_period > 0):
            raise ConfigError("grid.samples_per_period must be a positive integer")
        if self.ladder is not None and self.sweep_spec is not None:
            raise ConfigError("ladder.* and sweep.* blocks are mutually exclusive")

    def to_dict(self) -> dict:
        return _plain(asdict(self))


@dataclass
class Report:
    """Everything a finished experiment produced, JSON-serializable.

    ``runs`` holds one record per fitted curve (a plain experiment has one,
    ladders and sweeps several); ``derived`` the quantities computed across
    runs (gamma_over_omega, alpha, ratios, slope, ...); ``targets`` one entry
    per configured target with its verdict.
    """

    name: str
    model: str
    config: dict
    runs: list
    derived: dict
    targets: dict
    all_passed: bool
    any_nonconverged: bool
    wall_clock_s: float

    def to_json(self) -> str:
        return json.dumps(_plain(asdict(self)), indent=2, sort_keys=True)


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json.dumps accepts the tree."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


# --------------------------------------------------------------------------
# Config parsing


def _coerce_scalar(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def _coerce(text: str):
    if "," in text:
        return [_coerce_scalar(part.strip()) for part in text.split(",")]
    return _coerce_scalar(text)


def _parse_config_text(text: str, default_name: str) -> ExperimentConfig:
    top: dict = {}
    blocks: dict[str, dict] = {
        "model": {},
        "grid": {},
        "fit": {},
        "ladder": {},
        "sweep": {},
        "target": {},
    }
    allowed = {
        "model": _MODEL_KEYS,
        "grid": _GRID_KEYS,
        "fit": _FIT_KEYS,
        "ladder": _LADDER_KEYS,
        "sweep": _SWEEP_KEYS,
        "target": _TARGET_KEYS,
    }
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value_text = line.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if not value_text:
            raise ConfigError(f"{key}: empty value")
        value = _coerce(value_text)
        if "." in key:
            prefix, _, sub = key.partition(".")
            if prefix not in blocks:
                raise ConfigError(f"unknown configuration key: '{key}'")
            if sub not in allowed[prefix]:
                raise ConfigError(f"unknown configuration key: '{key}'")
            blocks[prefix][sub] = value
        elif key in _TOP_KEYS:
            top[key] = value
        else:
            raise ConfigError(f"unknown configuration key: '{key}'")

    if "model" not in top:
        raise ConfigError("model: required key is missing")
    grid = blocks["grid"]
    return ExperimentConfig(
        name=str(top.get("name", default_name)),
        model=str(top["model"]),
        params=blocks["model"],
        grid_periods=float(grid.get("periods", 6.0)),
        samples_per_period=int(grid.get("samples_per_period", 40)),
        fit=blocks["fit"],
        ladder=blocks["ladder"] or None,
        sweep_spec=blocks["sweep"] or None,
        targets=blocks["target"],
    )


def parse_config_file(path) -> ExperimentConfig:
    """Parse a flat key=value experiment config file.

    Lines are ``key = value`` with ``#`` comments; keys live in the flat
    namespace ``model.*``, ``grid.*``, ``fit.*``, ``ladder.*``, ``sweep.*``,
    ``target.*`` plus bare ``name`` and ``model``.  Values are coerced to
    int, float, bool, or string; comma-separated values become lists.

    Raises
    ------
    ConfigError
        Naming the offending key or line.
    """
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return _parse_config_text(p.read_text(), default_name=p.stem)


def preset_names() -> list[str]:
    """Names of the shipped experiment presets."""
    pkg = resources.files(__package__) / "presets"
    return sorted(entry.name[: -len(".cfg")] for entry in pkg.iterdir() if entry.name.endswith(".cfg"))


def load_preset(name: str) -> ExperimentConfig:
    """Load one of the shipped presets by name (see :func:`preset_names`)."""
    resource = resources.files(__package__) / "presets" / f"{name}.cfg"
    if not resource.is_file():
        raise ConfigError(
            f"unknown preset '{name}' (available: {', '.join(preset_names())})"
        )
    return _parse_config_text(resource.read_text(), default_name=name)


# --------------------------------------------------------------------------
# Model evaluation


def _require(params: dict, key: str, model: str) -> float:
    if key not in params:
        raise ConfigError(f"model.{key}: required for the {model} model")
    return params[key]


def _evaluate_curve(model: str, params: dict, omega: float, t: np.ndarray) -> np.ndarray:
    """Ground/excited-state probability trace of ``model`` on grid ``t``."""
    try:
        if model == "distinguishable":
            p = DistinguishableParams(
                omega=omega,
                dt=float(_require(params, "dt", model)),
                eta=float(_require(params, "eta", model)),
            )
            return predictive_probability_dist(p, t).values
        if model in ("indistinguishable", "closed-form"):
            p = IndistParams(
                omega=omega,
                dt=float(_require(params, "dt", model)),
                beta=float(_require(params, "beta", model)),
                depth=int(params.get("depth", 5)),
            )
            if model == "indistinguishable":
                return rescale_to_coordinate_time(p, t)
            return closed_form_truncated(p, t)
        curve = params.get("curve", "strong-driving")
        if curve not in _CURVES:
            raise ConfigError(
                f"model.curve: unknown curve '{curve}' (choose from {', '.join(_CURVES)})"
            )
        p = MasterEqParams(
            omega=omega, gamma_spont=float(_require(params, "gamma_spont", model))
        )
        if curve == "full":
            return master_eq_probability(p, t)
        return strong_driving_limit(p, t)
    except ValueError as exc:
        raise ConfigError(f"model parameters: {exc}") from exc


def _run_one_fit(config: ExperimentConfig, omega: float, label: str) -> dict:
    """Evaluate one curve and fit it; returns the curve and the run record."""
    started = time.perf_counter()
    t = make_time_grid(omega, config.grid_periods, config.samples_per_period)
    y = _evaluate_curve(config.model, config.params, omega, t)
    fit_cfg = config.fit
    init_gamma = fit_cfg.get("init_gamma")
    init_omega = fit_cfg.get("init_omega")
    init = None if init_gamma is None and init_omega is None else (init_gamma, init_omega)
    try:
        result = fit_damped_sinusoid(
            TimeSeries(times=t, values=y),
            init=init,
            window_periods=float(fit_cfg.get("window_periods", 6.0)),
            free_amplitude=bool(fit_cfg.get("free_amplitude", False)),
            max_iterations=int(fit_cfg.get("max_iterations", 100)),
        )
    except ValueError as exc:
        raise ConfigError(f"fit protocol: {exc}") from exc
    fit_curve = result.offset - result.amplitude * np.exp(-result.gamma * t) * np.cos(
        2.0 * result.omega_fit * t
    )
    record = {
        "label": label,
        "omega_drive": float(omega),
        "gamma": result.gamma,
        "omega_fit": result.omega_fit,
        "gamma_over_omega": result.gamma / omega,
        "amplitude": result.amplitude,
        "offset": result.offset,
        "residual_rms": result.residual_rms,
        "converged": result.converged,
        "iterations": result.iterations,
        "window": [result.window[0], result.window[1]],
        "n_points": int(len(t)),
        "wall_clock_s": time.perf_counter() - started,
    }
    return {"record": record, "t": t, "y": y, "fit": fit_curve}


def _drive_omega(config: ExperimentConfig) -> float:
    return float(_require(config.params, "omega", config.model))


def _sweep_worker(payload) -> dict:
    """Run one sweep element; errors are captured, never raised, so that one
    bad element cannot take the pool (or the sweep) down with it."""
    config, axis, value, label = payload
    try:
        params = dict(config.params)
        params[axis] = int(value) if axis == "depth" else float(value)
        element = ExperimentConfig(
            name=config.name,
            model=config.model,
            params=params,
            grid_periods=config.grid_periods,
            samples_per_period=config.samples_per_period,
            fit=config.fit,
        )
        return _run_one_fit(element, _drive_omega(element), label)
    except Exception as exc:  # noqa: BLE001 -- captured into the report
        return {"record": {"label": label, "error": f"{type(exc).__name__}: {exc}"}}


# --------------------------------------------------------------------------
# Target evaluation


def _tolerance(targets: dict, key: str) -> float:
    tol_key = f"{key}_tolerance"
    if tol_key not in targets:
        raise ConfigError(f"target.{tol_key}: required alongside target.{key}")
    return float(targets[tol_key])


def _verdict_relative(target: float, tolerance: float, actual: float) -> dict:
    passed = abs(actual - target) <= tolerance * abs(target)
    return {"target": target, "tolerance": tolerance, "actual": actual, "passed": passed}


def _evaluate_targets(targets: dict, derived: dict) -> dict:
    out: dict = {}
    if "gamma_over_omega" in targets:
        if "gamma_over_omega" not in derived:
            raise ConfigError("target.gamma_over_omega: applies to plain experiments only")
        out["gamma_over_omega"] = _verdict_relative(
            float(targets["gamma_over_omega"]),
            _tolerance(targets, "gamma_over_omega"),
            derived["gamma_over_omega"],
        )
    if "alpha_min" in targets or "alpha_max" in targets:
        if "alpha" not in derived:
            raise ConfigError("target.alpha_min/alpha_max: require a ladder block")
        lo = float(targets.get("alpha_min", -math.inf))
        hi = float(targets.get("alpha_max", math.inf))
        alpha = derived["alpha"]
        out["alpha"] = {
            "minimum": lo,
            "maximum": hi,
            "actual": alpha,
            "passed": lo <= alpha <= hi,
        }
    if "ratio_spread_tolerance" in targets:
        if "ratios" not in derived:
            raise ConfigError("target.ratio_spread_tolerance: requires a ladder block")
        tol = float(targets["ratio_spread_tolerance"])
        spread = max(abs(r - 1.0) for r in derived["ratios"])
        out["ratio_spread"] = {"tolerance": tol, "actual": spread, "passed": spread <= tol}
    if "characteristic_frequency" in targets:
        if "characteristic_frequency" not in derived:
            raise ConfigError(
                "target.characteristic_frequency: requires a ladder block and model.dt"
            )
        out["characteristic_frequency"] = _verdict_relative(
            float(targets["characteristic_frequency"]),
            _tolerance(targets, "characteristic_frequency"),
            derived["characteristic_frequency"],
        )
    if "slope" in targets:
        if "slope" not in derived:
            raise ConfigError("target.slope: requires a sweep block with >= 2 values")
        slope = derived["slope"]
        tol = _tolerance(targets, "slope")
        target = float(targets["slope"])
        out["slope"] = {
            "target": target,
            "tolerance": tol,
            "actual": slope,
            "passed": abs(slope - target) <= tol,
        }
    if "eid_match_tolerance" in targets:
        if "eid_relative_errors" not in derived:
            raise ConfigError(
                "target.eid_match_tolerance: requires a sweep and a model with beta and dt"
            )
        tol = float(targets["eid_match_tolerance"])
        worst = max(derived["eid_relative_errors"])
        out["eid_match"] = {"tolerance": tol, "actual": worst, "passed": worst <= tol}
    return out


# --------------------------------------------------------------------------
# Output files


def resolve_out_dir(out_dir=None) -> Path:
    """Output directory: explicit argument, else $RABIDECAY_OUT, else ./rabidecay-out."""
    return Path(out_dir or os.environ.get(ENV_OUT_DIR) or "rabidecay-out")


def _write_csv(path: Path, t: np.ndarray, y: np.ndarray, fit_curve: np.ndarray | None):
    lines = ["t,probability,fit_value" if fit_curve is not None else "t,probability"]
    if fit_curve is not None:
        for ti, yi, fi in zip(t, y, fit_curve):
            lines.append(f"{ti:.17g},{yi:.17g},{fi:.17g}")
    else:
        for ti, yi in zip(t, y):
            lines.append(f"{ti:.17g},{yi:.17g}")
    path.write_text("\n".join(lines) + "\n")


def _write_plot(path: Path, name: str, panels: list):
    """One SVG per experiment: simulated points, fitted curve as a line."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = name
    ncols = min(len(panels), 3)
    nrows = (len(panels) + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(4.2 * ncols, 3.0 * nrows), squeeze=False
    )
    for ax, (label, t, y, fit_curve) in zip(axes.flat, panels):
        ax.plot(t, y, ".", markersize=3, label="simulation")
        if fit_curve is not None:
            ax.plot(t, fit_curve, "-", linewidth=1.0, label="fit")
        ax.set_xlabel("time")
        ax.set_ylabel("probability")
        ax.set_title(label, fontsize=9)
        ax.legend(fontsize=7)
    for ax in axes.flat[len(panels):]:
        ax.set_visible(False)
    fig.suptitle(name)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


# --------------------------------------------------------------------------
# Runner


def run_experiment(config: ExperimentConfig, out_dir=None, workers: int = 1, plot: bool = True) -> Report:
    """Run one experiment end to end and write its output files.

    Evaluates the configured model, fits every produced curve, derives the
    cross-run quantities, verdicts the targets, and writes per-curve CSVs,
    one SVG (unless ``plot`` is False), and ``<name>_report.json`` into the
    output directory (argument, else $RABIDECAY_OUT, else ./rabidecay-out).

    Identical configs produce byte-identical CSVs; the report differs only
    in wall-clock fields.

    Parameters
    ----------
    config : ExperimentConfig
    out_dir : path-like, optional
    workers : int
        Worker processes for sweep elements; 1 runs in-process.
    plot : bool
        Write the SVG plot.

    Returns
    -------
    Report

    Raises
    ------
    ConfigError
        For invalid parameter values, fit-protocol preconditions, or targets
        that do not apply to the configured experiment kind.
    """
    started = time.perf_counter()
    directory = resolve_out_dir(out_dir)
    directory.mkdir(parents=True, exist_ok=True)

    runs: list[dict] = []
    derived: dict = {}
    curves: list[tuple] = []  # (file_stem, element dict)

    if config.sweep_spec is not None:
        spec = config.sweep_spec
        if "axis" not in spec or "values" not in spec:
            raise ConfigError("sweep.axis and sweep.values are both required")
        axis = str(spec["axis"])
        if axis not in _MODEL_KEYS or axis == "curve":
            raise ConfigError(f"sweep.axis: '{axis}' is not a numeric model parameter")
        values = spec["values"] if isinstance(spec["values"], list) else [spec["values"]]
        payloads = [
            (config, axis, value, f"{axis}={float(value):g}") for value in values
        ]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                elements = list(pool.map(_sweep_worker, payloads))
        else:
            elements = [_sweep_worker(p) for p in payloads]
        gammas, omegas = [], []
        for value, element in zip(values, elements):
            runs.append(element["record"])
            if "error" in element["record"]:
                continue
            stem = f"{config.name}_{axis}_{float(value):g}"
            curves.append((stem, element))
            gammas.append(element["record"]["gamma"])
            omegas.append(element["record"]["omega_drive"])
        derived["gammas"] = list(gammas)
        if axis == "omega" and len(gammas) >= 2 and all(g > 0 for g in gammas):
            slope = np.polyfit(np.log(omegas), np.log(gammas), 1)[0]
            derived["slope"] = float(slope)
        if "beta" in config.params and "dt" in config.params and axis == "omega":
            errors = []
            for omega_i, gamma_i in zip(omegas, gammas):
                predicted = eid_gamma_prediction(
                    float(config.params["beta"]), omega_i, float(config.params["dt"])
                )
                errors.append(abs(gamma_i - predicted) / predicted)
            derived["eid_relative_errors"] = errors
            derived["eid_predictions"] = [
                eid_gamma_prediction(float(config.params["beta"]), w, float(config.params["dt"]))
                for w in omegas
            ]
    elif config.ladder is not None:
        spec = config.ladder
        if "base_omega" not in spec or "n_max" not in spec:
            raise ConfigError("ladder.base_omega and ladder.n_max are both required")
        base = float(spec["base_omega"])
        n_max = int(spec["n_max"])
        try:
            rungs = frequency_ladder(base, n_max)
        except ValueError as exc:
            raise ConfigError(f"ladder: {exc}") from exc
        gammas = []
        for n in range(n_max + 1):
            omega_n = rungs[n]
            element = _run_one_fit(config, omega_n, label=f"n={n}")
            runs.append(element["record"])
            curves.append((f"{config.name}_n{n}", element))
            gammas.append(element["record"]["gamma"])
        exponent = fit_ladder_exponent(gammas)
        derived["gammas"] = list(gammas)
        derived["ratios"] = [float(r) for r in exponent.ratios]
        derived["alpha"] = exponent.alpha
        derived["ladder_frequencies"] = [float(rungs[n]) for n in range(n_max + 1)]
        if "dt" in config.params:
            # Environmental rate 1/dt expressed in units of the lowest rung.
            derived["characteristic_frequency"] = 1.0 / float(config.params["dt"]) / rungs[0]
    else:
        element = _run_one_fit(config, _drive_omega(config), label=config.name)
        runs.append(element["record"])
        curves.append((config.name, element))
        derived["gamma"] = element["record"]["gamma"]
        derived["omega_fit"] = element["record"]["omega_fit"]
        derived["gamma_over_omega"] = element["record"]["gamma_over_omega"]

    targets = _evaluate_targets(config.targets, derived)
    all_passed = all(entry["passed"] for entry in targets.values())
    any_nonconverged = any(
        ("error" in record) or not record.get("converged", False) for record in runs
    )

    for stem, element in curves:
        _write_csv(directory / f"{stem}.csv", element["t"], element["y"], element["fit"])
    if plot and curves:
        panels = [
            (element["record"]["label"], element["t"], element["y"], element["fit"])
            for _, element in curves
        ]
        _write_plot(directory / f"{config.name}.svg", config.name, panels)

    report = Report(
        name=config.name,
        model=config.model,
        config=config.to_dict(),
        runs=_plain(runs),
        derived=_plain(derived),
        targets=_plain(targets),
        all_passed=all_passed,
        any_nonconverged=any_nonconverged,
        wall_clock_s=time.perf_counter() - started,
    )
    (directory / f"{config.name}_report.json").write_text(report.to_json() + "\n")
    return report


def _sweep_report_worker(payload) -> Report:
    """Run one per-value element of :func:`sweep`, capturing any failure."""
    element, out_dir, plot = payload
    try:
        return run_experiment(element, out_dir=out_dir, workers=1, plot=plot)
    except Exception as exc:  # noqa: BLE001 -- one failure must not abort the sweep
        return Report(
            name=element.name,
            model=element.model,
            config=element.to_dict(),
            runs=[{"label": element.name, "error": f"{type(exc).__name__}: {exc}"}],
            derived={},
            targets={},
            all_passed=False,
            any_nonconverged=True,
            wall_clock_s=0.0,
        )


def sweep(config: ExperimentConfig, axis: str, values, out_dir=None, workers: int = 1, plot: bool = True) -> list[Report]:
    """Run ``config`` once per value of ``axis``; one report per value.

    A convenience over :func:`run_experiment` with a sweep block: each value
    gets its own independently written report, named
    ``<name>_<axis>_<value>``.  Cross-element targets (slope, dephasing
    match) need the single-report form and are dropped here; per-element
    targets are kept.  Elements run concurrently when ``workers`` > 1,
    reports come back in input order, and one element's failure is captured
    in its own report without aborting the rest.
    """
    if axis not in _MODEL_KEYS or axis == "curve":
        raise ConfigError(f"sweep.axis: '{axis}' is not a numeric model parameter")
    per_value_targets = {
        k: v
        for k, v in config.targets.items()
        if k.startswith("gamma_over_omega")
    }
    payloads = []
    for value in values:
        params = dict(config.params)
        params[axis] = int(value) if axis == "depth" else float(value)
        element = ExperimentConfig(
            name=f"{config.name}_{axis}_{float(value):g}",
            model=config.model,
            params=params,
            grid_periods=config.grid_periods,
            samples_per_period=config.samples_per_period,
            fit=dict(config.fit),
            targets=per_value_targets,
        )
        payloads.append((element, out_dir, plot))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_report_worker, payloads))
    return [_sweep_report_worker(p) for p in payloads]

"""Decoherence models for driven two-level systems.

The package provides three families of ground-state-probability curves for a
resonantly driven two-level system subject to uncontrolled environmental
interference -- a piecewise recursion over distinguishable ensemble members, a
binomially weighted nested recursion over indistinguishable interference
events (with its truncated closed form), and the standard master-equation
solution used as a reference -- together with the damped-sinusoid and
power-law fits needed to extract decay rates from them, and a small
experiment runner that reproduces the published figure-level results.
"""

from .core import (
    LAMB_DICKE,
    BinomialWeight,
    FrequencyLadder,
    RabiParams,
    TimeSeries,
    binomial_row,
    binomial_weight,
    damped_sinusoid,
    frequency_ladder,
    laguerre_L1,
    make_time_grid,
    rabi_ground_probability,
)
from .distinguishable import DistinguishableParams, p_segment, predictive_probability_dist
from .indistinguishable import (
    IndistParams,
    NestedTable,
    build_nested_table,
    closed_form_truncated,
    eid_gamma_prediction,
    p_nested,
    p_one_event,
    rescale_to_coordinate_time,
)
from .master_equation import MasterEqParams, master_eq_probability, strong_driving_limit
from .fitting import (
    ExponentFit,
    FitResult,
    estimate_frequency_from_crossings,
    fit_damped_sinusoid,
    fit_ladder_exponent,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    Report,
    load_preset,
    parse_config_file,
    run_experiment,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "LAMB_DICKE",
    "BinomialWeight",
    "ConfigError",
    "DistinguishableParams",
    "ExperimentConfig",
    "ExponentFit",
    "FitResult",
    "FrequencyLadder",
    "IndistParams",
    "MasterEqParams",
    "NestedTable",
    "RabiParams",
    "Report",
    "TimeSeries",
    "binomial_row",
    "binomial_weight",
    "build_nested_table",
    "closed_form_truncated",
    "damped_sinusoid",
    "eid_gamma_prediction",
    "estimate_frequency_from_crossings",
    "fit_damped_sinusoid",
    "fit_ladder_exponent",
    "frequency_ladder",
    "laguerre_L1",
    "load_preset",
    "make_time_grid",
    "master_eq_probability",
    "p_nested",
    "p_one_event",
    "p_segment",
    "parse_config_file",
    "predictive_probability_dist",
    "rabi_ground_probability",
    "rescale_to_coordinate_time",
    "run_experiment",
    "strong_driving_limit",
    "sweep",
]

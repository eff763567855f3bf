"""Continuous reference model: driven two-level system with spontaneous decay.

Serves as the baseline the event-counting models are compared against.  Its
damping rate is set by the spontaneous rate alone, so when evaluated along a
frequency ladder every rung decays identically -- the flat-ratio signature
the acceptance suite checks to 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import _as_time

__all__ = ["MasterEqParams", "master_eq_probability", "strong_driving_limit"]


@dataclass(frozen=True)
class MasterEqParams:
    """Drive frequency omega > 0 and spontaneous rate gamma_spont >= 0."""

    omega: float
    gamma_spont: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError("omega must be positive and finite")
        if not (math.isfinite(self.gamma_spont) and self.gamma_spont >= 0):
            raise ValueError("gamma_spont must be non-negative and finite")

    @property
    def overdamped(self) -> bool:
        """True when 2*omega <= gamma_spont/4 and the oscillation frequency vanishes."""
        return 2.0 * self.omega <= self.gamma_spont / 4.0

    @property
    def mu(self) -> float:
        """Shifted oscillation frequency sqrt(4 omega^2 - (gamma_spont/4)^2)."""
        disc = 4.0 * self.omega**2 - (self.gamma_spont / 4.0) ** 2
        return math.sqrt(disc) if disc > 0 else 0.0

    @property
    def plateau(self) -> float:
        """Long-time ground-state population 4 omega^2 / (gamma_spont^2 + 8 omega^2)."""
        return 4.0 * self.omega**2 / (self.gamma_spont**2 + 8.0 * self.omega**2)


def master_eq_probability(params: MasterEqParams, t):
    """Ground-state probability of the driven-dissipative two-level system
    prepared in the excited state.

    P(t) = plateau * (1 - exp(-3 G t / 4) (cos(mu t) + (3 G / (4 mu)) sin(mu t)))

    with G the spontaneous rate.  Only the underdamped regime is supported:
    the expression divides by mu, so overdamped parameters raise ValueError.
    """
    if params.overdamped:
        raise ValueError(
            "overdamped regime (2*omega <= gamma_spont/4): oscillation frequency"
            " vanishes and this expression does not apply"
        )
    arr, scalar = _as_time(t)
    g = params.gamma_spont
    mu = params.mu
    envelope = np.exp(-0.75 * g * arr)
    if g == 0.0:
        osc = np.cos(mu * arr)
    else:
        osc = np.cos(mu * arr) + (0.75 * g / mu) * np.sin(mu * arr)
    out = params.plateau * (1.0 - envelope * osc)
    return float(out) if scalar else out


def strong_driving_limit(params: MasterEqParams, t):
    """Strong-driving limit P(t) = (1 - exp(-3 G t / 4) cos(2 omega t)) / 2.

    Plateau at one half, oscillation at the bare frequency: the form the
    damped-cosine fitter is built for.  Valid without a regime restriction.
    """
    arr, scalar = _as_time(t)
    out = 0.5 * (1.0 - np.exp(-0.75 * params.gamma_spont * arr) * np.cos(2.0 * params.omega * arr))
    return float(out) if scalar else out

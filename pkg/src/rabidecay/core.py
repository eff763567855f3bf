"""Elementary kernels shared by every model in the package.

Generalized Laguerre polynomials, binomial weights, the undamped Rabi
probability, the damped-sinusoid template used by all of the fits, and the
trapped-ion frequency ladder.  Everything here is a pure function of its
arguments; values are immutable after construction and safe to share between
threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: Coupling constant of the trapped-ion sideband ladder.  Treated as an exact
#: number; the experiments it was measured in quote no uncertainty for it.
LAMB_DICKE = 0.202


def _as_time(t, name="t"):
    """Validate a scalar-or-array time argument and return (array, was_scalar)."""
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if np.any(arr < 0):
        raise ValueError(f"{name} must be non-negative")
    return arr, arr.ndim == 0


@dataclass(frozen=True)
class RabiParams:
    """Drive parameters of an isolated, resonantly driven two-level system.

    Attributes
    ----------
    omega : float
        Rabi angular frequency (radians per unit coordinate time).  Must be
        strictly positive and finite.
    """

    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError("omega must be positive and finite")

    @property
    def period(self) -> float:
        """Duration of one full population oscillation, pi/omega."""
        return math.pi / self.omega


@dataclass(frozen=True)
class TimeSeries:
    """Ordered (time, probability) samples on an increasing coordinate-time grid."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.ndim != 1 or values.ndim != 1:
            raise ValueError("times and values must be one-dimensional")
        if times.size != values.size:
            raise ValueError("times and values must have equal length")
        if times.size == 0:
            raise ValueError("time series must not be empty")
        if np.any(np.diff(times) <= 0):
            raise ValueError("times must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")

    def __len__(self) -> int:
        return self.times.size

    def restricted(self, t_max: float) -> "TimeSeries":
        """Return the prefix of the series with times <= t_max."""
        mask = self.times <= t_max
        if not np.any(mask):
            raise ValueError("restriction window contains no samples")
        return TimeSeries(self.times[mask], self.values[mask])


def make_time_grid(omega: float, periods: float, samples_per_period: int = 40) -> np.ndarray:
    """Uniform coordinate-time grid covering a number of Rabi periods.

    The default of 40 samples per period resolves the cos(2*omega*t)
    oscillation comfortably for fitting without aliasing.

    Parameters
    ----------
    omega : float
        Rabi angular frequency; one period is pi/omega.
    periods : float
        Grid length, in Rabi periods.  Must be positive.
    samples_per_period : int
        Sampling density.  Must be positive.

    Returns
    -------
    numpy.ndarray
        Grid from 0 to periods*pi/omega inclusive.
    """
    if omega <= 0 or periods <= 0 or samples_per_period <= 0:
        raise ValueError("omega, periods and samples_per_period must be positive")
    n = int(round(periods * samples_per_period))
    return np.linspace(0.0, periods * math.pi / omega, n + 1)


def laguerre_L1(n: int, x: float) -> float:
    """Generalized Laguerre polynomial L^1_n(x) of order one.

    Evaluated with the ascending three-term recurrence

        (m+1) L^1_{m+1}(x) = (2m + 2 - x) L^1_m(x) - (m+1) L^1_{m-1}(x),

    which is numerically stable in the small-argument regime used by the
    frequency ladder and costs O(n).

    Parameters
    ----------
    n : int
        Polynomial degree, n >= 0.
    x : float
        Evaluation point; any finite real.

    Returns
    -------
    float
        L^1_n(x).
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError("n must be a non-negative integer")
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if n == 0:
        return 1.0
    prev, cur = 1.0, 2.0 - x  # L^1_0, L^1_1
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 2 - x) * cur - (m + 1) * prev) / (m + 1)
    return cur


def rabi_ground_probability(params: RabiParams, t):
    """Ground-state probability sin^2(omega*t) of the isolated driven system.

    The system is prepared in the excited state at t = 0, so the probability
    starts at zero, reaches one after half a Rabi period and cycles forever.

    Parameters
    ----------
    params : RabiParams
        Drive parameters.
    t : float or array_like
        Coordinate time(s), t >= 0.

    Returns
    -------
    float or numpy.ndarray
        Probability in [0, 1], matching the shape of ``t``.
    """
    arr, scalar = _as_time(t)
    out = np.sin(params.omega * arr) ** 2
    return float(out) if scalar else out


def damped_sinusoid(gamma: float, omega: float, t):
    """Exponentially damped oscillation template (1 - e^{-gamma*t} cos(2*omega*t))/2.

    This is the universal shape fitted to every decohering probability curve
    in the package: it reduces to the undamped ``rabi_ground_probability``
    when gamma = 0 and relaxes to the fully mixed value 1/2 at long times for
    any gamma > 0.

    Parameters
    ----------
    gamma : float
        Decay rate, gamma >= 0.
    omega : float
        Oscillation frequency; the probability oscillates at 2*omega.
    t : float or array_like
        Coordinate time(s), t >= 0.

    Returns
    -------
    float or numpy.ndarray
        Probability in [0, 1].
    """
    if not (math.isfinite(gamma) and gamma >= 0):
        raise ValueError("gamma must be non-negative and finite")
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    arr, scalar = _as_time(t)
    out = 0.5 * (1.0 - np.exp(-gamma * arr) * np.cos(2.0 * omega * arr))
    return float(out) if scalar else out


def binomial_weight(n: int, k: int, beta: float) -> float:
    """Binomial probability b(n, k, beta) = C(n, k) beta^k (1-beta)^(n-k).

    Computed in log space through ``math.lgamma`` so that n of order 10^4
    neither overflows nor loses the tiny tail weights.  The beta = 0 and
    beta = 1 endpoints are handled exactly (the distribution degenerates to a
    Kronecker delta) instead of through the generic formula, which would hit
    the ill-defined 0^0 corner.

    Parameters
    ----------
    n : int
        Number of trials, n >= 0.
    k : int
        Number of successes, 0 <= k <= n.
    beta : float
        Success probability in [0, 1].

    Returns
    -------
    float
        Weight in [0, 1].
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError("n must be a non-negative integer")
    if not isinstance(k, (int, np.integer)) or not 0 <= k <= n:
        raise ValueError("k must satisfy 0 <= k <= n")
    if not (math.isfinite(beta) and 0.0 <= beta <= 1.0):
        raise ValueError("beta must lie in [0, 1]")
    if beta == 0.0:
        return 1.0 if k == 0 else 0.0
    if beta == 1.0:
        return 1.0 if k == n else 0.0
    log_c = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    log_w = log_c + k * math.log(beta) + (n - k) * math.log1p(-beta)
    return math.exp(log_w)


def binomial_row(n: int, beta: float) -> np.ndarray:
    """All weights b(n, k, beta) for k = 0..n, normalized to unit sum.

    The row is built from the log-space cumulative sum of the successive
    ratios b(n, k+1)/b(n, k) = (n-k)/(k+1) * beta/(1-beta), shifted so the
    largest weight is exp(0) before exponentiation.  Building relative to the
    peak keeps rows for beta near 1 and large n representable: the naive
    ascending product starts from (1-beta)^n, which underflows to an all-zero
    row long before the weights that actually matter are reached.  A final
    division by the compensated sum pins the normalization.

    Parameters
    ----------
    n : int
        Number of trials, n >= 0.
    beta : float
        Success probability in [0, 1].

    Returns
    -------
    numpy.ndarray
        Array of length n+1 with non-negative entries summing to 1.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValueError("n must be a non-negative integer")
    if not (math.isfinite(beta) and 0.0 <= beta <= 1.0):
        raise ValueError("beta must lie in [0, 1]")
    row = np.zeros(n + 1)
    if beta == 0.0:
        row[0] = 1.0
        return row
    if beta == 1.0:
        row[n] = 1.0
        return row
    if n == 0:
        return np.array([1.0])
    k = np.arange(n, dtype=float)
    log_ratio = np.log((n - k) / (k + 1.0)) + (math.log(beta) - math.log1p(-beta))
    log_w = np.concatenate(([0.0], np.cumsum(log_ratio)))
    log_w -= log_w.max()
    row = np.exp(log_w)
    row /= math.fsum(row.tolist())
    return row


@dataclass(frozen=True)
class BinomialWeight:
    """A single binomial weight with its defining parameters kept alongside.

    Attributes
    ----------
    n, k : int
        Trial and success counts, 0 <= k <= n.
    beta : float
        Success probability in [0, 1].
    value : float
        C(n, k) beta^k (1-beta)^(n-k); computed on construction.
    """

    n: int
    k: int
    beta: float
    value: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "value", binomial_weight(self.n, self.k, self.beta))


@dataclass(frozen=True)
class FrequencyLadder:
    """Sideband Rabi frequencies of a trapped ion, indexed by Fock number.

    entries[n] = base_omega * 0.202 * exp(-0.202^2/2) * L^1_n(0.202^2) / sqrt(n+1)

    Attributes
    ----------
    base_omega : float
        Bare coupling frequency the ladder scales linearly with.
    entries : numpy.ndarray
        Frequencies for Fock numbers 0..n_max.
    """

    base_omega: float
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)
        if not np.all(np.isfinite(entries)):
            raise ValueError("ladder entries must be finite")

    def __len__(self) -> int:
        return self.entries.size

    def __getitem__(self, n: int) -> float:
        return float(self.entries[n])


def frequency_ladder(base_omega: float, n_max: int) -> FrequencyLadder:
    """Build the sideband frequency ladder for Fock numbers 0..n_max.

    Parameters
    ----------
    base_omega : float
        Bare coupling frequency; every entry is proportional to it.
    n_max : int
        Largest Fock number, n_max >= 0.

    Returns
    -------
    FrequencyLadder
    """
    if not isinstance(n_max, (int, np.integer)) or n_max < 0:
        raise ValueError("n_max must be a non-negative integer")
    if not (math.isfinite(base_omega) and base_omega > 0):
        raise ValueError("base_omega must be positive and finite")
    x = LAMB_DICKE * LAMB_DICKE
    prefactor = base_omega * LAMB_DICKE * math.exp(-x / 2.0)
    entries = np.array(
        [prefactor * laguerre_L1(n, x) / math.sqrt(n + 1.0) for n in range(n_max + 1)]
    )
    return FrequencyLadder(base_omega=base_omega, entries=entries)

"""Least-squares extraction of decay rates and frequencies from time series.

The central routine fits the exponentially damped oscillation

    y(t) = offset - amplitude * exp(-gamma t) * cos(2 omega t)

to a sampled probability trace with a damped Gauss-Newton iteration (normal
equations solved by ``numpy.linalg.lstsq``, step halving until the cost
decreases).  Amplitude and offset stay fixed at one half unless freed, which
matches curves that oscillate about the midpoint between full and empty
population.

Starting values, when not supplied, come from the data itself: the frequency
from the peak of a Hann-windowed FFT with parabolic interpolation, the rate
from a log-linear regression through the envelope maxima.  The fit is only
trustworthy when the window holds at least four oscillation periods sampled
at twenty-five or more points per period, and when the starting rate is
within a factor of three of the truth and the starting frequency within
twenty percent; the first two are checked here, the last two cannot be.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TimeSeries

__all__ = [
    "FitResult",
    "ExponentFit",
    "fit_damped_sinusoid",
    "fit_ladder_exponent",
    "estimate_frequency_from_crossings",
]

# Relative step below which the iteration counts as stationary.
_XTOL = 1e-14
# Gradient infinity-norm threshold, scaled by the initial cost.
_GTOL = 1e-12


@dataclass(frozen=True)
class FitResult:
    """Outcome of a damped-oscillation fit.

    Attributes
    ----------
    gamma : float
        Fitted decay rate, clamped to >= 0.
    omega_fit : float
        Fitted oscillation frequency (the probability oscillates at twice
        this angular frequency).
    residual_rms : float
        Root-mean-square residual over the fit window.
    window : tuple[float, float]
        Time span (t_lo, t_hi) actually used.
    converged : bool
        True when the iteration met the step or gradient criterion before
        running out of iterations.
    iterations : int
        Gauss-Newton iterations performed.
    amplitude : float
        Oscillation amplitude; one half unless fitted.
    offset : float
        Vertical offset; one half unless fitted.
    """

    gamma: float
    omega_fit: float
    residual_rms: float
    window: tuple[float, float]
    converged: bool
    iterations: int
    amplitude: float = 0.5
    offset: float = 0.5


@dataclass(frozen=True)
class ExponentFit:
    """Power-law exponent fitted to a ladder of decay rates.

    ``ratios[n] = gammas[n] / gammas[0]`` and ``alpha`` is the slope of
    log(ratios) against log(1 + n), regressed through the origin.
    """

    alpha: float
    ratios: np.ndarray
    n_max: int


def _model(theta, t, free_amplitude):
    if free_amplitude:
        gamma, omega, amp, off = theta
    else:
        gamma, omega = theta
        amp = off = 0.5
    with np.errstate(over="ignore"):
        envelope = np.exp(-gamma * t)
    return off - amp * envelope * np.cos(2.0 * omega * t)


def _jacobian(theta, t, free_amplitude):
    if free_amplitude:
        gamma, omega, amp, off = theta
    else:
        gamma, omega = theta
        amp = 0.5
    with np.errstate(over="ignore"):
        envelope = np.exp(-gamma * t)
    cos_term = envelope * np.cos(2.0 * omega * t)
    sin_term = envelope * np.sin(2.0 * omega * t)
    cols = [amp * t * cos_term, 2.0 * amp * t * sin_term]
    if free_amplitude:
        cols.append(-cos_term)
        cols.append(np.ones_like(t))
    return np.column_stack(cols)


def _initial_guess(t: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Estimate (gamma0, omega0) from the trace itself.

    Frequency: magnitude peak of the Hann-windowed FFT of the de-meaned
    signal, refined by parabolic interpolation through the three bins around
    the peak.  The signal oscillates as cos(2 omega t), so the peak frequency
    f (cycles per unit time) maps to omega = pi * f.

    Rate: local maxima of |y - mean| above 1e-6 trace the envelope
    amp * exp(-gamma t); a least-squares line through their logs gives
    -gamma as slope.  Fewer than two usable maxima mean the envelope carries
    no slope information and the guess falls back to zero.
    """
    n = len(y)
    dt_mean = (t[-1] - t[0]) / (n - 1)
    windowed = (y - y.mean()) * np.hanning(n)
    spectrum = np.abs(np.fft.rfft(windowed))
    k = int(np.argmax(spectrum[1:])) + 1
    if 1 <= k < len(spectrum) - 1:
        alpha, beta, gamma_ = spectrum[k - 1], spectrum[k], spectrum[k + 1]
        denom = alpha - 2.0 * beta + gamma_
        shift = 0.5 * (alpha - gamma_) / denom if denom != 0.0 else 0.0
    else:
        shift = 0.0
    freq = (k + shift) / (n * dt_mean)
    omega0 = math.pi * freq

    resid = np.abs(y - y.mean())
    interior = (resid[1:-1] > resid[:-2]) & (resid[1:-1] > resid[2:])
    peaks = np.flatnonzero(interior) + 1
    peaks = peaks[resid[peaks] > 1e-6]
    if len(peaks) >= 2:
        slope = np.polyfit(t[peaks], np.log(resid[peaks]), 1)[0]
        gamma0 = max(-slope, 0.0)
    else:
        gamma0 = 0.0
    return gamma0, omega0


def fit_damped_sinusoid(
    series: TimeSeries,
    init: tuple[float | None, float | None] | None = None,
    window_periods: float | None = 6.0,
    free_amplitude: bool = False,
    max_iterations: int = 100,
) -> FitResult:
    """Fit offset - amplitude * exp(-gamma t) cos(2 omega t) to a trace.

    Parameters
    ----------
    series : TimeSeries
        Sampled probability trace.
    init : (float or None, float or None), optional
        Starting (gamma, omega).  Either entry may be None, in which case it
        is taken from :func:`_initial_guess`.  Convergence is only assured
        for a starting rate within a factor of three of the truth and a
        starting frequency within twenty percent.
    window_periods : float or None
        Restrict the fit to the first ``window_periods`` oscillation periods
        (pi / omega0 each, judged from the starting frequency).  None uses
        the whole series.
    free_amplitude : bool
        Also fit amplitude and offset instead of pinning both at one half.
    max_iterations : int
        Gauss-Newton iteration budget.

    Returns
    -------
    FitResult
        ``converged`` is False when the budget ran out first.

    Raises
    ------
    ValueError
        If the trace is degenerate, or the fit window holds fewer than four
        oscillation periods, or the sampling is coarser than twenty-five
        points per period.
    """
    t_all = series.times
    y_all = series.values
    if float(np.ptp(y_all)) <= 1e-9:
        raise ValueError("trace is constant to within 1e-9; nothing to fit")

    auto = _initial_guess(t_all, y_all)
    gamma0 = auto[0] if init is None or init[0] is None else float(init[0])
    omega0 = auto[1] if init is None or init[1] is None else float(init[1])
    if not (math.isfinite(omega0) and omega0 > 0):
        raise ValueError("starting frequency must be positive and finite")

    period = math.pi / omega0
    if window_periods is not None:
        if window_periods <= 0:
            raise ValueError("window_periods must be positive")
        t_hi = t_all[0] + window_periods * period
        mask = t_all <= t_hi * (1.0 + 1e-12)
        t = t_all[mask]
        y = y_all[mask]
    else:
        t = t_all
        y = y_all

    span = t[-1] - t[0]
    periods_held = span / period
    if periods_held < 4.0 * (1.0 - 1e-9):
        raise ValueError(
            f"fit window holds {periods_held:.2f} oscillation periods; need at least 4"
        )
    density = (len(t) - 1) / periods_held
    if density < 25.0 * (1.0 - 1e-9):
        raise ValueError(
            f"sampling density {density:.1f} points per period; need at least 25"
        )

    theta = np.array(
        [gamma0, omega0, 0.5, 0.5] if free_amplitude else [gamma0, omega0]
    )
    resid = y - _model(theta, t, free_amplitude)
    cost = float(resid @ resid)
    gtol = _GTOL * max(1.0, cost)
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        jac = _jacobian(theta, t, free_amplitude)
        grad_inf = float(np.max(np.abs(jac.T @ resid)))
        if grad_inf <= gtol:
            converged = True
            break
        delta = np.linalg.lstsq(jac, resid, rcond=None)[0]

        step = 1.0
        accepted = False
        while step >= 1e-12:
            trial = theta + step * delta
            trial_resid = y - _model(trial, t, free_amplitude)
            trial_cost = float(trial_resid @ trial_resid)
            if math.isfinite(trial_cost) and trial_cost < cost:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            # No direction of decrease at any step length: stationary point.
            converged = True
            break
        rel_step = float(
            np.max(np.abs(step * delta) / np.maximum(np.abs(theta), 1e-30))
        )
        theta = trial
        resid = trial_resid
        cost = trial_cost
        if rel_step <= _XTOL:
            converged = True
            break

    gamma_fit = max(float(theta[0]), 0.0)
    omega_fit = abs(float(theta[1]))
    amp, off = (float(theta[2]), float(theta[3])) if free_amplitude else (0.5, 0.5)
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult(
        gamma=gamma_fit,
        omega_fit=omega_fit,
        residual_rms=rms,
        window=(float(t[0]), float(t[-1])),
        converged=converged,
        iterations=iterations,
        amplitude=amp,
        offset=off,
    )


def fit_ladder_exponent(gammas) -> ExponentFit:
    """Fit gamma_n / gamma_0 = (1 + n)^alpha to a ladder of decay rates.

    Taking logs turns this into a line through the origin,
    log r_n = alpha * log(1 + n), so alpha is the single-parameter
    least-squares slope  sum(log r_n * log(1 + n)) / sum(log^2(1 + n)).

    Parameters
    ----------
    gammas : array_like
        Decay rates for n = 0, 1, ..., all positive, at least three.

    Returns
    -------
    ExponentFit
    """
    rates = np.asarray(gammas, dtype=float)
    if rates.ndim != 1 or len(rates) < 3:
        raise ValueError("need at least three ladder rates")
    if not np.all(np.isfinite(rates)) or np.any(rates <= 0):
        raise ValueError("ladder rates must be positive and finite")
    ratios = rates / rates[0]
    log_n = np.log1p(np.arange(len(rates), dtype=float))
    log_r = np.log(ratios)
    alpha = float((log_r @ log_n) / (log_n @ log_n))
    return ExponentFit(alpha=alpha, ratios=ratios, n_max=len(rates) - 1)


def estimate_frequency_from_crossings(series: TimeSeries, level: float) -> float:
    """Angular frequency from the spacing of crossings through ``level``.

    A signal oscillating as cos(w t) about ``level`` crosses it every pi / w,
    regardless of any slowly varying envelope or admixed sine of the same
    frequency, so the estimate is pi divided by the mean spacing of
    successive linearly interpolated crossings.  Complements the fitter when
    the curve shape is not a pure damped cosine but the frequency is still
    wanted.

    Parameters
    ----------
    series : TimeSeries
    level : float
        Reference level the signal oscillates about.

    Returns
    -------
    float
        Estimated angular frequency w.

    Raises
    ------
    ValueError
        With fewer than three crossings there is no spacing average to take.
    """
    t = series.times
    d = series.values - level
    crossings = list(t[d == 0.0])
    idx = np.flatnonzero(d[:-1] * d[1:] < 0.0)
    for i in idx:
        crossings.append(t[i] - d[i] * (t[i + 1] - t[i]) / (d[i + 1] - d[i]))
    crossings = np.unique(np.asarray(crossings, dtype=float))
    if len(crossings) < 3:
        raise ValueError("need at least three level crossings to estimate a frequency")
    spacing = float(np.mean(np.diff(crossings)))
    return math.pi / spacing

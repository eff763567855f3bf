import math

import numpy as np
import pytest

from rabidecay import (
    IndistParams,
    build_nested_table,
    closed_form_truncated,
    eid_gamma_prediction,
    make_time_grid,
    p_nested,
    p_one_event,
    rescale_to_coordinate_time,
)

from oracles import nested_reference, one_event_n4_expansion


def test_one_event_matches_explicit_expansion():
    # 20 random tuples against the five-term expansion written out by hand.
    rng = np.random.default_rng(1234)
    for _ in range(20):
        omega = float(rng.uniform(0.3, 2.5))
        dt = float(rng.uniform(0.05, 0.8))
        beta = float(rng.uniform(0.0, 1.0))
        params = IndistParams(omega=omega, dt=dt, beta=max(beta, 1e-6))
        expected = one_event_n4_expansion(omega, dt, max(beta, 1e-6))
        assert p_one_event(params, 4) == pytest.approx(expected, abs=1e-14)


def test_one_event_agrees_with_depth_one_table():
    # Independent code paths: the direct sum and the tabulated recursion.
    params = IndistParams(omega=1.1, dt=0.3, beta=0.9, depth=1)
    table = build_nested_table(params, 12)
    for n in range(13):
        assert p_one_event(params, n) == pytest.approx(
            float(table.prob_ground[1, n]), abs=1e-13
        )


def test_nested_matches_naive_recursion():
    rng = np.random.default_rng(99)
    for _ in range(3):
        omega = float(rng.uniform(0.5, 2.0))
        dt = float(rng.uniform(0.1, 0.6))
        beta = float(rng.uniform(0.3, 0.999))
        for depth in (1, 2):
            params = IndistParams(omega=omega, dt=dt, beta=beta, depth=depth)
            for n in range(7):
                expected = nested_reference(omega, dt, beta, depth, n)
                got, _ = p_nested(params, n)
                assert got == pytest.approx(expected, abs=1e-13)


def test_channel_sum_everywhere():
    params = IndistParams(omega=1.0, dt=0.7, beta=0.995, depth=5)
    table = build_nested_table(params, 40)
    np.testing.assert_allclose(table.prob_ground + table.prob_excited, 1.0, atol=1e-12)


def test_isolated_system_is_undamped():
    # beta = 1: no interference events, both evaluators give sin^2(omega t).
    params = IndistParams(omega=1.3, dt=0.4, beta=1.0, depth=5)
    # The rescaled curve interpolates between event-count nodes, so compare
    # it where the interpolation is exact; the closed form holds everywhere.
    nodes = np.arange(49) * 0.4
    np.testing.assert_allclose(
        rescale_to_coordinate_time(params, nodes), np.sin(1.3 * nodes) ** 2, atol=1e-12
    )
    t = make_time_grid(1.3, 8.0, 40)
    np.testing.assert_allclose(
        closed_form_truncated(params, t), np.sin(1.3 * t) ** 2, atol=1e-12
    )


def test_depth_convergence():
    # sup_t |P^(i) - P^(i-1)| shrinks with i for beta >= 0.99.
    t = make_time_grid(1.0, 10.0, 40)
    curves = []
    for depth in range(6):
        params = IndistParams(omega=1.0, dt=0.7, beta=0.99, depth=depth)
        curves.append(rescale_to_coordinate_time(params, t))
    sups = [float(np.max(np.abs(b - a))) for a, b in zip(curves, curves[1:])]
    assert all(later < earlier for earlier, later in zip(sups, sups[1:]))


def test_monotone_damping_of_peak_amplitudes():
    params = IndistParams(omega=1.0, dt=0.7, beta=0.995, depth=5)
    t = make_time_grid(1.0, 10.0, 80)
    values = rescale_to_coordinate_time(params, t)
    period_samples = 801 // 10
    amplitudes = [
        np.ptp(values[i * period_samples : (i + 1) * period_samples + 1])
        for i in range(10)
    ]
    assert np.all(np.diff(amplitudes) <= 1e-6)


def test_closed_form_tracks_full_model():
    # At depth 1 the closed form stays within 0.02 of the full model over
    # five oscillation periods; at depth 5 the two drift apart (a slow
    # frequency pull accumulates) but stay within 0.08.
    t = make_time_grid(1.0, 5.0, 40)
    approx = closed_form_truncated(IndistParams(omega=1.0, dt=0.05, beta=0.999), t)
    shallow = rescale_to_coordinate_time(
        IndistParams(omega=1.0, dt=0.05, beta=0.999, depth=1), t
    )
    deep = rescale_to_coordinate_time(
        IndistParams(omega=1.0, dt=0.05, beta=0.999, depth=5), t
    )
    assert float(np.max(np.abs(approx - shallow))) <= 0.02
    assert float(np.max(np.abs(approx - deep))) <= 0.08


def test_rescale_hits_table_at_integer_steps():
    params = IndistParams(omega=1.0, dt=0.5, beta=0.95, depth=3)
    table = build_nested_table(params, 10)
    for k in range(11):
        t = k * params.beta * params.dt
        assert rescale_to_coordinate_time(params, t) == pytest.approx(
            float(table.prob_ground[3, k]), abs=1e-14
        )


def test_rescale_interpolates_linearly():
    params = IndistParams(omega=1.0, dt=0.5, beta=0.95, depth=2)
    step = params.beta * params.dt
    lo = rescale_to_coordinate_time(params, 3 * step)
    hi = rescale_to_coordinate_time(params, 4 * step)
    mid = rescale_to_coordinate_time(params, 3.5 * step)
    assert mid == pytest.approx(0.5 * (lo + hi), abs=1e-13)


def test_scaling_prediction_small_dt():
    assert eid_gamma_prediction(0.999, 1.0, 0.01) == pytest.approx(2e-5, rel=1e-12)
    assert eid_gamma_prediction(1.0, 2.0, 0.1) == 0.0
    # Quadratic in the drive frequency.
    assert eid_gamma_prediction(0.99, 2.0, 0.01) == pytest.approx(
        4 * eid_gamma_prediction(0.99, 1.0, 0.01), rel=1e-12
    )
    for bad in [(0.0, 1.0, 0.1), (1.5, 1.0, 0.1), (0.9, -1.0, 0.1), (0.9, 1.0, 0.0)]:
        with pytest.raises(ValueError):
            eid_gamma_prediction(*bad)


def test_closed_form_is_real_and_bounded():
    params = IndistParams(omega=2.0, dt=0.3, beta=0.7)
    values = closed_form_truncated(params, make_time_grid(2.0, 12.0, 40))
    assert values.dtype == np.float64
    assert np.all(values >= -1e-12)
    assert np.all(values <= 1 + 1e-12)


def test_nested_channels_sum_to_one():
    params = IndistParams(omega=0.8, dt=0.4, beta=0.9, depth=4)
    g, e = p_nested(params, 9)
    assert g + e == pytest.approx(1.0, abs=1e-13)


def test_validation_errors():
    with pytest.raises(ValueError):
        IndistParams(omega=1.0, dt=0.1, beta=0.0)
    with pytest.raises(ValueError):
        IndistParams(omega=1.0, dt=0.1, beta=1.2)
    with pytest.raises(ValueError):
        IndistParams(omega=1.0, dt=0.0, beta=0.5)
    with pytest.raises(ValueError):
        IndistParams(omega=-1.0, dt=0.1, beta=0.5)
    with pytest.raises(ValueError):
        IndistParams(omega=1.0, dt=0.1, beta=0.5, depth=-1)
    params = IndistParams(omega=1.0, dt=0.1, beta=0.5)
    with pytest.raises(ValueError):
        p_one_event(params, -1)
    with pytest.raises(ValueError):
        p_nested(params, -2)
    with pytest.raises(ValueError):
        build_nested_table(params, -1)
    with pytest.raises(ValueError):
        rescale_to_coordinate_time(params, -0.1)
    with pytest.raises(ValueError):
        closed_form_truncated(params, [0.0, math.inf])

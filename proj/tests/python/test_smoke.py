import math

import numpy as np
import pytest

import rlsforecast as rf


def test_scalar_rls_matches_closed_form():
    state = rf.init_filter(1, 0.98, 0.01)
    state, y, e = rf.rls_update(state, np.array([1.0]), 1.0)
    assert y == 0.0
    assert e == 1.0
    assert state.weights[0] == pytest.approx(100 / 100.98, rel=1e-12)
    assert state.samples_seen == 1


def test_recursive_agrees_with_batch():
    rng = np.random.default_rng(4)
    x = rng.normal(size=(60, 3))
    d = x @ np.array([0.5, -1.0, 2.0]) + 0.01 * rng.normal(size=60)
    state = rf.init_filter(3, 0.97, 0.01)
    for row, target in zip(x, d):
        state, _, _ = rf.rls_update(state, row, target)
    np.testing.assert_allclose(state.weights, rf.batch_solve(x, d, 0.97, 0.01), rtol=1e-8, atol=1e-10)


def test_prediction_and_forecast_shapes():
    s = rf.synth_ar([0.9], 0.1, 400, seed=1, offset=50.0)
    assert len(s) == 400
    cfg = rf.PredictorConfig(n_coeffs=8, window=3)
    trace = rf.run_prediction(s, cfg)
    assert trace.first_index == 8 - 1 + 3
    assert len(trace) == 400 - trace.first_index
    np.testing.assert_allclose(np.subtract(trace.desired, trace.predicted), trace.error)
    forecast = rf.forecast_future(s, cfg)
    assert [i for i, _ in forecast] == [400, 401, 402]


def test_sweep_and_profiles():
    s = rf.synth_ar([0.9], 0.1, 300, seed=2)
    surface = rf.sweep_surface(s, [4, 8], [1, 2, 3], 250, 299, jobs=2)
    grid = surface.to_list()
    assert len(grid) == 2 and len(grid[0]) == 3
    by_n = rf.profile_by_n(surface)
    assert [k for k, _ in by_n] == [4, 8]
    assert by_n[0][1] == max(grid[0])
    assert surface.cell(8, 2) == grid[1][1]


def test_trade_and_backtest():
    plan = rf.plan_trade([(10, 5.0), (11, 3.0), (12, 4.0), (13, 6.0)])
    assert (plan.buy_index, plan.sell_index) == (11, 13)
    assert rf.plan_trade([(0, 9.0), (1, 8.0)]) is None
    actual = rf.PriceSeries([37.86, 39.0, 41.05], start_index=2476)
    result = rf.backtest(rf.TradePlan(2476, 2478), actual)
    assert f"{result.profit_pct:.2f}" == "8.43"


def test_table_sweep_reference_rows():
    s = rf.synth_ar([0.95], 0.3, 2600, seed=17, offset=40.0)
    rows = rf.table_sweep(s, jobs=2)
    assert [(r.n_coeffs, r.window) for r in rows][0] == (60, 20)
    assert len(rows) == 9
    for r in rows:
        assert r.status in {"traded", "no_trade"}
        if r.status == "traded":
            assert math.isclose(r.result.profit_pct, rf.profit_percent(r.result.buy_price, r.result.sell_price))


def test_errors_carry_kind(tmp_path):
    with pytest.raises(rf.RlsError) as info:
        rf.run_prediction(rf.PriceSeries([1.0, 2.0, 3.0]), rf.PredictorConfig())
    assert info.value.kind == "precondition"
    assert "117" in str(info.value)
    with pytest.raises(rf.RlsError) as info:
        rf.correlation([2.0, 2.0, 2.0], [1.0, 2.0, 3.0])
    assert info.value.kind == "numerical"
    with pytest.raises(rf.RlsError) as info:
        rf.load_csv(tmp_path / "missing.csv")
    assert info.value.kind == "io"
    with pytest.raises(ValueError):
        rf.PriceSeries([1.0, -2.0])


def test_load_csv_by_column_name(tmp_path):
    p = tmp_path / "p.csv"
    p.write_text("date,price\n2000-01-03,10.5\n2000-01-04,11\n")
    s = rf.load_csv(p, column="price", date_column="date")
    assert s.values == [10.5, 11.0]
    assert s.labels == ["2000-01-03", "2000-01-04"]
    assert rf.slice(s, 1, 1).values == [11.0]

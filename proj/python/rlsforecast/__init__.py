"""RLS adaptive FIR price prediction, correlation design sweep and backtesting."""

from ._core import (
    BacktestResult,
    CorrelationSurface,
    FilterState,
    PredictionTrace,
    PredictorConfig,
    PriceSeries,
    RlsError,
    TableRow,
    TradePlan,
    backtest,
    batch_solve,
    correlation,
    forecast_future,
    init_filter,
    load_csv,
    objective,
    plan_trade,
    profile_by_l,
    profile_by_n,
    profit_percent,
    rls_update,
    run_prediction,
    slice,
    sweep_surface,
    synth_ar,
    table_sweep,
)

__all__ = [
    "BacktestResult",
    "CorrelationSurface",
    "FilterState",
    "PredictionTrace",
    "PredictorConfig",
    "PriceSeries",
    "RlsError",
    "TableRow",
    "TradePlan",
    "backtest",
    "batch_solve",
    "correlation",
    "forecast_future",
    "init_filter",
    "load_csv",
    "objective",
    "plan_trade",
    "profile_by_l",
    "profile_by_n",
    "profit_percent",
    "rls_update",
    "run_prediction",
    "slice",
    "sweep_surface",
    "synth_ar",
    "table_sweep",
]

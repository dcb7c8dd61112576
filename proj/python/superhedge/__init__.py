"""Universal portfolios and multilinear superhedging of lookback options."""

from ._core import (
    BestCrpResult,
    BudgetError,
    HorizonResult,
    MultilinearCoefficients,
    ReturnMatrix,
    best_crp,
    best_crp_grid_oracle,
    best_single_trade,
    cover_derivative,
    cover_vertex_value,
    crp_wealth,
    hindsight_hedging_cost,
    horizon_for_tolerance,
    nature_probabilities,
    perfect_buy_and_hold,
    perfect_trader,
    price_direct,
    price_recurrence,
    price_two_stocks,
    prior_cover_ordentlich,
    prior_cover_uniform,
    returns_from_prices,
    run_backtest,
    shtarkov_bound,
    years_needed,
)

__all__ = [
    "BestCrpResult",
    "BudgetError",
    "HorizonResult",
    "MultilinearCoefficients",
    "ReturnMatrix",
    "best_crp",
    "best_crp_grid_oracle",
    "best_single_trade",
    "cover_derivative",
    "cover_vertex_value",
    "crp_wealth",
    "hindsight_hedging_cost",
    "horizon_for_tolerance",
    "nature_probabilities",
    "perfect_buy_and_hold",
    "perfect_trader",
    "price_direct",
    "price_recurrence",
    "price_two_stocks",
    "prior_cover_ordentlich",
    "prior_cover_uniform",
    "returns_from_prices",
    "run_backtest",
    "shtarkov_bound",
    "years_needed",
]

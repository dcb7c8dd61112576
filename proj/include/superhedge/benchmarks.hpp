#pragma once

#include <functional>

#include "superhedge/combinatorics.hpp"
#include "superhedge/market.hpp"

namespace superhedge {

/// The most general derivative: pays evaluate(X) >= 0 at the close of session T.
/// `multiconvex_homogeneous` is caller-asserted and gates the operations whose
/// correctness depends on it (majorants, nature's distribution).
/// `vertex_value_by_type`, when set, gives the closed-form payoff at any Kelly
/// sequence whose index tuple has the given type; it lets hedging costs skip
/// the m^T enumeration.
struct PayoffEvaluator {
    std::size_t horizon = 0;
    std::size_t assets = 0;
    bool multiconvex_homogeneous = false;
    std::function<double(const ReturnMatrix&)> evaluate;
    std::function<double(const TypeVector&)> vertex_value_by_type;
};

/// Outcome of the hindsight best-CRP search.
struct BestCrpResult {
    PortfolioVector maximizer;  // c*
    double value = 0.0;         // D(X) = crp_wealth(maximizer, X)
    std::size_t iterations = 0;
    double gap_bound = 0.0;     // certified relative optimality gap
};

/// Maximizes prod_t <c, x_t> over the simplex with a certified relative gap
/// <= tol.  Multiplicative ascent with over-relaxation; the gap certificate
/// comes from concavity of sum_t log<c, x_t>.
BestCrpResult best_crp(const ReturnMatrix& x, double tol = 1e-10);

/// Max of crp_wealth over the regular simplex lattice with `resolution`
/// points per edge; a lower bound on the true optimum.  m <= 3 only.
double best_crp_grid_oracle(const ReturnMatrix& x, std::size_t resolution);

/// Closed-form value prod_k (n_k/T)^{n_k} of the hindsight-CRP payoff at a
/// Kelly sequence of type n, with the convention 0^0 = 1.
double cover_vertex_value(const TypeVector& n, std::size_t horizon);

/// prod_t max_j x_{tj}.
double perfect_trader(const ReturnMatrix& x);

/// max_j prod_t x_{tj}.
double perfect_buy_and_hold(const ReturnMatrix& x);

/// max over 1 <= s <= t <= T of prices[t] - prices[s] (0 when s = t is best).
/// `prices` are the observations after the initial price.
double best_single_trade(std::span<const double> prices);

/// Final wealth of the best rebalancing rule in hindsight.
double cover_derivative(const ReturnMatrix& x, double tol = 1e-10);

PayoffEvaluator cover_derivative_payoff(std::size_t horizon, std::size_t assets,
                                        double tol = 1e-10);
PayoffEvaluator perfect_trader_payoff(std::size_t horizon, std::size_t assets);
PayoffEvaluator crp_wealth_payoff(std::size_t horizon, PortfolioVector c);
/// Wealth of an arbitrary strategy as a payoff (multilinear, hence flagged).
PayoffEvaluator strategy_wealth_payoff(const TradingStrategy& theta);

}  // namespace superhedge

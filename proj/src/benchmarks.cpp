#include "superhedge/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace superhedge {

namespace {

double log_wealth(const ReturnMatrix& x, std::span<const double> c,
                  std::vector<double>& dots) {
    double f = 0.0;
    for (std::size_t t = 0; t < x.periods(); ++t) {
        const double d = dot(c, x.row(t));
        dots[t] = d;
        if (d <= 0.0) return -std::numeric_limits<double>::infinity();
        f += std::log(d);
    }
    return f;
}

}  // namespace

BestCrpResult best_crp(const ReturnMatrix& x, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("best_crp: tol must be positive");
    const std::size_t T = x.periods();
    const std::size_t m = x.assets();
    if (m == 1)
        return {PortfolioVector::basis(1, 0), crp_wealth(PortfolioVector::basis(1, 0), x), 0, 0.0};

    // Start interior: every row is nonzero, so the objective is finite here
    // and multiplicative updates keep it finite (they never decrease it).
    std::vector<double> c(m, 1.0 / static_cast<double>(m));
    std::vector<double> dots(T), grad(m), candidate(m), cand_dots(T);
    const double gap_cap = std::log1p(tol);

    double f = log_wealth(x, c, dots);
    std::size_t iter = 0;
    double gap_log = std::numeric_limits<double>::infinity();
    const std::size_t max_iter = 200000;

    while (iter < max_iter) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t t = 0; t < T; ++t) {
            const double inv = 1.0 / dots[t];
            const auto row = x.row(t);
            for (std::size_t j = 0; j < m; ++j) grad[j] += row[j] * inv;
        }
        // f(c*) - f(c) <= max_j grad_j - <grad, c>, and <grad, c> = T.
        gap_log = *std::max_element(grad.begin(), grad.end()) - static_cast<double>(T);
        if (gap_log <= gap_cap) break;

        ++iter;
        // Base step c_j <- c_j grad_j / T never decreases f; over-relax while
        // raising the exponent keeps improving.
        double best_f = f;
        std::vector<double> best_c;
        double beta = 1.0;
        for (int trial = 0; trial < 12; ++trial) {
            double sum = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                candidate[j] = c[j] * std::pow(grad[j] / static_cast<double>(T), beta);
                sum += candidate[j];
            }
            if (!(sum > 0.0)) break;
            for (std::size_t j = 0; j < m; ++j) candidate[j] /= sum;
            const double cand_f = log_wealth(x, candidate, cand_dots);
            if (cand_f > best_f) {
                best_f = cand_f;
                best_c = candidate;
                beta *= 2.0;
            } else {
                break;
            }
        }
        if (best_c.empty()) {
            // No strict improvement measurable in floats; accept the base step
            // once, then stop if it changed nothing.
            double sum = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                candidate[j] = c[j] * grad[j] / static_cast<double>(T);
                sum += candidate[j];
            }
            for (std::size_t j = 0; j < m; ++j) candidate[j] /= sum;
            if (candidate == c) break;
            c = candidate;
        } else {
            c = std::move(best_c);
        }
        f = log_wealth(x, c, dots);
    }

    PortfolioVector maximizer = PortfolioVector::normalized(std::move(c));
    const double value = crp_wealth(maximizer, x);
    double rel_gap = std::expm1(std::max(gap_log, 0.0));
    if (!std::isfinite(rel_gap)) rel_gap = std::numeric_limits<double>::max();
    return {std::move(maximizer), value, iter, rel_gap};
}

double best_crp_grid_oracle(const ReturnMatrix& x, std::size_t resolution) {
    const std::size_t m = x.assets();
    if (m > 3) throw budget_error("best_crp_grid_oracle: grid enumeration supports m <= 3");
    if (resolution < 2) throw std::invalid_argument("best_crp_grid_oracle: resolution >= 2 required");
    const std::size_t steps = resolution - 1;
    double best = 0.0;
    std::vector<double> c(m, 0.0);
    auto consider = [&]() {
        const double w = crp_wealth(PortfolioVector::normalized(c), x);
        best = std::max(best, w);
    };
    if (m == 1) {
        c[0] = 1.0;
        consider();
    } else if (m == 2) {
        for (std::size_t i = 0; i <= steps; ++i) {
            c[0] = static_cast<double>(i) / steps;
            c[1] = static_cast<double>(steps - i) / steps;
            consider();
        }
    } else {
        for (std::size_t i = 0; i <= steps; ++i)
            for (std::size_t j = 0; j + i <= steps; ++j) {
                c[0] = static_cast<double>(i) / steps;
                c[1] = static_cast<double>(j) / steps;
                c[2] = static_cast<double>(steps - i - j) / steps;
                consider();
            }
    }
    return best;
}

double cover_vertex_value(const TypeVector& n, std::size_t horizon) {
    if (static_cast<std::size_t>(n.sum()) != horizon)
        throw std::invalid_argument("cover_vertex_value: counts must sum to the horizon");
    double log_v = 0.0;
    for (std::size_t k = 0; k < n.assets(); ++k)
        if (n[k] > 0) log_v += n[k] * std::log(static_cast<double>(n[k]) / horizon);
    return std::exp(log_v);
}

double perfect_trader(const ReturnMatrix& x) {
    std::vector<double> factors(x.periods());
    for (std::size_t t = 0; t < x.periods(); ++t) {
        const auto row = x.row(t);
        factors[t] = *std::max_element(row.begin(), row.end());
    }
    return product_of_factors(factors);
}

double perfect_buy_and_hold(const ReturnMatrix& x) {
    double best = 0.0;
    std::vector<double> factors(x.periods());
    for (std::size_t j = 0; j < x.assets(); ++j) {
        for (std::size_t t = 0; t < x.periods(); ++t) factors[t] = x.at(t, j);
        best = std::max(best, product_of_factors(factors));
    }
    return best;
}

double best_single_trade(std::span<const double> prices) {
    if (prices.empty()) throw std::invalid_argument("best_single_trade: empty price series");
    double best = 0.0;
    double low = prices[0];
    for (double p : prices) {
        low = std::min(low, p);
        best = std::max(best, p - low);
    }
    return best;
}

double cover_derivative(const ReturnMatrix& x, double tol) { return best_crp(x, tol).value; }

PayoffEvaluator cover_derivative_payoff(std::size_t horizon, std::size_t assets, double tol) {
    PayoffEvaluator d;
    d.horizon = horizon;
    d.assets = assets;
    d.multiconvex_homogeneous = true;
    d.evaluate = [tol](const ReturnMatrix& x) { return cover_derivative(x, tol); };
    d.vertex_value_by_type = [horizon](const TypeVector& n) {
        return cover_vertex_value(n, horizon);
    };
    return d;
}

PayoffEvaluator perfect_trader_payoff(std::size_t horizon, std::size_t assets) {
    PayoffEvaluator d;
    d.horizon = horizon;
    d.assets = assets;
    d.multiconvex_homogeneous = true;
    d.evaluate = [](const ReturnMatrix& x) { return perfect_trader(x); };
    d.vertex_value_by_type = [](const TypeVector&) { return 1.0; };
    return d;
}

PayoffEvaluator crp_wealth_payoff(std::size_t horizon, PortfolioVector c) {
    PayoffEvaluator d;
    d.horizon = horizon;
    d.assets = c.assets();
    d.multiconvex_homogeneous = true;
    d.evaluate = [c](const ReturnMatrix& x) { return crp_wealth(c, x); };
    d.vertex_value_by_type = [c](const TypeVector& n) {
        double log_v = 0.0;
        for (std::size_t k = 0; k < n.assets(); ++k) {
            if (n[k] == 0) continue;
            if (c[k] == 0.0) return 0.0;
            log_v += n[k] * std::log(c[k]);
        }
        return std::exp(log_v);
    };
    return d;
}

PayoffEvaluator strategy_wealth_payoff(const TradingStrategy& theta) {
    PayoffEvaluator d;
    d.horizon = theta.horizon();
    d.assets = theta.assets();
    d.multiconvex_homogeneous = true;  // wealth functions are multilinear
    d.evaluate = [theta](const ReturnMatrix& x) { return wealth_of_strategy(theta, x); };
    return d;
}

}  // namespace superhedge

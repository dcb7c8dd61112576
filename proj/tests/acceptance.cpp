// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion carries its tolerance and runtime budget in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "superhedge/backtest.hpp"
#include "superhedge/benchmarks.hpp"
#include "superhedge/game.hpp"
#include "superhedge/market.hpp"
#include "superhedge/multilinear.hpp"
#include "superhedge/pricing.hpp"

using namespace superhedge;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

class Check {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (!detail_.empty()) detail_ += "; ";
            detail_ += what;
        }
    }
    void note(const std::string& what) {
        if (!detail_.empty()) detail_ += "; ";
        detail_ += what;
    }
    Outcome outcome() const { return {pass_, detail_}; }

private:
    bool pass_ = true;
    std::string detail_;
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0x5eed0000u + salt); }

ReturnMatrix random_returns(std::mt19937_64& rng, std::size_t T, std::size_t m, double lo = 0.2,
                            double hi = 3.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> flat(T * m);
    for (double& v : flat) v = u(rng);
    return ReturnMatrix(T, m, std::move(flat));
}

PortfolioVector random_portfolio(std::mt19937_64& rng, std::size_t m) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> w(m);
    for (double& v : w) v = exp1(rng) + 1e-12;
    return PortfolioVector::normalized(std::move(w));
}

TradingStrategy random_strategy(std::mt19937_64& rng, std::size_t T, std::size_t m,
                                bool history_dependent) {
    if (!history_dependent) {
        std::vector<PortfolioVector> per_period;
        per_period.reserve(T);
        for (std::size_t t = 0; t < T; ++t) per_period.push_back(random_portfolio(rng, m));
        return TradingStrategy::memoryless(m, std::move(per_period));
    }
    const PortfolioVector base = random_portfolio(rng, m);
    return TradingStrategy(T, m, [base, m](const ReturnHistory& h) {
        if (h.length() == 0) return base;
        std::vector<double> w(m);
        const auto last = h.row(h.length() - 1);
        for (std::size_t j = 0; j < m; ++j) w[j] = base[j] * (0.5 + last[j]);
        return PortfolioVector::normalized(std::move(w));
    });
}

ReturnMatrix demon_path(std::size_t T) {
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 0; t < T; ++t)
        rows.push_back(t % 2 == 0 ? std::vector<double>{2.0, 1.0} : std::vector<double>{0.5, 1.0});
    return ReturnMatrix::from_rows(rows);
}

Outcome exact_small_prices() {
    Check c;
    for (std::size_t m = 1; m <= 10; ++m) {
        c.require(std::abs(price_direct(1, m) - static_cast<double>(m)) <= 1e-12,
                  "p(1," + std::to_string(m) + ") != " + std::to_string(m));
        c.require(std::abs(price_recurrence(1, m) - static_cast<double>(m)) <= 1e-12,
                  "recurrence p(1," + std::to_string(m) + ") != " + std::to_string(m));
    }
    c.require(std::abs(price_direct(2, 2) - 2.5) <= 1e-12, "p(2,2) != 2.5");
    c.require(std::abs(price_direct(3, 2) - 26.0 / 9) <= 1e-12, "p(3,2) != 26/9");
    return c.outcome();
}

Outcome formula_cross_validation() {
    Check c;
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t T = 1; T <= 15; ++T) {
            const double a = price_direct(T, m);
            const double b = price_recurrence(T, m);
            c.require(std::abs(a - b) <= 1e-10 * std::abs(b),
                      "direct vs recurrence at T=" + std::to_string(T) + " m=" + std::to_string(m));
        }
    const std::vector<double> column = price_recurrence_column(500, 2);
    for (std::size_t T = 1; T <= 500; ++T) {
        const double a = price_two_stocks(T);
        c.require(std::abs(a - column[T - 1]) <= 1e-10 * column[T - 1],
                  "two-stock vs recurrence at T=" + std::to_string(T));
    }
    return c.outcome();
}

Outcome paper_six_point_seven_percent() {
    Check c;
    const double rate = std::log(price_two_stocks(30)) / 30.0;
    c.require(rate >= 0.065 && rate <= 0.069, "rate(30) = " + fmt(rate) + " outside [0.065, 0.069]");
    const HorizonResult res = horizon_for_tolerance(0.067, 2, HorizonMethod::exact_scan);
    c.require(res.horizon == 30, "horizon(0.067, 2, exact) = " + std::to_string(res.horizon) +
                                     ", criterion demands 30 (exact rate(30) = " + fmt(rate) +
                                     " > 0.067; see decisions ledger)");
    return c.outcome();
}

Outcome paper_three_twenty_years() {
    Check c;
    const HorizonResult res = horizon_for_tolerance(0.01, 2, HorizonMethod::exact_scan);
    c.require(res.horizon >= 318 && res.horizon <= 322,
              "horizon(0.01, 2, exact) = " + std::to_string(res.horizon) +
                  ", criterion demands 320 +- 2 (the 320 figure arises from the Shtarkov method, "
                  "which returns " +
                  std::to_string(
                      horizon_for_tolerance(0.01, 2, HorizonMethod::shtarkov_fixed_point).horizon) +
                  "; see decisions ledger)");
    return c.outcome();
}

Outcome paper_six_twenty_one_years() {
    Check c;
    const double years = years_needed(0.01, 2, 252);
    c.require(std::abs(years - 621.0) / 621.0 <= 0.01,
              "years_needed(0.01, 2, 252) = " + fmt(years) + " not within 1% of 621");
    c.note("years = " + fmt(years, 8));
    return c.outcome();
}

Outcome shtarkov_dominance() {
    Check c;
    for (std::size_t m = 2; m <= 5; ++m) {
        const std::vector<double> column = price_recurrence_column(200, m);
        for (std::size_t T = 1; T <= 200; ++T)
            c.require(shtarkov_bound(T, m) >= column[T - 1],
                      "bound < p at T=" + std::to_string(T) + " m=" + std::to_string(m));
    }
    const double exact100 = price_two_stocks(100);
    const double bound100 = shtarkov_bound(100, 2);
    const double log_slack = (std::log(bound100) - std::log(exact100)) / std::log(exact100);
    c.require(log_slack < 0.05,
              "regret-scale slack at T=100 is " + fmt(log_slack) + ", expected < 5%");
    c.note("slack at T=100: " + fmt(100 * log_slack, 3) + "% on log p, " +
           fmt(100 * (bound100 / exact100 - 1), 3) + "% on p");
    return c.outcome();
}

Outcome superhedge_dominance() {
    Check c;
    auto rng = rng_for(7);
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{4, 2}, {6, 2}, {4, 3}};
    for (const auto& [T, m] : shapes) {
        const MultilinearCoefficients prior = prior_cover_ordentlich(T, m);
        const TradingStrategy hedge = replicating_strategy(prior);
        const double p = prior.scale();
        for (int i = 0; i < 200; ++i) {
            const ReturnMatrix x = random_returns(rng, T, m);
            const double lhs = p * wealth_of_strategy(hedge, x);
            const double certified = cover_derivative(x, 1e-11);
            const double oracle = best_crp_grid_oracle(x, m == 2 ? 1001 : 201);
            c.require(lhs >= certified - 1e-9, "dominance fails vs optimizer at (T=" +
                                                   std::to_string(T) + ", m=" + std::to_string(m) +
                                                   ")");
            c.require(lhs >= oracle - 1e-9, "dominance fails vs grid oracle at (T=" +
                                                std::to_string(T) + ", m=" + std::to_string(m) + ")");
        }
        for_each_index_tuple(T, m, [&, T = T, m = m](std::span<const std::size_t> tuple) {
            std::vector<int> counts(m, 0);
            for (std::size_t j : tuple) ++counts[j];
            const double lhs =
                p * wealth_of_strategy(hedge, ReturnMatrix::kelly_sequence(m, tuple));
            const double vertex = cover_vertex_value(TypeVector(counts), T);
            c.require(std::abs(lhs - vertex) <= 1e-9, "vertex equality fails at (T=" +
                                                          std::to_string(T) +
                                                          ", m=" + std::to_string(m) + ")");
        });
    }
    return c.outcome();
}

Outcome game_equilibrium_exactness() {
    Check c;
    auto rng = rng_for(11);
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{5, 2}, {3, 3}};
    for (const auto& [T, m] : shapes) {
        const PayoffEvaluator cover = cover_derivative_payoff(T, m, 1e-12);
        const NatureDistribution dist = nature_distribution(cover);
        const double target = 1.0 / price_direct(T, m);
        for (int i = 0; i < 100; ++i) {
            const TradingStrategy theta = random_strategy(rng, T, m, i % 3 == 0);
            const double e = expected_payoff(theta, dist, cover);
            c.require(std::abs(e - target) <= 1e-12,
                      "expected payoff " + fmt(e, 17) + " != " + fmt(target, 17) + " at (T=" +
                          std::to_string(T) + ", m=" + std::to_string(m) + ")");
        }
    }
    return c.outcome();
}

Outcome vertex_sum_identity() {
    Check c;
    auto rng = rng_for(13);
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{6, 2}, {4, 3}};
    for (const auto& [T, m] : shapes) {
        for (int i = 0; i < 50; ++i) {
            const TradingStrategy theta = random_strategy(rng, T, m, i % 2 == 0);
            double sum = 0.0;
            for_each_index_tuple(T, m, [&, m = m](std::span<const std::size_t> tuple) {
                sum += wealth_of_strategy(theta, ReturnMatrix::kelly_sequence(m, tuple));
            });
            c.require(std::abs(sum - 1.0) <= 1e-10,
                      "vertex sum " + fmt(sum, 17) + " at (T=" + std::to_string(T) +
                          ", m=" + std::to_string(m) + ")");
        }
    }
    return c.outcome();
}

Outcome symmetric_dense_equivalence() {
    Check c;
    auto rng = rng_for(17);
    const std::vector<std::pair<std::size_t, std::size_t>> shapes{{5, 2}, {4, 3}};
    for (const auto& [T, m] : shapes) {
        for (const bool co : {true, false}) {
            const MultilinearCoefficients sym =
                co ? prior_cover_ordentlich(T, m) : prior_cover_uniform(T, m);
            // dense twin: one weight per tuple, read off the type weight
            std::vector<double> weights;
            for_each_index_tuple(T, m, [&, m = m](std::span<const std::size_t> tuple) {
                std::vector<int> counts(m, 0);
                for (std::size_t j : tuple) ++counts[j];
                weights.push_back(std::exp(sym.log_type_weight(counts)));
            });
            const MultilinearCoefficients dense =
                MultilinearCoefficients::dense(T, m, std::move(weights), sym.scale());
            for (int path = 0; path < 20; ++path) {
                const ReturnMatrix x = random_returns(rng, T, m);
                SigmaTable sigma = SigmaTable::initial(m);
                ReturnHistory h(m);
                for (std::size_t t = 0; t < T; ++t) {
                    const auto a = symmetric_portfolio(sym, h, sigma).portfolio;
                    const auto b = replicating_portfolio(dense, h).portfolio;
                    for (std::size_t k = 0; k < m; ++k)
                        c.require(std::abs(a[k] - b[k]) <= 1e-10 * std::max(1.0, std::abs(b[k])),
                                  "engines disagree at prefix " + std::to_string(t) + " of (T=" +
                                      std::to_string(T) + ", m=" + std::to_string(m) + ")");
                    h.append(x.row(t));
                    sigma = sigma.advanced(x.row(t));
                }
            }
        }
    }
    return c.outcome();
}

Outcome shannon_demon_growth() {
    Check c;
    const BestCrpResult res = best_crp(demon_path(30), 1e-12);
    const double growth = std::log(res.value) / 30.0;
    c.require(std::abs(growth - 0.0589) <= 0.0005,
              "per-period growth " + fmt(growth) + " not within 0.0589 +- 0.0005");
    c.require(std::abs(res.maximizer[0] - 0.5) <= 1e-3 && std::abs(res.maximizer[1] - 0.5) <= 1e-3,
              "maximizer (" + fmt(res.maximizer[0]) + ", " + fmt(res.maximizer[1]) +
                  ") not within 1e-3 of (0.5, 0.5)");
    return c.outcome();
}

Outcome backtest_bound() {
    Check c;
    auto rng = rng_for(19);
    std::vector<ReturnMatrix> markets;
    markets.push_back(demon_path(30));
    for (int i = 0; i < 20; ++i) {
        const std::size_t m = 2 + static_cast<std::size_t>(i % 2);
        const std::size_t T = 10 + rng() % 31;
        markets.push_back(random_returns(rng, T, m, 0.3, 2.5));
    }
    // The log p(t,m) bound belongs to the minimum-cost superhedge, i.e. the
    // Cover-Ordentlich prior; the uniform-per-type prior obeys the weaker
    // log C(t+m-1, m-1) bound and is exercised in the unit suite.
    for (const ReturnMatrix& x : markets) {
        const BacktestReport report = run_backtest(x, PriorKind::cover_ordentlich);
        for (const BacktestRow& row : report.rows)
            c.require(row.regret_nats <= row.bound_nats + 1e-9,
                      "regret " + fmt(row.regret_nats) + " exceeds bound " + fmt(row.bound_nats) +
                          " at t=" + std::to_string(row.t));
    }
    return c.outcome();
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"exact-small-prices", 0.001, exact_small_prices},
        {"formula-cross-validation", 10.0, formula_cross_validation},
        {"paper-6.7-percent-at-T30", 1.0, paper_six_point_seven_percent},
        {"paper-320-years", 5.0, paper_three_twenty_years},
        {"paper-621-years-daily", 30.0, paper_six_twenty_one_years},
        {"shtarkov-dominance", 60.0, shtarkov_dominance},
        {"superhedge-dominance", 60.0, superhedge_dominance},
        {"game-equilibrium-exactness", 10.0, game_equilibrium_exactness},
        {"vertex-sum-identity", 10.0, vertex_sum_identity},
        {"symmetric-dense-equivalence", 10.0, symmetric_dense_equivalence},
        {"shannon-demon-growth", 1.0, shannon_demon_growth},
        {"backtest-regret-bound", 60.0, backtest_bound},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > criterion.budget_seconds) {
            outcome.pass = false;
            if (!outcome.detail.empty()) outcome.detail += "; ";
            outcome.detail += "runtime " + fmt(seconds, 3) + "s exceeds budget " +
                              fmt(criterion.budget_seconds, 3) + "s";
        }
        std::printf("[%s] %-28s (%.3fs)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.name.c_str(), seconds, outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        if (!outcome.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}

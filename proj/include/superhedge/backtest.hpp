#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "superhedge/market.hpp"

namespace superhedge {

enum class PriorKind { cover_ordentlich, cover_uniform };

struct BacktestRow {
    std::size_t t = 0;
    double wealth_universal = 1.0;   // W_theta(x^t)
    double best_crp_wealth = 1.0;    // D(x^t), hindsight best CRP on the prefix
    double regret_nats = 0.0;        // log D - log W
    double bound_nats = 0.0;         // log p(t, m)
    double growth_universal = 0.0;   // log(W)/t, nats per period
    double growth_best_crp = 0.0;    // log(D)/t, nats per period
};

struct BacktestReport {
    std::size_t horizon = 0;
    std::size_t assets = 0;
    PriorKind prior = PriorKind::cover_ordentlich;
    std::vector<BacktestRow> rows;
    double final_regret_nats = 0.0;
    double final_bound_nats = 0.0;  // log p(T, m)
};

/// Runs the chosen symmetric-prior replicating strategy over the returns and
/// scores it against the per-prefix hindsight best CRP.
BacktestReport run_backtest(const ReturnMatrix& returns, PriorKind prior, double tol = 1e-10);

/// CSV with columns t,W_universal,D_hindsight,regret_nats,bound_nats.
void write_backtest_csv(std::ostream& out, const BacktestReport& report);
void write_backtest_csv_file(const std::string& path, const BacktestReport& report);

/// JSON summary object (keys documented in the README).
std::string backtest_summary_json(const BacktestReport& report);

/// Figure data emitters; each writes one CSV into `directory`.
std::string write_regret_figure(const std::string& directory);
std::string write_shtarkov_figure(const std::string& directory);
std::string write_years_figure(const std::string& directory);

}  // namespace superhedge

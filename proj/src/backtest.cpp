#include "superhedge/backtest.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "superhedge/benchmarks.hpp"
#include "superhedge/csv.hpp"
#include "superhedge/multilinear.hpp"
#include "superhedge/pricing.hpp"

namespace superhedge {

namespace {

const char* prior_name(PriorKind prior) {
    return prior == PriorKind::cover_ordentlich ? "cover-ordentlich" : "uniform-per-type";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    return out;
}

}  // namespace

BacktestReport run_backtest(const ReturnMatrix& returns, PriorKind prior, double tol) {
    const std::size_t T = returns.periods();
    const std::size_t m = returns.assets();
    const MultilinearCoefficients alpha = prior == PriorKind::cover_ordentlich
                                              ? prior_cover_ordentlich(T, m)
                                              : prior_cover_uniform(T, m);
    const std::vector<double> prices = price_recurrence_column(T, m);

    BacktestReport report;
    report.horizon = T;
    report.assets = m;
    report.prior = prior;
    report.rows.reserve(T);

    SigmaTable sigma = SigmaTable::initial(m);
    ReturnHistory history(m);
    double wealth = 1.0;
    double log_wealth = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        const PortfolioVector theta = symmetric_portfolio(alpha, history, sigma).portfolio;
        const double factor = dot(theta.weights(), returns.row(t));
        wealth *= factor;
        log_wealth += std::log(factor);
        history.append(returns.row(t));
        sigma = sigma.advanced(returns.row(t));

        const BestCrpResult best = best_crp(returns.prefix(t + 1), tol);
        BacktestRow row;
        row.t = t + 1;
        row.wealth_universal = wealth;
        row.best_crp_wealth = best.value;
        row.regret_nats = std::log(best.value) - log_wealth;
        row.bound_nats = std::log(prices[t]);
        row.growth_universal = log_wealth / row.t;
        row.growth_best_crp = std::log(best.value) / row.t;
        report.rows.push_back(row);
    }
    report.final_regret_nats = report.rows.back().regret_nats;
    report.final_bound_nats = report.rows.back().bound_nats;
    return report;
}

void write_backtest_csv(std::ostream& out, const BacktestReport& report) {
    out << "t,W_universal,D_hindsight,regret_nats,bound_nats\n";
    for (const BacktestRow& row : report.rows) {
        out << row.t << ',' << format_significant(row.wealth_universal, 12) << ','
            << format_significant(row.best_crp_wealth, 12) << ','
            << format_significant(row.regret_nats, 12) << ','
            << format_significant(row.bound_nats, 12) << '\n';
    }
}

void write_backtest_csv_file(const std::string& path, const BacktestReport& report) {
    auto out = open_out(path);
    write_backtest_csv(out, report);
}

std::string backtest_summary_json(const BacktestReport& report) {
    const BacktestRow& last = report.rows.back();
    nlohmann::json j{
        {"horizon", report.horizon},
        {"assets", report.assets},
        {"prior", prior_name(report.prior)},
        {"final_wealth_universal", last.wealth_universal},
        {"final_best_crp_wealth", last.best_crp_wealth},
        {"final_regret_nats", report.final_regret_nats},
        {"bound_nats", report.final_bound_nats},
        {"final_growth_universal", last.growth_universal},
        {"final_growth_best_crp", last.growth_best_crp},
        {"regret_within_bound", report.final_regret_nats <= report.final_bound_nats + 1e-9},
    };
    return j.dump(2);
}

std::string write_regret_figure(const std::string& directory) {
    const std::string path = (std::filesystem::path(directory) / "regret.csv").string();
    auto out = open_out(path);
    out << "T,m,rate_nats,rate_percent\n";
    std::vector<std::size_t> horizons;
    for (std::size_t t = 1; t <= 100; ++t) horizons.push_back(t);
    for (double x = 100.0; x < 1000.0;) {  // log-spaced beyond 100
        x *= 1.1;
        const auto t = static_cast<std::size_t>(std::min(x, 1000.0));
        if (t != horizons.back()) horizons.push_back(t);
    }
    for (std::size_t m = 2; m <= 5; ++m) {
        const std::vector<double> prices = price_recurrence_column(horizons.back(), m);
        for (std::size_t t : horizons) {
            const double rate = std::log(prices[t - 1]) / static_cast<double>(t);
            out << t << ',' << m << ',' << format_significant(rate, 12) << ','
                << format_significant(100.0 * rate, 12) << '\n';
        }
    }
    return path;
}

std::string write_shtarkov_figure(const std::string& directory) {
    const std::string path = (std::filesystem::path(directory) / "shtarkov.csv").string();
    auto out = open_out(path);
    out << "T,exact,bound,ratio\n";
    for (std::size_t t = 1; t <= 500; ++t) {
        const double exact = price_two_stocks(t);
        const double bound = shtarkov_bound(t, 2);
        out << t << ',' << format_significant(exact, 12) << ',' << format_significant(bound, 12)
            << ',' << format_significant(bound / exact, 12) << '\n';
    }
    return path;
}

std::string write_years_figure(const std::string& directory) {
    const std::string path = (std::filesystem::path(directory) / "years.csv").string();
    auto out = open_out(path);
    out << "f,horizon_periods,years,method\n";
    const double eps = 0.01;
    for (double f : {1.0, 2.0, 4.0, 12.0, 52.0, 252.0}) {
        const HorizonResult res =
            horizon_for_tolerance(eps / f, 2, HorizonMethod::shtarkov_fixed_point);
        out << format_significant(f, 12) << ',' << res.horizon << ','
            << format_significant(static_cast<double>(res.horizon) / f, 12) << ",shtarkov\n";
    }
    return path;
}

}  // namespace superhedge

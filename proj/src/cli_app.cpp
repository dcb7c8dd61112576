#include "superhedge/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "superhedge/backtest.hpp"
#include "superhedge/csv.hpp"
#include "superhedge/market.hpp"
#include "superhedge/pricing.hpp"

namespace superhedge {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

void print_price(std::ostream& out, const std::string& label, double value, std::size_t horizon) {
    out << label << " = " << format_significant(value, 12)
        << "  log/T = " << format_significant(std::log(value) / static_cast<double>(horizon), 12)
        << " nats/period\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Universal portfolios and multilinear superhedging of lookback options"};
    app.require_subcommand(1);

    // price T m --method {direct|recurrence|two-stock|shtarkov}
    std::size_t price_T = 0, price_m = 0;
    std::string price_method = "direct";
    auto* price = app.add_subcommand("price", "Superhedging price p(T,m) of the hindsight-CRP payoff");
    price->add_option("T", price_T, "horizon (trading sessions)")->required();
    price->add_option("m", price_m, "number of stocks")->required();
    price->add_option("--method", price_method, "direct|recurrence|two-stock|shtarkov")
        ->check(CLI::IsMember({"direct", "recurrence", "two-stock", "shtarkov"}));

    // horizon eps m [--method] [--freq f]
    double horizon_eps = 0.0;
    std::size_t horizon_m = 0;
    std::string horizon_method = "exact";
    double horizon_freq = 0.0;
    auto* horizon = app.add_subcommand("horizon", "Smallest horizon with log(p(T,m))/T <= eps");
    horizon->add_option("eps", horizon_eps, "growth-rate tolerance, nats/period")->required();
    horizon->add_option("m", horizon_m, "number of stocks")->required();
    horizon->add_option("--method", horizon_method, "exact|shtarkov")
        ->check(CLI::IsMember({"exact", "shtarkov"}));
    horizon->add_option("--freq", horizon_freq, "rebalancings per year; prints years needed");

    // backtest prices.csv --prior {co|uniform} --out report.csv
    std::string backtest_csv;
    std::string backtest_prior = "co";
    std::string backtest_out;
    auto* backtest = app.add_subcommand("backtest", "Universal-portfolio backtest over a price CSV");
    backtest->add_option("prices", backtest_csv, "price CSV (see README for the layout)")->required();
    backtest->add_option("--prior", backtest_prior, "co|uniform")
        ->check(CLI::IsMember({"co", "uniform"}));
    backtest->add_option("--out", backtest_out, "report CSV path")->required();

    // figures --which {regret|shtarkov|years} --out dir
    std::string figures_which;
    std::string figures_dir;
    auto* figures = app.add_subcommand("figures", "Emit figure data files");
    figures->add_option("--which", figures_which, "regret|shtarkov|years")
        ->required()
        ->check(CLI::IsMember({"regret", "shtarkov", "years"}));
    figures->add_option("--out", figures_dir, "output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (price->parsed()) {
            if (price_T < 1 || price_m < 1) {
                err << "error: T >= 1 and m >= 1 required\n";
                return kExitInput;
            }
            if (price_method == "direct") {
                print_price(out, "p(T,m) [direct]", price_direct(price_T, price_m), price_T);
            } else if (price_method == "recurrence") {
                print_price(out, "p(T,m) [recurrence]", price_recurrence(price_T, price_m), price_T);
            } else if (price_method == "two-stock") {
                if (price_m != 2) {
                    err << "error: --method two-stock requires m = 2\n";
                    return kExitInput;
                }
                print_price(out, "p(T,2) [two-stock]", price_two_stocks(price_T), price_T);
            } else {
                print_price(out, "bound(T,m) [shtarkov]", shtarkov_bound(price_T, price_m), price_T);
            }
            return kExitOk;
        }

        if (horizon->parsed()) {
            const HorizonMethod method = horizon_method == "exact"
                                             ? HorizonMethod::exact_scan
                                             : HorizonMethod::shtarkov_fixed_point;
            if (horizon_freq > 0.0) {
                const double years = years_needed(horizon_eps, horizon_m, horizon_freq);
                out << "years_needed(eps=" << format_significant(horizon_eps, 12)
                    << ", m=" << horizon_m << ", f=" << format_significant(horizon_freq, 12)
                    << ") = " << format_significant(years, 12) << " years\n";
                return kExitOk;
            }
            const HorizonResult res = horizon_for_tolerance(horizon_eps, horizon_m, method);
            out << "T_eps = " << res.horizon
                << "  achieved_rate = " << format_significant(res.achieved_rate, 12)
                << " nats/period  method = "
                << (res.method == HorizonMethod::exact_scan ? "exact_scan" : "shtarkov_fixed_point")
                << "\n";
            return kExitOk;
        }

        if (backtest->parsed()) {
            const PriceTable table = read_price_csv_file(backtest_csv);
            const ReturnMatrix returns = returns_from_prices(table);
            const PriorKind prior = backtest_prior == "co" ? PriorKind::cover_ordentlich
                                                           : PriorKind::cover_uniform;
            const BacktestReport report = run_backtest(returns, prior);
            write_backtest_csv_file(backtest_out, report);
            out << backtest_summary_json(report) << "\n";
            return kExitOk;
        }

        if (figures->parsed()) {
            std::string path;
            if (figures_which == "regret")
                path = write_regret_figure(figures_dir);
            else if (figures_which == "shtarkov")
                path = write_shtarkov_figure(figures_dir);
            else
                path = write_years_figure(figures_dir);
            out << "wrote " << path << "\n";
            return kExitOk;
        }
    } catch (const budget_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace superhedge

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "superhedge/backtest.hpp"
#include "superhedge/benchmarks.hpp"
#include "superhedge/game.hpp"
#include "superhedge/market.hpp"
#include "superhedge/multilinear.hpp"
#include "superhedge/pricing.hpp"

namespace py = pybind11;
using namespace superhedge;

namespace {

ReturnMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    return ReturnMatrix::from_rows(rows);
}

ReturnHistory history_from_rows(std::size_t assets, const std::vector<std::vector<double>>& rows) {
    ReturnHistory h(assets);
    for (const auto& row : rows) h.append(row);
    return h;
}

std::vector<double> weights_of(const PortfolioVector& p) {
    return {p.weights().begin(), p.weights().end()};
}

HorizonMethod method_from_name(const std::string& name) {
    if (name == "exact") return HorizonMethod::exact_scan;
    if (name == "shtarkov") return HorizonMethod::shtarkov_fixed_point;
    throw std::invalid_argument("method must be 'exact' or 'shtarkov'");
}

PriorKind prior_from_name(const std::string& name) {
    if (name == "co") return PriorKind::cover_ordentlich;
    if (name == "uniform") return PriorKind::cover_uniform;
    throw std::invalid_argument("prior must be 'co' or 'uniform'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Universal portfolios and multilinear superhedging of lookback options";

    py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);

    py::class_<ReturnMatrix>(m, "ReturnMatrix")
        .def(py::init(&matrix_from_rows), py::arg("rows"))
        .def_property_readonly("periods", &ReturnMatrix::periods)
        .def_property_readonly("assets", &ReturnMatrix::assets)
        .def("row",
             [](const ReturnMatrix& x, std::size_t t) {
                 const auto r = x.row(t);
                 return std::vector<double>(r.begin(), r.end());
             })
        .def("prefix", &ReturnMatrix::prefix)
        .def_static("all_ones", &ReturnMatrix::all_ones)
        .def_static("kelly_sequence", [](std::size_t assets, const std::vector<std::size_t>& tuple) {
            return ReturnMatrix::kelly_sequence(assets, tuple);
        });

    py::class_<BestCrpResult>(m, "BestCrpResult")
        .def_property_readonly("maximizer",
                               [](const BestCrpResult& r) { return weights_of(r.maximizer); })
        .def_readonly("value", &BestCrpResult::value)
        .def_readonly("iterations", &BestCrpResult::iterations)
        .def_readonly("gap_bound", &BestCrpResult::gap_bound);

    py::class_<MultilinearCoefficients>(m, "MultilinearCoefficients")
        .def_property_readonly("horizon", &MultilinearCoefficients::horizon)
        .def_property_readonly("assets", &MultilinearCoefficients::assets)
        .def_property_readonly("scale", &MultilinearCoefficients::scale)
        .def("wealth", &wealth_of_coefficients, py::arg("returns"))
        .def(
            "portfolio",
            [](const MultilinearCoefficients& alpha, const std::vector<std::vector<double>>& prefix) {
                const auto decision =
                    replicating_portfolio(alpha, history_from_rows(alpha.assets(), prefix));
                return weights_of(decision.portfolio);
            },
            py::arg("prefix"),
            "Replicating-strategy portfolio after the given history prefix");

    py::class_<HorizonResult>(m, "HorizonResult")
        .def_readonly("horizon", &HorizonResult::horizon)
        .def_readonly("achieved_rate", &HorizonResult::achieved_rate)
        .def_property_readonly("method", [](const HorizonResult& r) {
            return r.method == HorizonMethod::exact_scan ? "exact" : "shtarkov";
        });

    m.def(
        "crp_wealth",
        [](const std::vector<double>& c, const ReturnMatrix& x) {
            return crp_wealth(PortfolioVector(c), x);
        },
        py::arg("weights"), py::arg("returns"));
    m.def("best_crp", &best_crp, py::arg("returns"), py::arg("tol") = 1e-10);
    m.def("best_crp_grid_oracle", &best_crp_grid_oracle, py::arg("returns"), py::arg("resolution"));
    m.def("cover_derivative", &cover_derivative, py::arg("returns"), py::arg("tol") = 1e-10);
    m.def(
        "cover_vertex_value",
        [](const std::vector<int>& counts, std::size_t horizon) {
            return cover_vertex_value(TypeVector(counts), horizon);
        },
        py::arg("counts"), py::arg("horizon"));
    m.def("perfect_trader", &perfect_trader, py::arg("returns"));
    m.def("perfect_buy_and_hold", &perfect_buy_and_hold, py::arg("returns"));
    m.def(
        "best_single_trade",
        [](const std::vector<double>& prices) { return best_single_trade(prices); },
        py::arg("prices"));

    m.def("price_direct", &price_direct, py::arg("horizon"), py::arg("assets"));
    m.def("price_recurrence", &price_recurrence, py::arg("horizon"), py::arg("assets"));
    m.def("price_two_stocks", &price_two_stocks, py::arg("horizon"));
    m.def("shtarkov_bound", &shtarkov_bound, py::arg("horizon"), py::arg("assets"));
    m.def(
        "horizon_for_tolerance",
        [](double eps, std::size_t assets, const std::string& method) {
            return horizon_for_tolerance(eps, assets, method_from_name(method));
        },
        py::arg("eps"), py::arg("assets"), py::arg("method") = "exact");
    m.def("years_needed", &years_needed, py::arg("eps"), py::arg("assets"), py::arg("frequency"));

    m.def("prior_cover_ordentlich", &prior_cover_ordentlich, py::arg("horizon"), py::arg("assets"));
    m.def("prior_cover_uniform", &prior_cover_uniform, py::arg("horizon"), py::arg("assets"));

    m.def(
        "hindsight_hedging_cost",
        [](std::size_t horizon, std::size_t assets) {
            return hedging_cost(cover_derivative_payoff(horizon, assets));
        },
        py::arg("horizon"), py::arg("assets"),
        "Superhedging price of the hindsight-CRP payoff via vertex summation");
    m.def(
        "nature_probabilities",
        [](std::size_t horizon, std::size_t assets) {
            const auto dist = nature_distribution(cover_derivative_payoff(horizon, assets));
            const auto probs = dist.probabilities();
            return std::vector<double>(probs.begin(), probs.end());
        },
        py::arg("horizon"), py::arg("assets"),
        "Nature's equilibrium probabilities over Kelly sequences, odometer order");

    m.def(
        "returns_from_prices",
        [](const std::vector<double>& initial, const std::vector<std::vector<double>>& prices,
           const std::vector<std::vector<double>>& dividends) {
            return returns_from_prices(PriceTable(initial, prices, dividends));
        },
        py::arg("initial"), py::arg("prices"),
        py::arg("dividends") = std::vector<std::vector<double>>{});

    m.def(
        "run_backtest",
        [](const ReturnMatrix& returns, const std::string& prior) {
            const BacktestReport report = run_backtest(returns, prior_from_name(prior));
            py::list rows;
            for (const BacktestRow& row : report.rows) {
                py::dict d;
                d["t"] = row.t;
                d["wealth_universal"] = row.wealth_universal;
                d["best_crp_wealth"] = row.best_crp_wealth;
                d["regret_nats"] = row.regret_nats;
                d["bound_nats"] = row.bound_nats;
                d["growth_universal"] = row.growth_universal;
                d["growth_best_crp"] = row.growth_best_crp;
                rows.append(d);
            }
            py::dict summary;
            summary["horizon"] = report.horizon;
            summary["assets"] = report.assets;
            summary["prior"] = prior;
            summary["final_regret_nats"] = report.final_regret_nats;
            summary["bound_nats"] = report.final_bound_nats;
            py::dict out;
            out["rows"] = rows;
            out["summary"] = summary;
            return out;
        },
        py::arg("returns"), py::arg("prior") = "co");
}

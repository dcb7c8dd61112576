#include "superhedge/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace superhedge {

namespace {

constexpr std::int64_t kTypeBudget = 10'000'000;
constexpr std::size_t kExactScanBudgetTwoStocks = 200'000;  // per-evaluation O(T)
constexpr double kRecurrenceWorkBudget = 2e9;               // ~ m T^2 terms
constexpr std::size_t kFixedPointCap = 100'000'000;

void check_shape(std::size_t horizon, std::size_t assets) {
    if (horizon < 1 || assets < 1)
        throw std::invalid_argument("pricing: horizon >= 1 and assets >= 1 required");
}

// log of C(T,n) (n/T)^n ((T-n)/T)^{T-n}, the weight of splitting T sessions
// n / T-n between two groups
double log_split_term(std::size_t T, std::size_t n, const LogFactorialTable& table) {
    double lt = table.log_choose(T, n);
    if (n > 0) lt += n * std::log(static_cast<double>(n) / T);
    if (n < T) lt += (T - n) * std::log(static_cast<double>(T - n) / T);
    return lt;
}

double price_two_stocks_impl(std::size_t T, const LogFactorialTable& table) {
    // Folded form: symmetric terms counted twice, plus the central term for even T.
    const std::size_t half = (T + 1) / 2;  // ceil(T/2)
    double sum = 0.0;
    for (std::size_t j = 0; j < half; ++j) sum += std::exp(log_split_term(T, j, table));
    sum *= 2.0;
    if (T % 2 == 0)
        sum += std::exp(table.log_choose(T, T / 2) - static_cast<double>(T) * std::log(2.0));
    return sum;
}

// Extends recurrence levels so that column[level][s] = p(s, level+1) exists for
// all s <= horizon.  levels[0] is the m = 1 boundary (all ones).
void extend_recurrence(std::vector<std::vector<double>>& levels, std::size_t horizon,
                       std::size_t assets, LogFactorialTable& table) {
    table.ensure(horizon);
    if (levels.empty()) levels.emplace_back();
    for (std::size_t s = levels[0].size(); s < horizon; ++s) levels[0].push_back(1.0);
    for (std::size_t level = 1; level < assets; ++level) {
        if (levels.size() <= level) levels.emplace_back();
        auto& cur = levels[level];
        const auto& prev = levels[level - 1];
        for (std::size_t s = cur.size() + 1; s <= horizon; ++s) {
            if (s == 1) {
                cur.push_back(static_cast<double>(level + 1));
                continue;
            }
            double acc = 1.0;
            for (std::size_t n = 0; n < s; ++n)
                acc += std::exp(log_split_term(s, n, table)) * prev[s - n - 1];
            cur.push_back(acc);
        }
    }
}

double bound_rate(std::size_t T, std::size_t assets) {
    return std::log(shtarkov_bound(T, assets)) / static_cast<double>(T);
}

}  // namespace

double price_direct(std::size_t horizon, std::size_t assets) {
    check_shape(horizon, assets);
    TypeSpace space(static_cast<int>(horizon), static_cast<int>(assets));
    if (space.size() > kTypeBudget)
        throw budget_error("price_direct: type-class budget exceeded; use price_recurrence");
    LogFactorialTable table(horizon);
    const double log_T = std::log(static_cast<double>(horizon));
    double sum = 0.0;
    space.for_each([&](std::span<const int> counts) {
        double lt = table.log_multinomial(horizon, counts);
        for (int n : counts)
            if (n > 0) lt += n * (table.log_n(static_cast<std::size_t>(n)) - log_T);
        sum += std::exp(lt);
    });
    return sum;
}

std::vector<double> price_recurrence_column(std::size_t horizon, std::size_t assets) {
    check_shape(horizon, assets);
    if (static_cast<double>(assets) * horizon * horizon > kRecurrenceWorkBudget)
        throw budget_error("price_recurrence: work budget exceeded; use shtarkov_bound");
    LogFactorialTable table(horizon);
    std::vector<std::vector<double>> levels;
    extend_recurrence(levels, horizon, assets, table);
    return levels[assets - 1];
}

double price_recurrence(std::size_t horizon, std::size_t assets) {
    return price_recurrence_column(horizon, assets).back();
}

double price_two_stocks(std::size_t horizon) {
    check_shape(horizon, 2);
    LogFactorialTable table(horizon);
    return price_two_stocks_impl(horizon, table);
}

double shtarkov_coefficient(std::size_t assets, std::size_t j) {
    if (j < 1 || j > assets) throw std::invalid_argument("shtarkov_coefficient: 1 <= j <= m");
    LogFactorialTable table(assets);
    const double log_a = 0.5 * std::log(M_PI) + table.log_choose(assets, j) -
                         std::lgamma(static_cast<double>(j) / 2.0) -
                         (static_cast<double>(j) - 1.0) / 2.0 * std::log(2.0);
    return std::exp(log_a);
}

double shtarkov_bound(std::size_t horizon, std::size_t assets) {
    check_shape(horizon, assets);
    double sum = 0.0;
    const double log_T = std::log(static_cast<double>(horizon));
    for (std::size_t j = 1; j <= assets; ++j)
        sum += shtarkov_coefficient(assets, j) *
               std::exp((static_cast<double>(j) - 1.0) / 2.0 * log_T);
    return sum;
}

HorizonResult horizon_for_tolerance(double eps, std::size_t assets, HorizonMethod method) {
    if (!(eps > 0.0)) throw std::invalid_argument("horizon_for_tolerance: eps must be positive");
    check_shape(1, assets);

    if (method == HorizonMethod::exact_scan) {
        if (assets == 1) return {1, 0.0, method};  // p(T,1) = 1
        LogFactorialTable table(64);
        if (assets == 2) {
            for (std::size_t T = 1; T <= kExactScanBudgetTwoStocks; ++T) {
                table.ensure(T);
                const double rate = std::log(price_two_stocks_impl(T, table)) / T;
                if (rate <= eps) return {T, rate, method};
            }
            throw budget_error(
                "horizon_for_tolerance: exact scan budget exceeded; use the Shtarkov method");
        }
        std::vector<std::vector<double>> levels;
        for (std::size_t T = 1;; ++T) {
            if (static_cast<double>(assets) * T * T > kRecurrenceWorkBudget)
                throw budget_error(
                    "horizon_for_tolerance: exact scan budget exceeded; use the Shtarkov method");
            table.ensure(T);
            extend_recurrence(levels, T, assets, table);
            const double rate = std::log(levels[assets - 1][T - 1]) / T;
            if (rate <= eps) return {T, rate, method};
        }
    }

    // Fixed-point iteration T <- g(T) = (1/eps) log(bound(T)), then integer
    // refinement; log(bound(T))/T is decreasing in T, so the local scan finds
    // the smallest conforming horizon.
    double t_cur = 1.0;
    for (std::size_t it = 0; it < kFixedPointCap; ++it) {
        double sum = 0.0;
        for (std::size_t j = 1; j <= assets; ++j)
            sum += shtarkov_coefficient(assets, j) *
                   std::pow(t_cur, (static_cast<double>(j) - 1.0) / 2.0);
        const double t_next = std::log(sum) / eps;
        if (std::abs(t_next - t_cur) < 0.5) {
            t_cur = t_next;
            break;
        }
        t_cur = t_next;
    }
    std::size_t T = static_cast<std::size_t>(std::max(1.0, std::ceil(t_cur)));
    while (T > 1 && bound_rate(T - 1, assets) <= eps) --T;
    while (bound_rate(T, assets) > eps) {
        if (T >= kFixedPointCap)
            throw budget_error("horizon_for_tolerance: fixed-point refinement cap exceeded");
        ++T;
    }
    return {T, bound_rate(T, assets), HorizonMethod::shtarkov_fixed_point};
}

double years_needed(double eps, std::size_t assets, double rebalances_per_year) {
    if (!(rebalances_per_year >= 1.0))
        throw std::invalid_argument("years_needed: frequency must be >= 1");
    const double eps_per_period = eps / rebalances_per_year;
    // Cheap prediction decides whether the exact scan fits its budget.
    const HorizonResult predicted =
        horizon_for_tolerance(eps_per_period, assets, HorizonMethod::shtarkov_fixed_point);
    const bool exact_feasible =
        (assets == 1) ||
        (assets == 2 && predicted.horizon <= 20'000) ||
        (assets >= 3 && static_cast<double>(assets) * predicted.horizon * predicted.horizon <=
                            kRecurrenceWorkBudget / 4);
    const HorizonResult chosen =
        exact_feasible ? horizon_for_tolerance(eps_per_period, assets, HorizonMethod::exact_scan)
                       : predicted;
    return static_cast<double>(chosen.horizon) / rebalances_per_year;
}

}  // namespace superhedge

#include "superhedge/game.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "superhedge/multilinear.hpp"

namespace superhedge {

namespace {

constexpr std::int64_t kTupleBudget = 10'000'000;

double vertex_payoff(const PayoffEvaluator& payoff, std::span<const std::size_t> tuple) {
    if (payoff.vertex_value_by_type) {
        std::vector<int> counts(payoff.assets, 0);
        for (std::size_t j : tuple) ++counts[j];
        return payoff.vertex_value_by_type(TypeVector(std::move(counts)));
    }
    return payoff.evaluate(ReturnMatrix::kelly_sequence(payoff.assets, tuple));
}

}  // namespace

NatureDistribution::NatureDistribution(std::size_t horizon, std::size_t assets,
                                       std::vector<double> probabilities)
    : horizon_(horizon), assets_(assets), probabilities_(std::move(probabilities)) {
    const std::int64_t n = index_tuple_count(horizon_, assets_, kTupleBudget);
    if (n < 0 || probabilities_.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("NatureDistribution: one probability per Kelly sequence");
    double sum = 0.0;
    for (double p : probabilities_) {
        if (!(p >= 0.0)) throw std::invalid_argument("NatureDistribution: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("NatureDistribution: probabilities must sum to 1 within 1e-12");
}

PathSet::PathSet(std::vector<ReturnMatrix> paths) : paths_(std::move(paths)) {
    if (paths_.empty()) throw std::invalid_argument("PathSet: at least one path required");
    for (const auto& x : paths_)
        if (x.periods() != paths_.front().periods() || x.assets() != paths_.front().assets())
            throw std::invalid_argument("PathSet: all paths must share one (T, m) shape");
}

double lower_value(const PayoffEvaluator& payoff) { return 1.0 / hedging_cost(payoff); }

double payoff_ratio(const TradingStrategy& theta, const ReturnMatrix& x,
                    const PayoffEvaluator& payoff) {
    const double d = payoff.evaluate(x);
    if (!(d > 0.0))
        throw std::invalid_argument("payoff_ratio: D(X) = 0, the payoff kernel is undefined");
    return wealth_of_strategy(theta, x) / d;
}

double upper_value_ratio(const ReturnMatrix& x, const PayoffEvaluator& payoff) {
    const double d = payoff.evaluate(x);
    if (!(d > 0.0))
        throw std::invalid_argument("upper_value_ratio: D(X) = 0, the ratio is undefined");
    return perfect_trader(x) / d;
}

NatureDistribution nature_distribution(const PayoffEvaluator& payoff) {
    if (!payoff.multiconvex_homogeneous)
        throw std::invalid_argument(
            "nature_distribution: payoff must be flagged multiconvex and homogeneous");
    const std::int64_t n = index_tuple_count(payoff.horizon, payoff.assets, kTupleBudget);
    if (n < 0) throw budget_error("nature_distribution: m^T support budget exceeded");
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(n));
    double total = 0.0;
    for_each_index_tuple(payoff.horizon, payoff.assets, [&](std::span<const std::size_t> tuple) {
        const double v = vertex_payoff(payoff, tuple);
        probs.push_back(v);
        total += v;
    });
    if (!(total > 0.0))
        throw std::invalid_argument("nature_distribution: payoff vanishes on every Kelly sequence");
    for (double& p : probs) p /= total;
    return NatureDistribution(payoff.horizon, payoff.assets, std::move(probs));
}

double expected_payoff(const TradingStrategy& theta, const NatureDistribution& dist,
                       const PayoffEvaluator& payoff) {
    if (dist.horizon() != payoff.horizon || dist.assets() != payoff.assets)
        throw std::invalid_argument("expected_payoff: distribution and payoff shapes differ");
    double expectation = 0.0;
    std::size_t idx = 0;
    const auto probs = dist.probabilities();
    for_each_index_tuple(payoff.horizon, payoff.assets, [&](std::span<const std::size_t> tuple) {
        const double p = probs[idx++];
        if (p <= 0.0) return;
        const double d = vertex_payoff(payoff, tuple);
        const double w =
            wealth_of_strategy(theta, ReturnMatrix::kelly_sequence(payoff.assets, tuple));
        expectation += p * (w / d);
    });
    return expectation;
}

double co_utility(const WealthFunction& wealth, const PayoffEvaluator& payoff,
                  const PathSet& paths) {
    double worst = std::numeric_limits<double>::infinity();
    for (const ReturnMatrix& x : paths.paths()) {
        const double d = payoff.evaluate(x);
        if (!(d > 0.0))
            throw std::invalid_argument("co_utility: D = 0 on a path in the set");
        worst = std::min(worst, wealth(x) / d);
    }
    return worst;
}

double co_utility(const TradingStrategy& theta, const PayoffEvaluator& payoff,
                  const PathSet& paths) {
    return co_utility([&theta](const ReturnMatrix& x) { return wealth_of_strategy(theta, x); },
                      payoff, paths);
}

}  // namespace superhedge

#pragma once

#include <functional>
#include <vector>

#include "superhedge/benchmarks.hpp"
#include "superhedge/market.hpp"

namespace superhedge {

/// Nature's equilibrium mixed strategy: probabilities over the m^T Kelly
/// sequences, in odometer order (first period most significant).
class NatureDistribution {
public:
    NatureDistribution(std::size_t horizon, std::size_t assets, std::vector<double> probabilities);

    std::size_t horizon() const { return horizon_; }
    std::size_t assets() const { return assets_; }
    std::span<const double> probabilities() const { return probabilities_; }

private:
    std::size_t horizon_, assets_;
    std::vector<double> probabilities_;
};

/// A finite set of return paths sharing one (T, m) shape.
class PathSet {
public:
    explicit PathSet(std::vector<ReturnMatrix> paths);
    std::span<const ReturnMatrix> paths() const { return paths_; }

private:
    std::vector<ReturnMatrix> paths_;
};

/// Pure-strategy lower value of the game: 1 / p*[D].
double lower_value(const PayoffEvaluator& payoff);

/// Payoff kernel W_theta(X) / D(X); D(X) must be positive.
double payoff_ratio(const TradingStrategy& theta, const ReturnMatrix& x,
                    const PayoffEvaluator& payoff);

/// Perfect-trader payoff over D(X); its infimum over X is the upper value.
double upper_value_ratio(const ReturnMatrix& x, const PayoffEvaluator& payoff);

/// P{X = (e_{j_1},...,e_{j_T})} = D(e_{j_1},...,e_{j_T}) / p*[D].
NatureDistribution nature_distribution(const PayoffEvaluator& payoff);

/// Exact enumeration of E[W_theta(X)/D(X)] under nature's randomization;
/// equals 1/p*[D] for every strategy.
double expected_payoff(const TradingStrategy& theta, const NatureDistribution& dist,
                       const PayoffEvaluator& payoff);

using WealthFunction = std::function<double(const ReturnMatrix&)>;

/// U[W] = min over the path set of W(X)/D(X).
double co_utility(const WealthFunction& wealth, const PayoffEvaluator& payoff,
                  const PathSet& paths);
double co_utility(const TradingStrategy& theta, const PayoffEvaluator& payoff,
                  const PathSet& paths);

}  // namespace superhedge

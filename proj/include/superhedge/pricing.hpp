#pragma once

#include <cstddef>
#include <vector>

#include "superhedge/combinatorics.hpp"

namespace superhedge {

/// Superhedging price of the hindsight-CRP payoff as the direct sum over type
/// classes: p(T,m) = sum over |n| = T of multinomial(T;n) prod_k (n_k/T)^{n_k}.
double price_direct(std::size_t horizon, std::size_t assets);

/// Same price via the recurrence
/// p(T,m) = 1 + sum_{n=0}^{T-1} C(T,n) (n/T)^n ((T-n)/T)^{T-n} p(T-n, m-1)
/// with boundaries p(1,m) = m and p(T,1) = 1.
double price_recurrence(std::size_t horizon, std::size_t assets);

/// Column p(1..horizon, assets) from the recurrence, one value per horizon.
std::vector<double> price_recurrence_column(std::size_t horizon, std::size_t assets);

/// O(T) folded binomial sum for m = 2, evaluated in log space.
double price_two_stocks(std::size_t horizon);

/// Closed-form upper bound sum_j a_j T^{(j-1)/2} with
/// a_j = sqrt(pi) C(m,j) / (Gamma(j/2) 2^{(j-1)/2}).
double shtarkov_bound(std::size_t horizon, std::size_t assets);

/// Coefficient a_j of the bound.
double shtarkov_coefficient(std::size_t assets, std::size_t j);

enum class HorizonMethod { exact_scan, shtarkov_fixed_point };

struct HorizonResult {
    std::size_t horizon = 0;      // T_eps
    double achieved_rate = 0.0;   // log(price or bound)/T at the returned horizon, nats/period
    HorizonMethod method = HorizonMethod::exact_scan;
};

/// Smallest horizon with log(p(T,m))/T <= eps (exact_scan), or the same
/// search against the Shtarkov bound seeded by the fixed-point iteration
/// T <- (1/eps) log(sum_j a_j T^{(j-1)/2}) (shtarkov_fixed_point).
HorizonResult horizon_for_tolerance(double eps, std::size_t assets, HorizonMethod method);

/// Years to get within `eps` (nats/year) of the hindsight-optimized
/// compound-annual growth rate when rebalancing f times per year:
/// (1/f) T_{eps/f}.  Uses the exact scan when the predicted horizon is small
/// enough and the Shtarkov method above that budget.
double years_needed(double eps, std::size_t assets, double rebalances_per_year);

}  // namespace superhedge

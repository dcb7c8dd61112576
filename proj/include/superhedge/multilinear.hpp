#pragma once

#include <optional>
#include <vector>

#include "superhedge/benchmarks.hpp"
#include "superhedge/combinatorics.hpp"
#include "superhedge/market.hpp"

namespace superhedge {

/// Nonnegative weights over index tuples (dense) or over type classes
/// (symmetric), together with the deposit scale p*[D].
///
/// Dense weights are stored plainly, indexed with the first period most
/// significant, and must sum to 1 within 1e-10.  Symmetric weights are stored
/// in log space (log alpha(n), -inf for 0), aligned with TypeSpace(T, m)
/// ranks, and must satisfy sum over types of multinomial(T; n) alpha(n) = 1
/// within 1e-10.
class MultilinearCoefficients {
public:
    enum class Mode { dense, symmetric };

    static MultilinearCoefficients dense(std::size_t horizon, std::size_t assets,
                                         std::vector<double> weights, double scale);
    static MultilinearCoefficients symmetric(std::size_t horizon, std::size_t assets,
                                             std::vector<double> log_type_weights, double scale);

    Mode mode() const { return mode_; }
    std::size_t horizon() const { return horizon_; }
    std::size_t assets() const { return assets_; }
    double scale() const { return scale_; }

    const std::vector<double>& dense_weights() const;
    double dense_weight(std::span<const std::size_t> tuple) const;

    const TypeSpace& type_space() const;
    double log_type_weight(std::span<const int> counts) const;
    double type_weight(const TypeVector& n) const;
    const std::vector<double>& log_type_weights() const;

private:
    MultilinearCoefficients() = default;

    Mode mode_ = Mode::dense;
    std::size_t horizon_ = 0, assets_ = 0;
    double scale_ = 1.0;
    std::vector<double> dense_;                 // dense mode
    std::optional<TypeSpace> space_;            // symmetric mode
    std::vector<double> log_type_;              // symmetric mode
};

/// sigma(N; x^t): sum over index tuples of type N of the extremal wealths
/// x_{1 j_1} ... x_{t j_t}, for all N with |N| = t.  Stored in log space;
/// stage 0 is the single empty type with sigma = 1.
class SigmaTable {
public:
    static SigmaTable initial(std::size_t assets);

    std::size_t stage() const { return stage_; }
    std::size_t assets() const { return assets_; }
    const TypeSpace& space() const { return space_; }

    double log_value(std::span<const int> counts) const;
    double value(const TypeVector& n) const;
    std::span<const double> log_values() const { return log_values_; }

    /// Table at stage t+1 from the stage-t table and the next return row.
    SigmaTable advanced(std::span<const double> row) const;

private:
    SigmaTable(std::size_t assets, std::size_t stage, TypeSpace space,
               std::vector<double> log_values);

    std::size_t assets_, stage_;
    TypeSpace space_;
    std::vector<double> log_values_;
};

/// Free-function spelling of SigmaTable::advanced.
SigmaTable sigma_advance(const SigmaTable& table, std::span<const double> row);

/// A portfolio decision, flagged degenerate when every surviving extremal
/// wealth is zero (the uniform portfolio is returned in that case).
struct ReplicationDecision {
    PortfolioVector portfolio;
    bool degenerate = false;
};

/// Superhedging price lower bound: the sum of D over all m^T Kelly sequences.
/// Uses the closed-form vertex values by type when the payoff provides them.
double hedging_cost(const PayoffEvaluator& payoff);

/// Dense coefficients alpha(j^T) = D(e_{j_1},...,e_{j_T}) / p*[D] with scale
/// p*[D]; for multiconvex homogeneous D this is the unique minimum-cost
/// multilinear superhedge.
MultilinearCoefficients majorant_coefficients(const PayoffEvaluator& payoff);

/// Portfolio of the replicating strategy after the given history.
ReplicationDecision replicating_portfolio(const MultilinearCoefficients& alpha,
                                          const ReturnHistory& prefix);

/// sum over tuples of alpha(j^T) x_{1 j_1} ... x_{T j_T}
/// (symmetric mode: sum over types of alpha(n) sigma(n; x^T)).
double wealth_of_coefficients(const MultilinearCoefficients& alpha, const ReturnMatrix& x);

/// Candidate replicating portfolio read off the payoff itself.  May be an
/// extraneous solution unless the payoff is verified hedgeable.
PortfolioVector replicate_from_payoff(const PayoffEvaluator& payoff, const ReturnHistory& prefix);

struct HedgeabilityCheck {
    bool hedgeable = false;
    double max_residual = 0.0;
};

/// Tests the telescoping replication identity on each sample path.
HedgeabilityCheck verify_hedgeable(const PayoffEvaluator& payoff,
                                   std::span<const ReturnMatrix> samples, double tol);

/// Symmetric prior alpha(n) proportional to n_1^{n_1} ... n_m^{n_m}; with its
/// scale p(T,m) this is the minimum-cost superhedge of the hindsight-CRP
/// payoff.
MultilinearCoefficients prior_cover_ordentlich(std::size_t horizon, std::size_t assets);

/// Symmetric prior placing an equal amount of money on each type class.
MultilinearCoefficients prior_cover_uniform(std::size_t horizon, std::size_t assets);

/// Marginal weight alpha_{tk}(N): sum over compositions n of T-t-1 of
/// multinomial(T-t-1; n) alpha(N + n + e_k).
double marginal_alpha(const MultilinearCoefficients& alpha, std::size_t t, std::size_t k,
                      const TypeVector& n);

/// theta_k proportional to sum over |N| = t of alpha_{tk}(N) sigma(N; x^t),
/// normalized by max-shifted exponentiation.
ReplicationDecision symmetric_portfolio(const MultilinearCoefficients& alpha,
                                        const ReturnHistory& prefix, const SigmaTable& sigma);

/// Trading strategy driven by the coefficients (dense or symmetric engine).
TradingStrategy replicating_strategy(const MultilinearCoefficients& alpha);

}  // namespace superhedge

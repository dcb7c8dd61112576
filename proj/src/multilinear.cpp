#include "superhedge/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "superhedge/pricing.hpp"

namespace superhedge {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::int64_t kDenseBudget = 10'000'000;   // m^T cap for dense tuples
constexpr std::int64_t kTypeBudget = 10'000'000;    // type-class cap
constexpr int kSymmetricMaxAssets = 6;

double payoff_at_vertex(const PayoffEvaluator& payoff, std::span<const std::size_t> tuple) {
    if (payoff.vertex_value_by_type) {
        std::vector<int> counts(payoff.assets, 0);
        for (std::size_t j : tuple) ++counts[j];
        return payoff.vertex_value_by_type(TypeVector(std::move(counts)));
    }
    return payoff.evaluate(ReturnMatrix::kelly_sequence(payoff.assets, tuple));
}

void require_shape(const PayoffEvaluator& payoff) {
    if (payoff.horizon < 1 || payoff.assets < 1 || !payoff.evaluate)
        throw std::invalid_argument("PayoffEvaluator: horizon, assets and evaluate are required");
}

}  // namespace

MultilinearCoefficients MultilinearCoefficients::dense(std::size_t horizon, std::size_t assets,
                                                       std::vector<double> weights, double scale) {
    if (horizon < 1 || assets < 1)
        throw std::invalid_argument("MultilinearCoefficients: bad shape");
    if (!(scale > 0.0)) throw std::invalid_argument("MultilinearCoefficients: scale must be positive");
    const std::int64_t tuples = index_tuple_count(horizon, assets, kDenseBudget);
    if (tuples < 0)
        throw budget_error("dense coefficients exceed the m^T tuple budget; use the symmetric mode");
    if (weights.size() != static_cast<std::size_t>(tuples))
        throw std::invalid_argument("MultilinearCoefficients: weight count is not m^T");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("MultilinearCoefficients: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("MultilinearCoefficients: dense weights must sum to 1 within 1e-10");
    MultilinearCoefficients out;
    out.mode_ = Mode::dense;
    out.horizon_ = horizon;
    out.assets_ = assets;
    out.scale_ = scale;
    out.dense_ = std::move(weights);
    return out;
}

MultilinearCoefficients MultilinearCoefficients::symmetric(std::size_t horizon, std::size_t assets,
                                                           std::vector<double> log_type_weights,
                                                           double scale) {
    if (horizon < 1 || assets < 1)
        throw std::invalid_argument("MultilinearCoefficients: bad shape");
    if (assets > kSymmetricMaxAssets)
        throw budget_error("symmetric coefficients support at most 6 assets");
    if (!(scale > 0.0)) throw std::invalid_argument("MultilinearCoefficients: scale must be positive");
    TypeSpace space(static_cast<int>(horizon), static_cast<int>(assets));
    if (space.size() > kTypeBudget)
        throw budget_error("symmetric coefficients exceed the type-class budget");
    if (log_type_weights.size() != static_cast<std::size_t>(space.size()))
        throw std::invalid_argument("MultilinearCoefficients: one weight per type class required");
    LogFactorialTable table(horizon);
    double sum = 0.0;
    std::int64_t r = 0;
    space.for_each([&](std::span<const int> counts) {
        const double lw = log_type_weights[static_cast<std::size_t>(r++)];
        if (std::isnan(lw) || lw > 1e300)
            throw std::invalid_argument("MultilinearCoefficients: bad log weight");
        sum += std::exp(table.log_multinomial(horizon, counts) + lw);
    });
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument(
            "MultilinearCoefficients: multinomial-weighted type weights must sum to 1 within 1e-10");
    MultilinearCoefficients out;
    out.mode_ = Mode::symmetric;
    out.horizon_ = horizon;
    out.assets_ = assets;
    out.scale_ = scale;
    out.space_.emplace(std::move(space));
    out.log_type_ = std::move(log_type_weights);
    return out;
}

const std::vector<double>& MultilinearCoefficients::dense_weights() const {
    if (mode_ != Mode::dense) throw std::logic_error("coefficients are not dense");
    return dense_;
}

double MultilinearCoefficients::dense_weight(std::span<const std::size_t> tuple) const {
    if (mode_ != Mode::dense) throw std::logic_error("coefficients are not dense");
    std::size_t idx = 0;
    for (std::size_t j : tuple) idx = idx * assets_ + j;
    return dense_[idx];
}

const TypeSpace& MultilinearCoefficients::type_space() const {
    if (mode_ != Mode::symmetric) throw std::logic_error("coefficients are not symmetric");
    return *space_;
}

double MultilinearCoefficients::log_type_weight(std::span<const int> counts) const {
    if (mode_ != Mode::symmetric) throw std::logic_error("coefficients are not symmetric");
    return log_type_[static_cast<std::size_t>(space_->rank(counts))];
}

double MultilinearCoefficients::type_weight(const TypeVector& n) const {
    return std::exp(log_type_weight(n.counts()));
}

const std::vector<double>& MultilinearCoefficients::log_type_weights() const {
    if (mode_ != Mode::symmetric) throw std::logic_error("coefficients are not symmetric");
    return log_type_;
}

SigmaTable::SigmaTable(std::size_t assets, std::size_t stage, TypeSpace space,
                       std::vector<double> log_values)
    : assets_(assets), stage_(stage), space_(std::move(space)), log_values_(std::move(log_values)) {}

SigmaTable SigmaTable::initial(std::size_t assets) {
    if (assets < 1) throw std::invalid_argument("SigmaTable: m >= 1 required");
    return SigmaTable(assets, 0, TypeSpace(0, static_cast<int>(assets)), {0.0});
}

double SigmaTable::log_value(std::span<const int> counts) const {
    return log_values_[static_cast<std::size_t>(space_.rank(counts))];
}

double SigmaTable::value(const TypeVector& n) const {
    if (n.assets() != assets_ || static_cast<std::size_t>(n.sum()) != stage_)
        throw std::invalid_argument("SigmaTable::value: type does not belong to this stage");
    return std::exp(log_value(n.counts()));
}

SigmaTable SigmaTable::advanced(std::span<const double> row) const {
    if (row.size() != assets_) throw std::invalid_argument("sigma_advance: wrong row width");
    std::vector<double> log_row(assets_);
    for (std::size_t k = 0; k < assets_; ++k)
        log_row[k] = row[k] > 0.0 ? std::log(row[k]) : kNegInf;

    TypeSpace next(static_cast<int>(stage_) + 1, static_cast<int>(assets_));
    std::vector<double> out(static_cast<std::size_t>(next.size()), kNegInf);
    std::vector<int> reduced(assets_);
    std::int64_t r = 0;
    next.for_each([&](std::span<const int> counts) {
        LogSumAccumulator acc;
        std::copy(counts.begin(), counts.end(), reduced.begin());
        for (std::size_t k = 0; k < assets_; ++k) {
            if (counts[k] == 0 || log_row[k] == kNegInf) continue;
            reduced[k] -= 1;
            acc.add(log_values_[static_cast<std::size_t>(space_.rank(reduced))] + log_row[k]);
            reduced[k] += 1;
        }
        out[static_cast<std::size_t>(r++)] = acc.log_value();
    });
    return SigmaTable(assets_, stage_ + 1, std::move(next), std::move(out));
}

SigmaTable sigma_advance(const SigmaTable& table, std::span<const double> row) {
    return table.advanced(row);
}

double hedging_cost(const PayoffEvaluator& payoff) {
    require_shape(payoff);
    const std::size_t T = payoff.horizon;
    const std::size_t m = payoff.assets;
    if (payoff.vertex_value_by_type) {
        TypeSpace space(static_cast<int>(T), static_cast<int>(m));
        if (space.size() > kTypeBudget)
            throw budget_error("hedging_cost: type-class enumeration budget exceeded");
        LogFactorialTable table(T);
        double sum = 0.0;
        space.for_each([&](std::span<const int> counts) {
            const double v =
                payoff.vertex_value_by_type(TypeVector(std::vector<int>(counts.begin(), counts.end())));
            if (v > 0.0) sum += std::exp(table.log_multinomial(T, counts) + std::log(v));
        });
        return sum;
    }
    if (index_tuple_count(T, m, kDenseBudget) < 0)
        throw budget_error(
            "hedging_cost: m^T vertex enumeration budget exceeded and the payoff has no "
            "closed-form vertex values");
    double sum = 0.0;
    for_each_index_tuple(T, m, [&](std::span<const std::size_t> tuple) {
        sum += payoff.evaluate(ReturnMatrix::kelly_sequence(m, tuple));
    });
    return sum;
}

MultilinearCoefficients majorant_coefficients(const PayoffEvaluator& payoff) {
    require_shape(payoff);
    if (!payoff.multiconvex_homogeneous)
        throw std::invalid_argument(
            "majorant_coefficients: payoff must be flagged multiconvex and homogeneous, "
            "otherwise dominance is not guaranteed");
    const std::size_t T = payoff.horizon;
    const std::size_t m = payoff.assets;
    const std::int64_t tuples = index_tuple_count(T, m, kDenseBudget);
    if (tuples < 0)
        throw budget_error("majorant_coefficients: m^T tuple budget exceeded; use a symmetric prior");
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(tuples));
    double total = 0.0;
    for_each_index_tuple(T, m, [&](std::span<const std::size_t> tuple) {
        const double v = payoff_at_vertex(payoff, tuple);
        if (!(v >= 0.0)) throw std::invalid_argument("majorant_coefficients: negative vertex value");
        weights.push_back(v);
        total += v;
    });
    if (!(total > 0.0))
        throw std::invalid_argument("majorant_coefficients: payoff vanishes on every Kelly sequence");
    for (double& w : weights) w /= total;
    return MultilinearCoefficients::dense(T, m, std::move(weights), total);
}

ReplicationDecision replicating_portfolio(const MultilinearCoefficients& alpha,
                                          const ReturnHistory& prefix) {
    const std::size_t t = prefix.length();
    const std::size_t T = alpha.horizon();
    const std::size_t m = alpha.assets();
    if (prefix.assets() != m)
        throw std::invalid_argument("replicating_portfolio: asset count mismatch");
    if (t >= T) throw std::invalid_argument("replicating_portfolio: history length must be < horizon");

    if (alpha.mode() == MultilinearCoefficients::Mode::symmetric) {
        SigmaTable sigma = SigmaTable::initial(m);
        for (std::size_t s = 0; s < t; ++s) sigma = sigma.advanced(prefix.row(s));
        return symmetric_portfolio(alpha, prefix, sigma);
    }

    std::vector<double> numerators(m, 0.0);
    const auto& weights = alpha.dense_weights();
    std::size_t idx = 0;
    for_each_index_tuple(T, m, [&](std::span<const std::size_t> tuple) {
        const double w = weights[idx++];
        if (w > 0.0) {
            double prod = w;
            for (std::size_t s = 0; s < t; ++s) prod *= prefix.at(s, tuple[s]);
            numerators[tuple[t]] += prod;
        }
    });
    const double denom = std::accumulate(numerators.begin(), numerators.end(), 0.0);
    if (!(denom > 0.0)) return {PortfolioVector::uniform(m), true};
    return {PortfolioVector::normalized(std::move(numerators)), false};
}

double wealth_of_coefficients(const MultilinearCoefficients& alpha, const ReturnMatrix& x) {
    const std::size_t T = alpha.horizon();
    const std::size_t m = alpha.assets();
    if (x.assets() != m || x.periods() != T)
        throw std::invalid_argument("wealth_of_coefficients: dimension mismatch");
    if (alpha.mode() == MultilinearCoefficients::Mode::symmetric) {
        SigmaTable sigma = SigmaTable::initial(m);
        for (std::size_t s = 0; s < T; ++s) sigma = sigma.advanced(x.row(s));
        LogSumAccumulator acc;
        const auto& log_w = alpha.log_type_weights();
        const auto sig = sigma.log_values();
        for (std::size_t i = 0; i < log_w.size(); ++i) acc.add(log_w[i] + sig[i]);
        return acc.value();
    }
    const auto& weights = alpha.dense_weights();
    double sum = 0.0;
    std::size_t idx = 0;
    for_each_index_tuple(T, m, [&](std::span<const std::size_t> tuple) {
        const double w = weights[idx++];
        if (w > 0.0) {
            double prod = w;
            for (std::size_t s = 0; s < T; ++s) prod *= x.at(s, tuple[s]);
            sum += prod;
        }
    });
    return sum;
}

PortfolioVector replicate_from_payoff(const PayoffEvaluator& payoff, const ReturnHistory& prefix) {
    require_shape(payoff);
    const std::size_t T = payoff.horizon;
    const std::size_t m = payoff.assets;
    const std::size_t t = prefix.length();
    if (prefix.assets() != m)
        throw std::invalid_argument("replicate_from_payoff: asset count mismatch");
    if (t >= T) throw std::invalid_argument("replicate_from_payoff: history length must be < horizon");
    if (index_tuple_count(T - t, m, kDenseBudget) < 0)
        throw budget_error("replicate_from_payoff: vertex enumeration budget exceeded");

    std::vector<std::vector<double>> rows;
    rows.reserve(T);
    for (std::size_t s = 0; s < t; ++s) {
        const auto r = prefix.row(s);
        rows.emplace_back(r.begin(), r.end());
    }
    std::vector<double> numerators(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> unit(m, 0.0);
        unit[k] = 1.0;
        rows.push_back(unit);
        double sum = 0.0;
        for_each_index_tuple(T - t - 1, m, [&](std::span<const std::size_t> suffix) {
            auto path = rows;
            for (std::size_t j : suffix) {
                std::vector<double> e(m, 0.0);
                e[j] = 1.0;
                path.push_back(std::move(e));
            }
            sum += payoff.evaluate(ReturnMatrix::from_rows(path));
        });
        numerators[k] = sum;
        rows.pop_back();
    }
    const double denom = std::accumulate(numerators.begin(), numerators.end(), 0.0);
    if (!(denom > 0.0))
        throw std::invalid_argument("replicate_from_payoff: zero denominator at this history");
    return PortfolioVector::normalized(std::move(numerators));
}

HedgeabilityCheck verify_hedgeable(const PayoffEvaluator& payoff,
                                   std::span<const ReturnMatrix> samples, double tol) {
    require_shape(payoff);
    const std::size_t T = payoff.horizon;
    const std::size_t m = payoff.assets;
    const double p_star = hedging_cost(payoff);
    double worst = 0.0;
    for (const ReturnMatrix& x : samples) {
        if (x.periods() != T || x.assets() != m)
            throw std::invalid_argument("verify_hedgeable: sample dimension mismatch");
        // Left side: product over t of the one-step growth implied by vertex
        // extensions of the prefix; right side: D(x) / sum of all vertex values.
        double lhs = 1.0;
        std::vector<std::vector<double>> rows;
        for (std::size_t t = 1; t <= T; ++t) {
            double num = 0.0, den = 0.0;
            for_each_index_tuple(T - t + 1, m, [&](std::span<const std::size_t> suffix) {
                auto path = rows;
                for (std::size_t j : suffix) {
                    std::vector<double> e(m, 0.0);
                    e[j] = 1.0;
                    path.push_back(std::move(e));
                }
                const double v = payoff.evaluate(ReturnMatrix::from_rows(path));
                den += v;
                num += v * x.at(t - 1, suffix[0]);
            });
            if (den <= 0.0) {
                lhs = std::numeric_limits<double>::quiet_NaN();
                break;
            }
            lhs *= num / den;
            const auto r = x.row(t - 1);
            rows.emplace_back(r.begin(), r.end());
        }
        const double rhs = payoff.evaluate(x) / p_star;
        const double residual =
            std::abs(lhs - rhs) / std::max({std::abs(rhs), std::abs(lhs), 1e-300});
        worst = std::max(worst, residual);
    }
    return {worst <= tol, worst};
}

MultilinearCoefficients prior_cover_ordentlich(std::size_t horizon, std::size_t assets) {
    if (horizon < 1 || assets < 1) throw std::invalid_argument("prior_cover_ordentlich: bad shape");
    const double p = price_direct(horizon, assets);
    TypeSpace space(static_cast<int>(horizon), static_cast<int>(assets));
    std::vector<double> log_w;
    log_w.reserve(static_cast<std::size_t>(space.size()));
    const double log_p = std::log(p);
    space.for_each([&](std::span<const int> counts) {
        double lw = -log_p;
        for (int n : counts)
            if (n > 0) lw += n * std::log(static_cast<double>(n) / horizon);
        log_w.push_back(lw);
    });
    return MultilinearCoefficients::symmetric(horizon, assets, std::move(log_w), p);
}

MultilinearCoefficients prior_cover_uniform(std::size_t horizon, std::size_t assets) {
    if (horizon < 1 || assets < 1) throw std::invalid_argument("prior_cover_uniform: bad shape");
    TypeSpace space(static_cast<int>(horizon), static_cast<int>(assets));
    LogFactorialTable table(horizon + assets);
    const double log_classes =
        table.log_choose(horizon + assets - 1, assets - 1);
    std::vector<double> log_w;
    log_w.reserve(static_cast<std::size_t>(space.size()));
    space.for_each([&](std::span<const int> counts) {
        log_w.push_back(-log_classes - table.log_multinomial(horizon, counts));
    });
    return MultilinearCoefficients::symmetric(horizon, assets, std::move(log_w), 1.0);
}

double marginal_alpha(const MultilinearCoefficients& alpha, std::size_t t, std::size_t k,
                      const TypeVector& n) {
    if (alpha.mode() != MultilinearCoefficients::Mode::symmetric)
        throw std::invalid_argument("marginal_alpha: symmetric coefficients required");
    const std::size_t T = alpha.horizon();
    const std::size_t m = alpha.assets();
    if (t + 1 > T) throw std::invalid_argument("marginal_alpha: t must be <= T-1");
    if (k >= m || n.assets() != m || static_cast<std::size_t>(n.sum()) != t)
        throw std::invalid_argument("marginal_alpha: type does not match stage t");

    const std::size_t remaining = T - t - 1;
    TypeSpace comp(static_cast<int>(remaining), static_cast<int>(m));
    LogFactorialTable table(T);
    LogSumAccumulator acc;
    std::vector<int> full(m);
    comp.for_each([&](std::span<const int> counts) {
        for (std::size_t i = 0; i < m; ++i) full[i] = n[i] + counts[i];
        full[k] += 1;
        acc.add(table.log_multinomial(remaining, counts) + alpha.log_type_weight(full));
    });
    return acc.value();
}

ReplicationDecision symmetric_portfolio(const MultilinearCoefficients& alpha,
                                        const ReturnHistory& prefix, const SigmaTable& sigma) {
    if (alpha.mode() != MultilinearCoefficients::Mode::symmetric)
        throw std::invalid_argument("symmetric_portfolio: symmetric coefficients required");
    const std::size_t T = alpha.horizon();
    const std::size_t m = alpha.assets();
    const std::size_t t = prefix.length();
    if (prefix.assets() != m)
        throw std::invalid_argument("symmetric_portfolio: asset count mismatch");
    if (t >= T) throw std::invalid_argument("symmetric_portfolio: history length must be < horizon");
    if (sigma.stage() != t || sigma.assets() != m)
        throw std::invalid_argument("symmetric_portfolio: sigma table stage mismatch");

    const std::size_t remaining = T - t - 1;
    TypeSpace comp(static_cast<int>(remaining), static_cast<int>(m));
    LogFactorialTable table(T);
    std::vector<LogSumAccumulator> numerators(m);
    std::vector<int> full(m);
    std::int64_t rank = 0;
    sigma.space().for_each([&](std::span<const int> type_counts) {
        const double log_sigma = sigma.log_values()[static_cast<std::size_t>(rank++)];
        if (log_sigma == kNegInf) return;
        for (std::size_t k = 0; k < m; ++k) {
            // alpha_{tk}(N) summed in log space against sigma(N; x^t)
            LogSumAccumulator marg;
            comp.for_each([&](std::span<const int> counts) {
                for (std::size_t i = 0; i < m; ++i) full[i] = type_counts[i] + counts[i];
                full[k] += 1;
                marg.add(table.log_multinomial(remaining, counts) + alpha.log_type_weight(full));
            });
            numerators[k].add(marg.log_value() + log_sigma);
        }
    });
    double max_log = kNegInf;
    std::vector<double> logs(m);
    for (std::size_t k = 0; k < m; ++k) {
        logs[k] = numerators[k].log_value();
        max_log = std::max(max_log, logs[k]);
    }
    if (max_log == kNegInf) return {PortfolioVector::uniform(m), true};
    std::vector<double> w(m);
    for (std::size_t k = 0; k < m; ++k) w[k] = std::exp(logs[k] - max_log);
    return {PortfolioVector::normalized(std::move(w)), false};
}

TradingStrategy replicating_strategy(const MultilinearCoefficients& alpha) {
    return TradingStrategy(alpha.horizon(), alpha.assets(), [alpha](const ReturnHistory& h) {
        return replicating_portfolio(alpha, h).portfolio;
    });
}

}  // namespace superhedge

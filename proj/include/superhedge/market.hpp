#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace superhedge {

/// T x m grid of nonnegative gross returns (1.0 = flat).  Every entry >= 0,
/// no row is all-zero, T >= 1, m >= 1.
class ReturnMatrix {
public:
    ReturnMatrix(std::size_t periods, std::size_t assets, std::vector<double> entries);

    static ReturnMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static ReturnMatrix all_ones(std::size_t periods, std::size_t assets);
    /// Rows are the unit basis vectors e_{tuple[t]} (a Kelly sequence).
    static ReturnMatrix kelly_sequence(std::size_t assets, std::span<const std::size_t> tuple);

    std::size_t periods() const { return periods_; }
    std::size_t assets() const { return assets_; }

    double at(std::size_t t, std::size_t j) const { return entries_[t * assets_ + j]; }
    std::span<const double> row(std::size_t t) const {
        return {entries_.data() + t * assets_, assets_};
    }
    std::span<const double> entries() const { return entries_; }

    /// First `length` rows as a new matrix; 1 <= length <= periods().
    ReturnMatrix prefix(std::size_t length) const;

private:
    std::size_t periods_, assets_;
    std::vector<double> entries_;
};

/// A return history x^t: zero or more gross-return rows.  Unlike ReturnMatrix,
/// a history may be empty (h^0).
class ReturnHistory {
public:
    explicit ReturnHistory(std::size_t assets);

    static ReturnHistory of(const ReturnMatrix& x);
    static ReturnHistory prefix_of(const ReturnMatrix& x, std::size_t length);

    std::size_t length() const { return data_.size() / assets_; }
    std::size_t assets() const { return assets_; }

    double at(std::size_t s, std::size_t j) const { return data_[s * assets_ + j]; }
    std::span<const double> row(std::size_t s) const { return {data_.data() + s * assets_, assets_}; }

    /// Appends a validated row (nonnegative, not all-zero).
    void append(std::span<const double> row);

private:
    std::size_t assets_;
    std::vector<double> data_;
};

/// Point of the portfolio simplex: m nonnegative weights summing to 1.
/// Construction renormalizes inputs whose sum deviates from 1 by <= 1e-9
/// and rejects larger deviations.
class PortfolioVector {
public:
    explicit PortfolioVector(std::vector<double> weights);

    static PortfolioVector uniform(std::size_t assets);
    static PortfolioVector basis(std::size_t assets, std::size_t index);
    /// Scales any nonnegative vector with positive sum onto the simplex.
    static PortfolioVector normalized(std::vector<double> raw);

    std::size_t assets() const { return weights_.size(); }
    double operator[](std::size_t k) const { return weights_[k]; }
    std::span<const double> weights() const { return weights_; }

private:
    struct AlreadyNormalized {};
    PortfolioVector(std::vector<double> weights, AlreadyNormalized);
    std::vector<double> weights_;
};

/// Deterministic map from return histories to portfolio vectors, with a
/// fixed horizon.  Self-financing by construction of the wealth evaluation.
class TradingStrategy {
public:
    using Policy = std::function<PortfolioVector(const ReturnHistory&)>;

    TradingStrategy(std::size_t horizon, std::size_t assets, Policy policy);

    PortfolioVector portfolio_at(const ReturnHistory& history) const;

    std::size_t horizon() const { return horizon_; }
    std::size_t assets() const { return assets_; }

    /// Constant rebalancing rule c.
    static TradingStrategy constant(std::size_t horizon, PortfolioVector c);
    /// Lets an initial distribution ride without rebalancing.
    static TradingStrategy buy_and_hold(std::size_t horizon, PortfolioVector initial);
    /// Memoryless extreme strategy: all wealth into stock picks[t] in session t+1.
    static TradingStrategy extremal(std::size_t assets, std::vector<std::size_t> picks);
    /// Memoryless strategy with one portfolio per period.
    static TradingStrategy memoryless(std::size_t assets, std::vector<PortfolioVector> per_period);

private:
    std::size_t horizon_, assets_;
    Policy policy_;
};

/// Positive price rows S_{tj} with optional dividends delta_{tj} (default 0).
class PriceTable {
public:
    PriceTable(std::vector<double> initial_prices,
               std::vector<std::vector<double>> price_rows,
               std::vector<std::vector<double>> dividend_rows = {},
               std::vector<std::string> dates = {});

    std::size_t periods() const { return prices_.size(); }
    std::size_t assets() const { return initial_.size(); }

    std::span<const double> initial_prices() const { return initial_; }
    std::span<const double> prices(std::size_t t) const { return prices_[t]; }
    std::span<const double> dividends(std::size_t t) const { return dividends_[t]; }
    const std::vector<std::string>& dates() const { return dates_; }

    /// Closing prices of one asset, sessions 1..T (initial price excluded).
    std::vector<double> column(std::size_t j) const;

private:
    std::vector<double> initial_;
    std::vector<std::vector<double>> prices_;
    std::vector<std::vector<double>> dividends_;
    std::vector<std::string> dates_;  // one label per row incl. the initial row; may be empty
};

/// Product of per-period growth factors for a $1 deposit.  Accumulates in
/// log space beyond 30 factors; 0 is a legal value.
double product_of_factors(std::span<const double> factors);

double dot(std::span<const double> a, std::span<const double> b);

/// Final wealth prod_t <theta(x^{t-1}), x_t> of a $1 deposit.
double wealth_of_strategy(const TradingStrategy& strategy, const ReturnMatrix& x);

/// Wealth of the strategy along a (possibly partial) history.
double wealth_on_history(const TradingStrategy& strategy, const ReturnHistory& history);

/// prod_t <c, x_t>; equals wealth_of_strategy of the constant strategy.
double crp_wealth(const PortfolioVector& c, const ReturnMatrix& x);

/// Strategy whose wealth is lambda*W_theta + (1-lambda)*W_psi on every path.
TradingStrategy blend_strategies(double lambda, const TradingStrategy& theta,
                                 const TradingStrategy& psi);

enum class IndexKind { price_weighted, cap_weighted, equal_weight };

/// Price/cap-weighted kinds reproduce buy-and-hold of 1 (resp. shares[j])
/// share(s) per stock; equal_weight is the uniform rebalancing rule.
/// Initial prices default to all ones.
TradingStrategy index_strategy(IndexKind kind, std::size_t horizon, std::size_t assets,
                               std::span<const double> shares = {},
                               std::span<const double> initial_prices = {});

/// Gross returns x_{tj} = (S_{tj} + delta_{tj}) / S_{t-1,j}.
ReturnMatrix returns_from_prices(const PriceTable& table);

}  // namespace superhedge

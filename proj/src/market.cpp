#include "superhedge/market.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace superhedge {

namespace {

void check_row(std::span<const double> row) {
    bool any_positive = false;
    for (double v : row) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("gross returns must be finite and nonnegative");
        any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) throw std::invalid_argument("a gross-return row must not be the zero vector");
}

}  // namespace

ReturnMatrix::ReturnMatrix(std::size_t periods, std::size_t assets, std::vector<double> entries)
    : periods_(periods), assets_(assets), entries_(std::move(entries)) {
    if (periods_ < 1 || assets_ < 1) throw std::invalid_argument("ReturnMatrix: T >= 1 and m >= 1 required");
    if (entries_.size() != periods_ * assets_)
        throw std::invalid_argument("ReturnMatrix: entry count does not match T x m");
    for (std::size_t t = 0; t < periods_; ++t) check_row(row(t));
}

ReturnMatrix ReturnMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("ReturnMatrix: T >= 1 required");
    const std::size_t m = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * m);
    for (const auto& r : rows) {
        if (r.size() != m) throw std::invalid_argument("ReturnMatrix: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return ReturnMatrix(rows.size(), m, std::move(flat));
}

ReturnMatrix ReturnMatrix::all_ones(std::size_t periods, std::size_t assets) {
    return ReturnMatrix(periods, assets, std::vector<double>(periods * assets, 1.0));
}

ReturnMatrix ReturnMatrix::kelly_sequence(std::size_t assets, std::span<const std::size_t> tuple) {
    std::vector<double> flat(tuple.size() * assets, 0.0);
    for (std::size_t t = 0; t < tuple.size(); ++t) {
        if (tuple[t] >= assets) throw std::invalid_argument("kelly_sequence: index out of range");
        flat[t * assets + tuple[t]] = 1.0;
    }
    return ReturnMatrix(tuple.size(), assets, std::move(flat));
}

ReturnMatrix ReturnMatrix::prefix(std::size_t length) const {
    if (length < 1 || length > periods_) throw std::invalid_argument("ReturnMatrix::prefix: bad length");
    return ReturnMatrix(length, assets_,
                        std::vector<double>(entries_.begin(), entries_.begin() + length * assets_));
}

ReturnHistory::ReturnHistory(std::size_t assets) : assets_(assets) {
    if (assets_ < 1) throw std::invalid_argument("ReturnHistory: m >= 1 required");
}

ReturnHistory ReturnHistory::of(const ReturnMatrix& x) { return prefix_of(x, x.periods()); }

ReturnHistory ReturnHistory::prefix_of(const ReturnMatrix& x, std::size_t length) {
    if (length > x.periods()) throw std::invalid_argument("ReturnHistory: prefix longer than matrix");
    ReturnHistory h(x.assets());
    h.data_.assign(x.entries().begin(), x.entries().begin() + length * x.assets());
    return h;
}

void ReturnHistory::append(std::span<const double> row) {
    if (row.size() != assets_) throw std::invalid_argument("ReturnHistory::append: wrong row width");
    check_row(row);
    data_.insert(data_.end(), row.begin(), row.end());
}

PortfolioVector::PortfolioVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("PortfolioVector: m >= 1 required");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("PortfolioVector: weights must be finite and nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("PortfolioVector: weights must sum to 1 within 1e-9");
    for (double& w : weights_) w /= sum;
}

PortfolioVector::PortfolioVector(std::vector<double> weights, AlreadyNormalized)
    : weights_(std::move(weights)) {}

PortfolioVector PortfolioVector::uniform(std::size_t assets) {
    if (assets < 1) throw std::invalid_argument("PortfolioVector: m >= 1 required");
    return PortfolioVector(std::vector<double>(assets, 1.0 / static_cast<double>(assets)),
                           AlreadyNormalized{});
}

PortfolioVector PortfolioVector::basis(std::size_t assets, std::size_t index) {
    if (index >= assets) throw std::invalid_argument("PortfolioVector::basis: index out of range");
    std::vector<double> w(assets, 0.0);
    w[index] = 1.0;
    return PortfolioVector(std::move(w), AlreadyNormalized{});
}

PortfolioVector PortfolioVector::normalized(std::vector<double> raw) {
    double sum = 0.0;
    for (double w : raw) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("PortfolioVector: weights must be finite and nonnegative");
        sum += w;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("PortfolioVector: sum must be positive");
    for (double& w : raw) w /= sum;
    return PortfolioVector(std::move(raw), AlreadyNormalized{});
}

TradingStrategy::TradingStrategy(std::size_t horizon, std::size_t assets, Policy policy)
    : horizon_(horizon), assets_(assets), policy_(std::move(policy)) {
    if (horizon_ < 1 || assets_ < 1) throw std::invalid_argument("TradingStrategy: bad shape");
    if (!policy_) throw std::invalid_argument("TradingStrategy: null policy");
}

PortfolioVector TradingStrategy::portfolio_at(const ReturnHistory& history) const {
    if (history.assets() != assets_)
        throw std::invalid_argument("TradingStrategy: history asset count mismatch");
    return policy_(history);
}

TradingStrategy TradingStrategy::constant(std::size_t horizon, PortfolioVector c) {
    const std::size_t m = c.assets();
    return TradingStrategy(horizon, m, [c = std::move(c)](const ReturnHistory&) { return c; });
}

TradingStrategy TradingStrategy::buy_and_hold(std::size_t horizon, PortfolioVector initial) {
    const std::size_t m = initial.assets();
    return TradingStrategy(horizon, m, [c = std::move(initial)](const ReturnHistory& h) {
        std::vector<double> holdings(c.weights().begin(), c.weights().end());
        for (std::size_t s = 0; s < h.length(); ++s)
            for (std::size_t j = 0; j < h.assets(); ++j) holdings[j] *= h.at(s, j);
        double sum = std::accumulate(holdings.begin(), holdings.end(), 0.0);
        if (sum <= 0.0) return c;  // wealth already zero; weights are immaterial
        return PortfolioVector::normalized(std::move(holdings));
    });
}

TradingStrategy TradingStrategy::extremal(std::size_t assets, std::vector<std::size_t> picks) {
    if (picks.empty()) throw std::invalid_argument("extremal: at least one period required");
    for (std::size_t j : picks)
        if (j >= assets) throw std::invalid_argument("extremal: pick out of range");
    const std::size_t horizon = picks.size();
    return TradingStrategy(horizon, assets, [assets, picks = std::move(picks)](const ReturnHistory& h) {
        const std::size_t t = std::min(h.length(), picks.size() - 1);
        return PortfolioVector::basis(assets, picks[t]);
    });
}

TradingStrategy TradingStrategy::memoryless(std::size_t assets,
                                            std::vector<PortfolioVector> per_period) {
    if (per_period.empty()) throw std::invalid_argument("memoryless: at least one period required");
    for (const auto& p : per_period)
        if (p.assets() != assets) throw std::invalid_argument("memoryless: asset count mismatch");
    const std::size_t horizon = per_period.size();
    return TradingStrategy(horizon, assets,
                           [per_period = std::move(per_period)](const ReturnHistory& h) {
                               const std::size_t t = std::min(h.length(), per_period.size() - 1);
                               return per_period[t];
                           });
}

PriceTable::PriceTable(std::vector<double> initial_prices,
                       std::vector<std::vector<double>> price_rows,
                       std::vector<std::vector<double>> dividend_rows,
                       std::vector<std::string> dates)
    : initial_(std::move(initial_prices)),
      prices_(std::move(price_rows)),
      dividends_(std::move(dividend_rows)),
      dates_(std::move(dates)) {
    const std::size_t m = initial_.size();
    if (m < 1) throw std::invalid_argument("PriceTable: m >= 1 required");
    if (prices_.empty()) throw std::invalid_argument("PriceTable: at least one session required");
    if (dividends_.empty()) dividends_.assign(prices_.size(), std::vector<double>(m, 0.0));
    if (dividends_.size() != prices_.size())
        throw std::invalid_argument("PriceTable: dividend row count mismatch");
    auto check_price = [](double p) {
        if (!(p > 0.0) || !std::isfinite(p))
            throw std::invalid_argument("PriceTable: prices must be positive");
    };
    for (double p : initial_) check_price(p);
    for (std::size_t t = 0; t < prices_.size(); ++t) {
        if (prices_[t].size() != m || dividends_[t].size() != m)
            throw std::invalid_argument("PriceTable: ragged rows");
        for (std::size_t j = 0; j < m; ++j) {
            check_price(prices_[t][j]);
            if (!std::isfinite(dividends_[t][j]) || prices_[t][j] + dividends_[t][j] < 0.0)
                throw std::invalid_argument("PriceTable: dividend makes total payout negative");
        }
    }
    if (!dates_.empty() && dates_.size() != prices_.size() + 1)
        throw std::invalid_argument("PriceTable: need one date per row including the initial row");
}

std::vector<double> PriceTable::column(std::size_t j) const {
    if (j >= assets()) throw std::invalid_argument("PriceTable::column: index out of range");
    std::vector<double> out;
    out.reserve(periods());
    for (const auto& row : prices_) out.push_back(row[j]);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double product_of_factors(std::span<const double> factors) {
    if (factors.size() <= 30) {
        double w = 1.0;
        for (double f : factors) w *= f;
        return w;
    }
    double log_w = 0.0;
    for (double f : factors) {
        if (f == 0.0) return 0.0;
        log_w += std::log(f);
    }
    return std::exp(log_w);
}

double wealth_on_history(const TradingStrategy& strategy, const ReturnHistory& history) {
    if (history.assets() != strategy.assets())
        throw std::invalid_argument("wealth_on_history: asset count mismatch");
    std::vector<double> factors(history.length());
    ReturnHistory prefix(history.assets());
    for (std::size_t t = 0; t < history.length(); ++t) {
        const PortfolioVector theta = strategy.portfolio_at(prefix);
        factors[t] = dot(theta.weights(), history.row(t));
        prefix.append(history.row(t));
    }
    return product_of_factors(factors);
}

double wealth_of_strategy(const TradingStrategy& strategy, const ReturnMatrix& x) {
    if (x.assets() != strategy.assets())
        throw std::invalid_argument("wealth_of_strategy: asset count mismatch");
    if (strategy.horizon() < x.periods())
        throw std::invalid_argument("wealth_of_strategy: strategy horizon shorter than path");
    return wealth_on_history(strategy, ReturnHistory::of(x));
}

double crp_wealth(const PortfolioVector& c, const ReturnMatrix& x) {
    if (c.assets() != x.assets()) throw std::invalid_argument("crp_wealth: asset count mismatch");
    std::vector<double> factors(x.periods());
    for (std::size_t t = 0; t < x.periods(); ++t) factors[t] = dot(c.weights(), x.row(t));
    return product_of_factors(factors);
}

TradingStrategy blend_strategies(double lambda, const TradingStrategy& theta,
                                 const TradingStrategy& psi) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("blend_strategies: lambda must lie in [0,1]");
    if (theta.horizon() != psi.horizon() || theta.assets() != psi.assets())
        throw std::invalid_argument("blend_strategies: shape mismatch");
    const std::size_t m = theta.assets();
    return TradingStrategy(
        theta.horizon(), m, [lambda, theta, psi, m](const ReturnHistory& h) {
            const double w_theta = lambda * wealth_on_history(theta, h);
            const double w_psi = (1.0 - lambda) * wealth_on_history(psi, h);
            const double total = w_theta + w_psi;
            const PortfolioVector a = theta.portfolio_at(h);
            if (total <= 0.0) return a;  // dead state: future wealth is 0 either way
            const PortfolioVector b = psi.portfolio_at(h);
            std::vector<double> mixed(m);
            for (std::size_t k = 0; k < m; ++k)
                mixed[k] = (w_theta * a[k] + w_psi * b[k]) / total;
            return PortfolioVector::normalized(std::move(mixed));
        });
}

TradingStrategy index_strategy(IndexKind kind, std::size_t horizon, std::size_t assets,
                               std::span<const double> shares,
                               std::span<const double> initial_prices) {
    std::vector<double> s0(initial_prices.begin(), initial_prices.end());
    if (s0.empty()) s0.assign(assets, 1.0);
    if (s0.size() != assets) throw std::invalid_argument("index_strategy: initial price count mismatch");
    for (double p : s0)
        if (!(p > 0.0)) throw std::invalid_argument("index_strategy: initial prices must be positive");

    switch (kind) {
        case IndexKind::equal_weight:
            return TradingStrategy::constant(horizon, PortfolioVector::uniform(assets));
        case IndexKind::price_weighted:
            return TradingStrategy::buy_and_hold(horizon, PortfolioVector::normalized(std::move(s0)));
        case IndexKind::cap_weighted: {
            if (shares.size() != assets)
                throw std::invalid_argument("index_strategy: cap_weighted needs one share count per asset");
            std::vector<double> w(assets);
            for (std::size_t j = 0; j < assets; ++j) {
                if (!(shares[j] > 0.0))
                    throw std::invalid_argument("index_strategy: share counts must be positive");
                w[j] = shares[j] * s0[j];
            }
            return TradingStrategy::buy_and_hold(horizon, PortfolioVector::normalized(std::move(w)));
        }
    }
    throw std::invalid_argument("index_strategy: unknown kind");
}

ReturnMatrix returns_from_prices(const PriceTable& table) {
    const std::size_t T = table.periods();
    const std::size_t m = table.assets();
    std::vector<double> flat(T * m);
    std::span<const double> prev = table.initial_prices();
    for (std::size_t t = 0; t < T; ++t) {
        const auto cur = table.prices(t);
        const auto div = table.dividends(t);
        for (std::size_t j = 0; j < m; ++j) flat[t * m + j] = (cur[j] + div[j]) / prev[j];
        prev = cur;
    }
    return ReturnMatrix(T, m, std::move(flat));
}

}  // namespace superhedge

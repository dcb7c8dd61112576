#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace superhedge {

/// Thrown when an operation would exceed its enumeration or memory budget.
/// The message names a feasible alternative when one exists.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precomputed natural logs L_n = log n and log-factorials LF_n = L_n + LF_{n-1},
/// grown on demand.  Build once, then share read-only.
class LogFactorialTable {
public:
    explicit LogFactorialTable(std::size_t max_n = 1) { ensure(max_n); }

    void ensure(std::size_t max_n) {
        if (log_fact_.empty()) {
            logs_.push_back(0.0);      // slot 0, unused as a log
            log_fact_.push_back(0.0);  // log 0! = 0
        }
        while (log_fact_.size() <= max_n) {
            const std::size_t n = log_fact_.size();
            logs_.push_back(std::log(static_cast<double>(n)));
            log_fact_.push_back(logs_.back() + log_fact_[n - 1]);
        }
    }

    std::size_t max_n() const { return log_fact_.size() - 1; }

    double log_n(std::size_t n) const { return logs_[n]; }
    double log_factorial(std::size_t n) const { return log_fact_[n]; }

    double log_choose(std::size_t n, std::size_t k) const {
        if (k > n) return -std::numeric_limits<double>::infinity();
        return log_fact_[n] - log_fact_[k] - log_fact_[n - k];
    }

    double log_multinomial(std::size_t total, std::span<const int> counts) const {
        double out = log_fact_[total];
        for (int c : counts) out -= log_fact_[static_cast<std::size_t>(c)];
        return out;
    }

private:
    std::vector<double> logs_;
    std::vector<double> log_fact_;
};

/// Occurrence counts (n_1,...,n_m) of an index tuple; all counts >= 0.
class TypeVector {
public:
    explicit TypeVector(std::vector<int> counts) : counts_(std::move(counts)) {
        if (counts_.empty()) throw std::invalid_argument("TypeVector: needs at least one count");
        for (int c : counts_)
            if (c < 0) throw std::invalid_argument("TypeVector: counts must be nonnegative");
    }

    std::size_t assets() const { return counts_.size(); }
    int operator[](std::size_t k) const { return counts_[k]; }
    int sum() const {
        int s = 0;
        for (int c : counts_) s += c;
        return s;
    }
    std::span<const int> counts() const { return counts_; }

    bool operator==(const TypeVector& other) const = default;

private:
    std::vector<int> counts_;
};

/// All compositions of `total` into `parts` nonnegative integers, in
/// lexicographic order of (n_1,...,n_parts).  Ranking is O(parts) via
/// hockey-stick sums over a small exact binomial table.
class TypeSpace {
public:
    TypeSpace(int total, int parts) : total_(total), parts_(parts) {
        if (total < 0 || parts < 1) throw std::invalid_argument("TypeSpace: bad shape");
        build_binomials();
        size_ = count(total_, parts_);
    }

    int total() const { return total_; }
    int parts() const { return parts_; }
    std::int64_t size() const { return size_; }

    /// Number of compositions of s into k nonnegative parts: C(s+k-1, k-1).
    std::int64_t count(int s, int k) const { return binom(s + k - 1, k - 1); }

    std::int64_t rank(std::span<const int> counts) const {
        std::int64_t r = 0;
        int rem = total_;
        for (int i = 0; i + 1 < parts_; ++i) {
            const int k = parts_ - 1 - i;  // parts remaining after slot i
            // sum over v < counts[i] of count(rem - v, k), telescoped
            r += binom(rem + k, k) - binom(rem - counts[i] + k, k);
            rem -= counts[i];
        }
        return r;
    }

    /// visit(counts) for every composition, in rank order.
    template <class Visitor>
    void for_each(Visitor&& visit) const {
        std::vector<int> scratch(parts_, 0);
        recurse(scratch, 0, total_, visit);
    }

private:
    template <class Visitor>
    void recurse(std::vector<int>& scratch, int slot, int rem, Visitor& visit) const {
        if (slot + 1 == parts_) {
            scratch[slot] = rem;
            visit(std::span<const int>(scratch));
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            scratch[slot] = v;
            recurse(scratch, slot + 1, rem - v, visit);
        }
    }

    void build_binomials() {
        const int rows = total_ + parts_ + 1;
        const int cols = parts_ + 1;
        binom_.assign(static_cast<std::size_t>(rows) * cols, 0);
        for (int a = 0; a < rows; ++a) {
            at(a, 0) = 1;
            for (int b = 1; b <= std::min(a, parts_); ++b) {
                const std::int64_t v = at(a - 1, b - 1) + at(a - 1, b);
                if (v < 0) throw budget_error("TypeSpace: composition count overflows 64 bits");
                at(a, b) = v;
            }
        }
    }

    std::int64_t& at(int a, int b) { return binom_[static_cast<std::size_t>(a) * (parts_ + 1) + b]; }
    std::int64_t binom(int a, int b) const {
        if (b < 0 || b > a) return 0;
        return binom_[static_cast<std::size_t>(a) * (parts_ + 1) + b];
    }

    int total_, parts_;
    std::int64_t size_ = 0;
    std::vector<std::int64_t> binom_;
};

/// Streaming log-sum-exp accumulator; tolerates -inf terms.
class LogSumAccumulator {
public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term <= max_) {
            sum_ += std::exp(log_term - max_);
        } else {
            if (max_ != -std::numeric_limits<double>::infinity())
                sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            else
                sum_ = 1.0;
            max_ = log_term;
        }
    }

    bool empty() const { return max_ == -std::numeric_limits<double>::infinity(); }

    double log_value() const {
        if (empty()) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(sum_);
    }

    double value() const { return empty() ? 0.0 : std::exp(log_value()); }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

/// Number of index tuples {0..assets-1}^horizon, or -1 if it exceeds `cap`.
inline std::int64_t index_tuple_count(std::size_t horizon, std::size_t assets, std::int64_t cap) {
    std::int64_t n = 1;
    for (std::size_t t = 0; t < horizon; ++t) {
        if (n > cap / static_cast<std::int64_t>(assets)) return -1;
        n *= static_cast<std::int64_t>(assets);
    }
    return n;
}

/// visit(tuple) over {0..assets-1}^horizon in odometer order, slot 0 most significant.
template <class Visitor>
void for_each_index_tuple(std::size_t horizon, std::size_t assets, Visitor&& visit) {
    std::vector<std::size_t> tuple(horizon, 0);
    while (true) {
        visit(std::span<const std::size_t>(tuple));
        std::size_t slot = horizon;
        while (slot > 0) {
            --slot;
            if (++tuple[slot] < assets) break;
            tuple[slot] = 0;
            if (slot == 0) return;
        }
        if (horizon == 0) return;
    }
}

}  // namespace superhedge

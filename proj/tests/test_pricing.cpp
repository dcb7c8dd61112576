#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "superhedge/pricing.hpp"

using namespace superhedge;

TEST_CASE("boundary prices") {
    for (std::size_t m = 1; m <= 10; ++m) {
        CHECK(price_direct(1, m) == doctest::Approx(static_cast<double>(m)).epsilon(1e-14));
        CHECK(price_recurrence(1, m) == doctest::Approx(static_cast<double>(m)).epsilon(1e-14));
    }
    for (std::size_t T = 1; T <= 40; ++T) CHECK(price_recurrence(T, 1) == 1.0);
}

TEST_CASE("small prices by hand") {
    CHECK(price_direct(2, 2) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(price_recurrence(2, 2) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(price_two_stocks(2) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(price_direct(3, 2) == doctest::Approx(26.0 / 9).epsilon(1e-14));
    CHECK(price_recurrence(3, 2) == doctest::Approx(26.0 / 9).epsilon(1e-14));
}

TEST_CASE("direct and recurrence formulas agree") {
    for (std::size_t m = 1; m <= 4; ++m)
        for (std::size_t T = 1; T <= 15; ++T)
            CHECK(price_direct(T, m) == doctest::Approx(price_recurrence(T, m)).epsilon(1e-10));
}

TEST_CASE("two-stock formula agrees with the recurrence and the direct sum") {
    const std::vector<double> column = price_recurrence_column(120, 2);
    for (std::size_t T = 1; T <= 120; ++T)
        CHECK(price_two_stocks(T) == doctest::Approx(column[T - 1]).epsilon(1e-10));
    // folded form vs plain type sum
    for (std::size_t T = 2; T <= 10; ++T)
        CHECK(price_two_stocks(T) == doctest::Approx(price_direct(T, 2)).epsilon(1e-12));
}

TEST_CASE("the thirty-year pair-trading rate") {
    const double p30 = price_two_stocks(30);
    CHECK(p30 == doctest::Approx(7.549460831033074).epsilon(1e-12));
    const double rate = std::log(p30) / 30.0;
    CHECK(rate > 0.065);
    CHECK(rate < 0.069);
}

TEST_CASE("price is monotone in horizon and stock count") {
    for (std::size_t m = 2; m <= 4; ++m) {
        const std::vector<double> cur = price_recurrence_column(40, m);
        const std::vector<double> prev = price_recurrence_column(40, m - 1);
        for (std::size_t T = 1; T <= 40; ++T) {
            CHECK(cur[T - 1] > prev[T - 1]);
            if (T > 1) CHECK(cur[T - 1] >= cur[T - 2] - 1e-12);
        }
    }
}

TEST_CASE("price is bounded by the number of type classes") {
    LogFactorialTable table(64);
    for (std::size_t m = 2; m <= 5; ++m)
        for (std::size_t T = 1; T <= 60; ++T)
            CHECK(price_recurrence(T, m) <=
                  std::exp(table.log_choose(T + m - 1, m - 1)) * (1 + 1e-12));
}

TEST_CASE("per-period regret rate tends to zero") {
    double prev = std::log(price_two_stocks(10)) / 10.0;
    for (const std::size_t T : {100, 1000, 10000, 100000}) {
        const double rate = std::log(price_two_stocks(T)) / static_cast<double>(T);
        CHECK(rate < prev);
        prev = rate;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("shtarkov coefficients and bound values") {
    // m = 2: a_1 = 2, a_2 = sqrt(pi/2)
    CHECK(shtarkov_coefficient(2, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(shtarkov_coefficient(2, 2) == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(1e-12));
    // a_1 = m in general
    for (std::size_t m = 1; m <= 6; ++m)
        CHECK(shtarkov_coefficient(m, 1) == doctest::Approx(static_cast<double>(m)).epsilon(1e-12));
    CHECK(shtarkov_bound(1, 2) == doctest::Approx(2.0 + std::sqrt(M_PI / 2)).epsilon(1e-12));
    CHECK(shtarkov_bound(1, 2) >= price_recurrence(1, 2));
}

TEST_CASE("shtarkov bound dominates the exact price") {
    for (std::size_t m = 2; m <= 5; ++m) {
        const std::vector<double> column = price_recurrence_column(60, m);
        for (std::size_t T = 1; T <= 60; ++T) CHECK(shtarkov_bound(T, m) >= column[T - 1]);
    }
}

TEST_CASE("horizon solver: trivial and frozen cases") {
    for (std::size_t m = 2; m <= 4; ++m) {
        const auto res =
            horizon_for_tolerance(std::log(static_cast<double>(m)), m, HorizonMethod::exact_scan);
        CHECK(res.horizon == 1);
    }
    CHECK(horizon_for_tolerance(0.7, 2, HorizonMethod::exact_scan).horizon == 1);
    CHECK(horizon_for_tolerance(1.0, 1, HorizonMethod::exact_scan).horizon == 1);

    // Exact scans: the published 30-year / 320-year figures arise from the
    // Shtarkov-bound method; the exact prices give 31 and 313.
    CHECK(horizon_for_tolerance(0.067, 2, HorizonMethod::exact_scan).horizon == 31);
    CHECK(horizon_for_tolerance(0.01, 2, HorizonMethod::exact_scan).horizon == 313);
    CHECK(horizon_for_tolerance(0.067, 2, HorizonMethod::shtarkov_fixed_point).horizon == 34);
    CHECK(horizon_for_tolerance(0.01, 2, HorizonMethod::shtarkov_fixed_point).horizon == 320);
}

TEST_CASE("horizon result invariants: rate conforms, predecessor violates") {
    for (const double eps : {0.4, 0.1, 0.05, 0.02}) {
        for (const auto method : {HorizonMethod::exact_scan, HorizonMethod::shtarkov_fixed_point}) {
            const HorizonResult res = horizon_for_tolerance(eps, 3, method);
            CHECK(res.achieved_rate <= eps);
            if (res.horizon > 1) {
                const double prev_price = method == HorizonMethod::exact_scan
                                              ? price_recurrence(res.horizon - 1, 3)
                                              : shtarkov_bound(res.horizon - 1, 3);
                CHECK(std::log(prev_price) / (res.horizon - 1) > eps);
            }
        }
    }
}

TEST_CASE("years needed") {
    // exact scan below budget: T(0.01) = 313 with annual rebalancing
    CHECK(years_needed(0.01, 2, 1) == doctest::Approx(313.0));
    // daily trading reproduces the published 621 years via the bound method
    const double daily = years_needed(0.01, 2, 252);
    CHECK(daily == doctest::Approx(156498.0 / 252).epsilon(1e-12));
    CHECK(std::abs(daily - 621.0) / 621.0 < 0.01);

    double prev = 0.0;
    for (const double f : {1.0, 4.0, 12.0, 52.0, 252.0}) {
        const double years = years_needed(0.01, 2, f);
        CHECK(years >= prev - 1e-9);
        prev = years;
    }
}

TEST_CASE("type space ranks agree with enumeration order") {
    for (const auto [total, parts] : {std::pair<int, int>{7, 3}, {5, 4}, {12, 2}, {0, 3}, {4, 1}}) {
        const TypeSpace space(total, parts);
        std::int64_t expected = 0;
        space.for_each([&](std::span<const int> counts) {
            CHECK(space.rank(counts) == expected);
            ++expected;
        });
        CHECK(expected == space.size());
    }
}

TEST_CASE("log-factorial table is built by the running increment") {
    LogFactorialTable table(200);
    CHECK(table.log_factorial(0) == 0.0);
    for (std::size_t n = 1; n <= 200; ++n) {
        CHECK(table.log_factorial(n) == table.log_n(n) + table.log_factorial(n - 1));
        CHECK(table.log_n(n) == std::log(static_cast<double>(n)));
    }
}

TEST_CASE("budgets are enforced with a feasible alternative named") {
    CHECK_THROWS_AS(price_direct(2000, 6), budget_error);
    try {
        price_direct(2000, 6);
    } catch (const budget_error& e) {
        CHECK(std::string(e.what()).find("recurrence") != std::string::npos);
    }
    CHECK_THROWS_AS(price_recurrence(100000, 6), budget_error);
}

TEST_CASE("inputs are validated") {
    CHECK_THROWS_AS(price_direct(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(price_two_stocks(0), std::invalid_argument);
    CHECK_THROWS_AS(horizon_for_tolerance(0.0, 2, HorizonMethod::exact_scan), std::invalid_argument);
    CHECK_THROWS_AS(years_needed(0.01, 2, 0.5), std::invalid_argument);
}

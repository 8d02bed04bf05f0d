#include <doctest.h>

#include <cmath>
#include <vector>

#include "nprank/umbrella.hpp"

using namespace nprank;

namespace {

// Independent oracle: direct summation with Pascal-triangle binomial
// coefficients in long double (exact well past m2 = 300).
long double brute_tail(std::size_t m2, std::size_t k, double alpha) {
    std::vector<long double> coef(m2 + 1, 0.0L);
    coef[0] = 1.0L;
    for (std::size_t row = 1; row <= m2; ++row)
        for (std::size_t j = row; j > 0; --j) coef[j] += coef[j - 1];
    long double sum = 0.0L;
    const long double p = 1.0L - static_cast<long double>(alpha);
    const long double q = static_cast<long double>(alpha);
    for (std::size_t j = k; j <= m2; ++j)
        sum += coef[j] * powl(p, static_cast<long double>(j)) *
               powl(q, static_cast<long double>(m2 - j));
    return sum;
}

std::size_t brute_order(std::size_t m2, double alpha, double delta1) {
    for (std::size_t k = 1; k <= m2; ++k)
        if (brute_tail(m2, k, alpha) <= static_cast<long double>(delta1)) return k;
    return 0;  // none
}

}  // namespace

TEST_CASE("binomial_tail closed-form spot checks") {
    CHECK(binomial_tail(10, 1, 0.05) ==
          doctest::Approx(1.0 - std::pow(0.05, 10)).epsilon(1e-12));
    CHECK(binomial_tail(10, 10, 0.5) == doctest::Approx(0.0009765625).epsilon(1e-12));
    CHECK(binomial_tail(59, 59, 0.05) == doctest::Approx(std::pow(0.95, 59)).epsilon(1e-12));
    CHECK(binomial_tail(59, 59, 0.05) <= 0.05);
}

TEST_CASE("binomial_tail is nonincreasing in k") {
    for (std::size_t m2 : {5, 37, 120, 500}) {
        for (double alpha : {0.01, 0.1, 0.5, 0.9}) {
            double prev = binomial_tail(m2, 1, alpha);
            for (std::size_t k = 2; k <= m2; ++k) {
                const double cur = binomial_tail(m2, k, alpha);
                CHECK(cur <= prev + 1e-12);
                prev = cur;
            }
        }
    }
}

TEST_CASE("binomial_tail matches the long-double oracle") {
    for (std::size_t m2 : {3, 17, 59, 200}) {
        for (double alpha : {0.05, 0.2}) {
            for (std::size_t k = 1; k <= m2; k += std::max<std::size_t>(1, m2 / 7)) {
                const double expected = static_cast<double>(brute_tail(m2, k, alpha));
                CHECK(binomial_tail(m2, k, alpha) == doctest::Approx(expected).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("min_left_out_size pins the existence boundary") {
    CHECK(min_left_out_size(0.05, 0.05) == 59);
    CHECK(min_left_out_size(0.5, 0.5) == 1);
    CHECK(min_left_out_size(0.10, 0.05) == 29);
}

TEST_CASE("umbrella_order at the boundary") {
    CHECK(umbrella_order(59, 0.05, 0.05) == 59);
    CHECK_THROWS_AS(umbrella_order(58, 0.05, 0.05), NoFiniteOrder);
    CHECK(umbrella_order(200, 0.05, 0.05) == brute_order(200, 0.05, 0.05));
}

TEST_CASE("umbrella_order equals the exhaustive scan on a grid") {
    for (std::size_t m2 : {10, 59, 60, 99, 150, 250}) {
        for (double alpha : {0.05, 0.1, 0.2}) {
            for (double delta1 : {0.05, 0.1}) {
                const std::size_t expected = brute_order(m2, alpha, delta1);
                if (expected == 0) {
                    CHECK_THROWS_AS(umbrella_order(m2, alpha, delta1), NoFiniteOrder);
                } else {
                    CHECK(umbrella_order(m2, alpha, delta1) == expected);
                }
            }
        }
    }
}

TEST_CASE("np_threshold picks the ascending order statistic") {
    CHECK(np_threshold(std::vector<double>{3, 1, 2}, 2) == 2);
    CHECK(np_threshold(std::vector<double>{5}, 1) == 5);
    CHECK(np_threshold(std::vector<double>{1, 2, 2, 4}, 3) == 2);
    CHECK_THROWS_AS(np_threshold(std::vector<double>{1, 2}, 3), OrderOutOfRange);
    CHECK_THROWS_AS(np_threshold(std::vector<double>{1, 2}, 0), OrderOutOfRange);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nprank/baselines.hpp"
#include "nprank/rng.hpp"

using namespace nprank;

namespace {

std::vector<double> normal_sample(std::size_t n, double mu, std::uint64_t seed) {
    auto rng = make_stream(seed, 0);
    std::normal_distribution<double> nd(mu, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = nd(rng);
    return out;
}

// Hand evaluation of the distance correlation formula for tiny inputs.
double dcor_by_hand(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    auto center = [n](const std::vector<double>& v) {
        std::vector<std::vector<double>> a(n, std::vector<double>(n));
        std::vector<double> rm(n, 0);
        double gm = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = std::abs(v[i] - v[j]);
                rm[i] += a[i][j] / n;
                gm += a[i][j] / (n * n);
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] += gm - rm[i] - rm[j];
        return a;
    };
    auto A = center(x), B = center(y);
    double vxy = 0, vxx = 0, vyy = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            vxy += A[i][j] * B[i][j];
            vxx += A[i][j] * A[i][j];
            vyy += B[i][j] * B[i][j];
        }
    return std::sqrt(vxy / std::sqrt(vxx * vyy));
}

}  // namespace

TEST_CASE("pearson basics") {
    const std::vector<double> y = {0, 0, 1, 1};
    CHECK(pearson(y, y) == doctest::Approx(1.0));
    CHECK_THROWS_AS(pearson(std::vector<double>{2, 2, 2, 2}, y), ConstantInput);

    auto rng = make_stream(9, 0);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> x(10000), labels(10000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = nd(rng);
        labels[i] = static_cast<double>(i % 2);
    }
    CHECK(std::abs(pearson(x, labels)) < 0.05);
}

TEST_CASE("distance correlation basics") {
    const std::vector<double> y = {0, 1, 0, 1, 1, 0};
    CHECK(distance_correlation(y, y) == doctest::Approx(1.0));

    const std::vector<double> x = {0.3, -1.2, 2.5, 0.9};
    const std::vector<double> lab = {0, 0, 1, 1};
    CHECK(distance_correlation(x, lab) == doctest::Approx(dcor_by_hand(x, lab)).epsilon(1e-12));

    auto rng = make_stream(10, 0);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> xi(2000), labels(2000);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        xi[i] = nd(rng);
        labels[i] = static_cast<double>((rng() >> 63) & 1);
    }
    CHECK(distance_correlation(xi, labels) < 0.1);
}

TEST_CASE("welch_t basics and t-CDF oracle") {
    CHECK_THROWS_AS(welch_t(std::vector<double>{0, 0, 0, 0}, std::vector<double>{1, 1, 1, 1}),
                    DegenerateVariance);

    const std::vector<double> same = {1.0, 2.0, 3.0, 4.0};
    const auto sym = welch_t(same, same);
    CHECK(sym.statistic == doctest::Approx(0.0));
    CHECK(sym.p_value == doctest::Approx(1.0));

    const std::vector<double> c0 = {1, 2, 3, 4, 5};
    const std::vector<double> c1 = {3, 4, 5, 6, 7};
    const auto r = welch_t(c0, c1);
    CHECK(r.statistic == doctest::Approx(-2.0).epsilon(1e-9));
    // Numerical t-CDF oracle: Simpson integration of the t density, nu = 8.
    const double nu = 8.0;
    auto t_pdf = [nu](double t) {
        return std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) /
               std::sqrt(nu * M_PI) * std::pow(1 + t * t / nu, -(nu + 1) / 2);
    };
    double integral = 0;
    const double lo = -2.0, hi = 2.0;
    const std::size_t steps = 20000;
    const double dx = (hi - lo) / steps;
    for (std::size_t i = 0; i < steps; ++i) {
        const double a = lo + i * dx;
        integral += dx / 6.0 * (t_pdf(a) + 4 * t_pdf(a + dx / 2) + t_pdf(a + dx));
    }
    CHECK(r.p_value == doctest::Approx(1.0 - integral).epsilon(1e-6));
}

TEST_CASE("wilcoxon basics") {
    const auto sep = wilcoxon_rank_sum(std::vector<double>{1, 2}, std::vector<double>{3, 4});
    CHECK(sep.statistic == doctest::Approx(7.0));

    const std::vector<double> multiset = {1.0, 2.0, 2.0, 5.0};
    const auto same = wilcoxon_rank_sum(multiset, multiset);
    CHECK(same.p_value > 0.9);
}

TEST_CASE("wilcoxon p matches a permutation oracle") {
    const std::size_t n = 50;
    const auto c0 = normal_sample(n, 0.0, 31);
    const auto c1 = normal_sample(n, 0.5, 32);
    const auto observed = wilcoxon_rank_sum(c0, c1);

    std::vector<double> pooled = c0;
    pooled.insert(pooled.end(), c1.begin(), c1.end());
    const double mu = n * (2.0 * n + 1) / 2.0;
    const double observed_dev = std::abs(observed.statistic - mu);

    auto rng = make_stream(33, 0);
    std::size_t extreme = 0;
    const std::size_t reps = 10000;
    for (std::size_t r = 0; r < reps; ++r) {
        shuffle_fisher_yates(pooled, rng);
        // Rank sum of the second half under the permuted labels.
        std::vector<std::size_t> idx(pooled.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
        double w = 0;
        for (std::size_t rank = 0; rank < idx.size(); ++rank)
            if (idx[rank] >= n) w += static_cast<double>(rank + 1);
        if (std::abs(w - mu) >= observed_dev) ++extreme;
    }
    const double perm_p = static_cast<double>(extreme) / static_cast<double>(reps);
    CHECK(observed.p_value == doctest::Approx(perm_p).epsilon(0.02).scale(1.0));
}

TEST_CASE("label swap symmetry") {
    const auto c0 = normal_sample(40, 0.0, 51);
    const auto c1 = normal_sample(35, 1.0, 52);

    const auto t_ab = welch_t(c0, c1);
    const auto t_ba = welch_t(c1, c0);
    CHECK(t_ab.statistic == doctest::Approx(-t_ba.statistic).epsilon(1e-12));
    CHECK(t_ab.p_value == doctest::Approx(t_ba.p_value).epsilon(1e-12));

    const auto w_ab = wilcoxon_rank_sum(c0, c1);
    const auto w_ba = wilcoxon_rank_sum(c1, c0);
    CHECK(w_ab.p_value == doctest::Approx(w_ba.p_value).epsilon(1e-12));

    std::vector<double> x = c0, y(c0.size(), 0.0);
    x.insert(x.end(), c1.begin(), c1.end());
    y.insert(y.end(), c1.size(), 1.0);
    std::vector<double> y_swapped(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y_swapped[i] = 1.0 - y[i];
    CHECK(pearson(x, y) == doctest::Approx(-pearson(x, y_swapped)).epsilon(1e-12));
    CHECK(distance_correlation(x, y) ==
          doctest::Approx(distance_correlation(x, y_swapped)).epsilon(1e-12));
}

TEST_CASE("positive rescaling preserves every baseline's ranking statistic") {
    const auto c0 = normal_sample(30, 0.0, 61);
    const auto c1 = normal_sample(30, 0.8, 62);
    auto scale = [](const std::vector<double>& v, double k) {
        auto out = v;
        for (auto& x : out) x *= k;
        return out;
    };
    const double k = 7.5;
    CHECK(welch_t(c0, c1).statistic ==
          doctest::Approx(welch_t(scale(c0, k), scale(c1, k)).statistic).epsilon(1e-12));
    CHECK(wilcoxon_rank_sum(c0, c1).p_value ==
          doctest::Approx(wilcoxon_rank_sum(scale(c0, k), scale(c1, k)).p_value)
              .epsilon(1e-12));

    std::vector<double> x = c0, y(c0.size(), 0.0);
    x.insert(x.end(), c1.begin(), c1.end());
    y.insert(y.end(), c1.size(), 1.0);
    CHECK(std::abs(pearson(x, y)) ==
          doctest::Approx(std::abs(pearson(scale(x, k), y))).epsilon(1e-12));
    CHECK(distance_correlation(x, y) ==
          doctest::Approx(distance_correlation(scale(x, k), y)).epsilon(1e-12));
}

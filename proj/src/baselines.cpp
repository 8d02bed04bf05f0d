#include "nprank/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace nprank {

namespace {

double mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mu) {
    double ss = 0;
    for (double x : v) ss += (x - mu) * (x - mu);
    return ss / static_cast<double>(v.size() - 1);
}

double normal_cdf_local(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

namespace detail {

double betainc_regularized(double a, double b, double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    // Lentz's continued fraction for the incomplete beta function.
    auto contfrac = [](double a, double b, double x) {
        const double tiny = 1e-300;
        double qab = a + b, qap = a + 1, qam = a - 1;
        double c = 1, d = 1 - qab * x / qap;
        if (std::abs(d) < tiny) d = tiny;
        d = 1 / d;
        double h = d;
        for (int m = 1; m <= 300; ++m) {
            const double m2 = 2.0 * m;
            double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
            d = 1 + aa * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1 + aa / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1 / d;
            h *= d * c;
            aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
            d = 1 + aa * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1 + aa / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1 / d;
            const double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < 1e-14) break;
        }
        return h;
    };
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1) / (a + b + 2)) return std::exp(ln_front) * contfrac(a, b, x) / a;
    return 1.0 - std::exp(ln_front) * contfrac(b, a, 1 - x) / b;
}

double student_t_two_sided_p(double t, double nu) {
    const double x = nu / (nu + t * t);
    return std::clamp(betainc_regularized(0.5 * nu, 0.5, x), 0.0, 1.0);
}

}  // namespace detail

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson needs equal lengths >= 2");
    const double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw ConstantInput("pearson on a constant input");
    return sxy / std::sqrt(sxx * syy);
}

double distance_correlation(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("distance_correlation needs equal lengths >= 2");

    auto centered = [n](std::span<const double> v) {
        std::vector<double> a(n * n);
        std::vector<double> row_mean(n, 0.0);
        double grand = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double d = std::abs(v[i] - v[j]);
                a[i * n + j] = d;
                row_mean[i] += d;
            }
            grand += row_mean[i];
            row_mean[i] /= static_cast<double>(n);
        }
        grand /= static_cast<double>(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a[i * n + j] += grand - row_mean[i] - row_mean[j];
        return a;
    };

    const auto a = centered(x);
    const auto b = centered(y);
    double vxy = 0, vxx = 0, vyy = 0;
    for (std::size_t i = 0; i < n * n; ++i) {
        vxy += a[i] * b[i];
        vxx += a[i] * a[i];
        vyy += b[i] * b[i];
    }
    if (vxx == 0 || vyy == 0) throw ConstantInput("distance correlation on a constant input");
    const double r2 = vxy / std::sqrt(vxx * vyy);
    return r2 <= 0 ? 0.0 : std::sqrt(r2);
}

TestResult welch_t(std::span<const double> class0, std::span<const double> class1) {
    if (class0.size() < 2 || class1.size() < 2)
        throw std::invalid_argument("welch_t needs >= 2 observations per class");
    const double n0 = static_cast<double>(class0.size());
    const double n1 = static_cast<double>(class1.size());
    const double m0 = mean(class0), m1 = mean(class1);
    const double v0 = sample_variance(class0, m0), v1 = sample_variance(class1, m1);
    if (v0 == 0 && v1 == 0) throw DegenerateVariance("both classes constant");
    const double se0 = v0 / n0, se1 = v1 / n1;
    const double t = (m0 - m1) / std::sqrt(se0 + se1);
    const double nu = (se0 + se1) * (se0 + se1) /
                      (se0 * se0 / (n0 - 1) + se1 * se1 / (n1 - 1));
    double p = detail::student_t_two_sided_p(t, nu);
    if (p <= 0) p = std::numeric_limits<double>::min();
    return {t, p};
}

TestResult wilcoxon_rank_sum(std::span<const double> class0, std::span<const double> class1) {
    if (class0.empty() || class1.empty())
        throw std::invalid_argument("wilcoxon needs >= 1 observation per class");
    const std::size_t n0 = class0.size(), n1 = class1.size(), N = n0 + n1;

    std::vector<std::pair<double, int>> pooled;  // value, class
    pooled.reserve(N);
    for (double v : class0) pooled.emplace_back(v, 0);
    for (double v : class1) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double w1 = 0;            // rank sum of class 1, midranks for ties
    double tie_correction = 0;  // sum over tie groups of t^3 - t
    std::size_t i = 0;
    while (i < N) {
        std::size_t j = i;
        while (j < N && pooled[j].first == pooled[i].first) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
        const double t = static_cast<double>(j - i);
        tie_correction += t * t * t - t;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 1) w1 += midrank;
        i = j;
    }

    const double dn0 = static_cast<double>(n0), dn1 = static_cast<double>(n1);
    const double dN = static_cast<double>(N);
    const double mu = dn1 * (dN + 1) / 2.0;
    double var = dn0 * dn1 * (dN + 1) / 12.0;
    if (N > 1) var -= dn0 * dn1 * tie_correction / (12.0 * dN * (dN - 1));
    if (var <= 0) return {w1, 1.0};  // all observations tied
    double dev = std::abs(w1 - mu) - 0.5;  // continuity correction
    if (dev < 0) dev = 0;
    const double z = dev / std::sqrt(var);
    double p = 2.0 * normal_cdf_local(-z);
    return {w1, std::clamp(p, std::numeric_limits<double>::min(), 1.0)};
}

}  // namespace nprank

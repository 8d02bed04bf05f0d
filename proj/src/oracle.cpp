#include "nprank/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nprank/rng.hpp"
#include "nprank/simulate.hpp"

namespace nprank {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Wichura's algorithm AS241 (PPND16).
double normal_quantile(double p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("quantile needs p in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    r = q < 0 ? p : 1 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0 ? -value : value;
}

double gaussian_np_type2(const GaussianFeature& f, double alpha) {
    if (!(f.sigma0 > 0 && f.sigma1 > 0))
        throw std::invalid_argument("sigmas must be positive");
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (f.mu1 >= f.mu0) {
        const double c = f.mu0 + f.sigma0 * normal_quantile(1 - alpha);
        return normal_cdf((c - f.mu1) / f.sigma1);
    }
    const double c = f.mu0 + f.sigma0 * normal_quantile(alpha);
    return 1.0 - normal_cdf((c - f.mu1) / f.sigma1);
}

namespace {

// Probability a N(mu, sigma) variable lands in the union of intervals.
double gaussian_mass(const std::vector<std::pair<double, double>>& intervals, double mu,
                     double sigma) {
    double p = 0;
    for (const auto& [lo, hi] : intervals) {
        const double a = std::isinf(lo) ? 0.0 : normal_cdf((lo - mu) / sigma);
        const double b = std::isinf(hi) ? 1.0 : normal_cdf((hi - mu) / sigma);
        p += b - a;
    }
    return p;
}

}  // namespace

double gaussian_classical_risk(const GaussianFeature& f, double pi0) {
    if (!(f.sigma0 > 0 && f.sigma1 > 0))
        throw std::invalid_argument("sigmas must be positive");
    if (!(pi0 > 0 && pi0 < 1)) throw std::invalid_argument("pi0 must lie in (0,1)");

    // Predict class 1 where log(p1/p0) > log(pi0/pi1), i.e. where the
    // quadratic A x^2 + B x + C is positive.
    const double inv0 = 1.0 / (2.0 * f.sigma0 * f.sigma0);
    const double inv1 = 1.0 / (2.0 * f.sigma1 * f.sigma1);
    const double A = inv0 - inv1;
    const double B = f.mu1 / (f.sigma1 * f.sigma1) - f.mu0 / (f.sigma0 * f.sigma0);
    const double C = f.mu0 * f.mu0 * inv0 - f.mu1 * f.mu1 * inv1 +
                     std::log(f.sigma0 / f.sigma1) - std::log(pi0 / (1.0 - pi0));

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> predict1;
    if (std::abs(A) < 1e-14 * (inv0 + inv1)) {
        if (B > 0)
            predict1 = {{-C / B, inf}};
        else if (B < 0)
            predict1 = {{-inf, -C / B}};
        else if (C > 0)
            predict1 = {{-inf, inf}};
    } else {
        const double disc = B * B - 4.0 * A * C;
        if (disc <= 0) {
            if (A > 0) predict1 = {{-inf, inf}};
        } else {
            const double sq = std::sqrt(disc);
            double r1 = (-B - sq) / (2.0 * A);
            double r2 = (-B + sq) / (2.0 * A);
            if (r1 > r2) std::swap(r1, r2);
            if (A > 0)
                predict1 = {{-inf, r1}, {r2, inf}};
            else
                predict1 = {{r1, r2}};
        }
    }

    const double type1 = gaussian_mass(predict1, f.mu0, f.sigma0);
    const double type2 = 1.0 - gaussian_mass(predict1, f.mu1, f.sigma1);
    return pi0 * type1 + (1.0 - pi0) * type2;
}

bool alpha_invariant(const GaussianFeature& f1, const GaussianFeature& f2, double tol) {
    return std::abs(f1.sigma0 / f1.sigma1 - f2.sigma0 / f2.sigma1) <= tol;
}

std::vector<double> mc_population_criterion(ModelKind model, PopulationCriterion criterion,
                                            double alpha, std::size_t sample_size,
                                            std::uint64_t seed) {
    const ModelDists dists = model_distributions(model, /*noise_seed=*/0);
    const std::size_t d = dists.n_features();
    std::vector<double> out(d);

    for (std::size_t j = 0; j < d; ++j) {
        auto rng = make_stream(seed, j);
        std::vector<double> s0, s1;  // true density-ratio scores by class
        for (std::size_t i = 0; i < sample_size; ++i) {
            const int y = (rng() >> 63) & 1;
            const auto& dist = y == 0 ? dists.class0[j] : dists.class1[j];
            const double x = sample_feature(dist, rng);
            const double p0 = std::max(feature_pdf(dists.class0[j], x), 1e-300);
            const double s = feature_pdf(dists.class1[j], x) / p0;
            (y == 0 ? s0 : s1).push_back(s);
        }
        if (criterion == PopulationCriterion::CC) {
            // Equal priors: the classical oracle thresholds the ratio at 1.
            std::size_t errors = 0;
            for (double s : s0)
                if (s > 1.0) ++errors;
            for (double s : s1)
                if (s <= 1.0) ++errors;
            out[j] = static_cast<double>(errors) / static_cast<double>(s0.size() + s1.size());
        } else {
            // Smallest score threshold whose empirical type I error is <= alpha.
            const std::size_t m0 = s0.size();
            const std::size_t allow = std::min(
                m0 - 1,
                static_cast<std::size_t>(std::floor(alpha * static_cast<double>(m0))));
            std::sort(s0.begin(), s0.end());
            const double threshold = s0[m0 - allow - 1];
            std::size_t misses = 0;
            for (double s : s1)
                if (s <= threshold) ++misses;
            out[j] = static_cast<double>(misses) / static_cast<double>(s1.size());
        }
    }
    return out;
}

}  // namespace nprank

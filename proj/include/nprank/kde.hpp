#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace nprank {

struct EmptySample : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateSample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Kernel { Gaussian, Epanechnikov };
enum class BandwidthRule { PaperRate, Silverman };

// Lower clamp applied to bandwidths: 1e-8 * max(1, sd).
double bandwidth_floor(double sd);

// PaperRate: sd * (log n / n)^(1/5).  Silverman: 1.06 * sd * n^(-1/5).
// Throws DegenerateSample when the sample standard deviation is zero;
// callers that must proceed substitute bandwidth_floor(0) and warn.
double default_bandwidth(std::span<const double> samples, BandwidthRule rule);

// Fitted 1-D kernel density estimate; evaluation is exact O(n) per query.
class DensityEstimate {
public:
    DensityEstimate(std::vector<double> centers, double bandwidth, Kernel kernel);

    double evaluate(double x) const;
    double bandwidth() const { return bandwidth_; }
    Kernel kernel() const { return kernel_; }
    const std::vector<double>& centers() const { return centers_; }

private:
    std::vector<double> centers_;
    double bandwidth_;
    Kernel kernel_;
};

DensityEstimate fit_kde(std::vector<double> samples, double bandwidth, Kernel kernel);

// Density-ratio score s(x) = num(x) / max(den(x), floor).
class ScoreFunction {
public:
    ScoreFunction(DensityEstimate numerator, DensityEstimate denominator,
                  double floor = kDefaultFloor);

    double operator()(double x) const;
    const DensityEstimate& numerator() const { return numerator_; }
    const DensityEstimate& denominator() const { return denominator_; }
    double floor() const { return floor_; }

    // Densities bounded away from zero in the population; this is the
    // finite-sample stand-in, hit mostly by the compact-support kernel.
    static constexpr double kDefaultFloor = 1e-30;

private:
    DensityEstimate numerator_, denominator_;
    double floor_;
};

// Numerator fitted on class-1 samples, denominator on class-0 samples,
// each with its own bandwidth from `rule`. Degenerate (constant) halves
// fall back to the clamp floor bandwidth.
ScoreFunction make_score(std::span<const double> class1_samples,
                         std::span<const double> class0_samples, BandwidthRule rule,
                         Kernel kernel);

}  // namespace nprank

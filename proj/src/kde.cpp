#include "nprank/kde.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

namespace nprank {

namespace {

double sample_sd(std::span<const double> samples) {
    const std::size_t n = samples.size();
    double mean = 0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

double bandwidth_floor(double sd) { return 1e-8 * std::max(1.0, sd); }

double default_bandwidth(std::span<const double> samples, BandwidthRule rule) {
    if (samples.size() < 2) throw EmptySample("bandwidth needs at least 2 samples");
    const double n = static_cast<double>(samples.size());
    const double sd = sample_sd(samples);
    if (sd == 0.0) throw DegenerateSample("constant sample has no scale");
    double h = 0;
    switch (rule) {
        case BandwidthRule::PaperRate:
            h = sd * std::pow(std::log(n) / n, 0.2);
            break;
        case BandwidthRule::Silverman:
            h = 1.06 * sd * std::pow(n, -0.2);
            break;
    }
    return std::max(h, bandwidth_floor(sd));
}

DensityEstimate::DensityEstimate(std::vector<double> centers, double bandwidth, Kernel kernel)
    : centers_(std::move(centers)), bandwidth_(bandwidth), kernel_(kernel) {
    if (centers_.empty()) throw EmptySample("density estimate needs samples");
    if (!(bandwidth_ > 0)) throw std::invalid_argument("bandwidth must be positive");
}

double DensityEstimate::evaluate(double x) const {
    const double h = bandwidth_;
    double sum = 0;
    if (kernel_ == Kernel::Gaussian) {
        for (double c : centers_) {
            const double u = (c - x) / h;
            sum += std::exp(-0.5 * u * u);
        }
        sum *= std::numbers::inv_sqrtpi / std::numbers::sqrt2;
    } else {
        for (double c : centers_) {
            const double u = (c - x) / h;
            if (u > -1.0 && u < 1.0) sum += 0.75 * (1.0 - u * u);
        }
    }
    return sum / (static_cast<double>(centers_.size()) * h);
}

DensityEstimate fit_kde(std::vector<double> samples, double bandwidth, Kernel kernel) {
    return DensityEstimate(std::move(samples), bandwidth, kernel);
}

ScoreFunction::ScoreFunction(DensityEstimate numerator, DensityEstimate denominator, double floor)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)), floor_(floor) {
    if (!(floor_ > 0)) throw std::invalid_argument("floor must be positive");
}

double ScoreFunction::operator()(double x) const {
    const double num = std::max(numerator_.evaluate(x), floor_);
    const double den = std::max(denominator_.evaluate(x), floor_);
    return num / den;
}

ScoreFunction make_score(std::span<const double> class1_samples,
                         std::span<const double> class0_samples, BandwidthRule rule,
                         Kernel kernel) {
    if (class1_samples.empty() || class0_samples.empty())
        throw EmptySample("score function needs samples from both classes");
    auto bandwidth_of = [&](std::span<const double> s) {
        try {
            return default_bandwidth(s, rule);
        } catch (const DegenerateSample&) {
            std::cerr << "nprank: warning: constant training half, "
                         "using clamp-floor bandwidth\n";
            return bandwidth_floor(0.0);
        }
    };
    DensityEstimate num(std::vector<double>(class1_samples.begin(), class1_samples.end()),
                        bandwidth_of(class1_samples), kernel);
    DensityEstimate den(std::vector<double>(class0_samples.begin(), class0_samples.end()),
                        bandwidth_of(class0_samples), kernel);
    return ScoreFunction(std::move(num), std::move(den));
}

}  // namespace nprank

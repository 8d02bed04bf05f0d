#pragma once

#include <span>
#include <stdexcept>

namespace nprank {

struct ConstantInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateVariance : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BaselineKind { PearsonCorrelation, DistanceCorrelation, WelchT, WilcoxonRankSum };

struct TestResult {
    double statistic;
    double p_value;
};

// Product-moment correlation of a feature against the 0/1 label vector.
// Ranking uses |r| descending.
double pearson(std::span<const double> x, std::span<const double> y);

// Sample distance correlation via doubly-centered O(n^2) distance matrices.
double distance_correlation(std::span<const double> x, std::span<const double> y);

// Welch's unequal-variance t test with Welch-Satterthwaite df; two-sided p.
// Ranking uses p ascending.
TestResult welch_t(std::span<const double> class0, std::span<const double> class1);

// Rank-sum test with midranks for ties; normal approximation with
// tie-corrected variance and continuity correction. Statistic is the
// rank sum of class 1. Ranking uses p ascending.
TestResult wilcoxon_rank_sum(std::span<const double> class0, std::span<const double> class1);

namespace detail {
// Regularized incomplete beta I_x(a, b) by continued fraction.
double betainc_regularized(double a, double b, double x);
// Two-sided Student-t p-value with nu degrees of freedom.
double student_t_two_sided_p(double t, double nu);
}  // namespace detail

}  // namespace nprank

#pragma once

#include <cstdint>
#include <vector>

namespace nprank {

// Standard normal CDF; |error| well under 1e-12 via erfc.
double normal_cdf(double z);
// Standard normal quantile (Wichura's AS241); |error| < 1e-8.
double normal_quantile(double p);

// Class-conditional Gaussian parameters of one feature.
struct GaussianFeature {
    double mu0, sigma0;  // class 0
    double mu1, sigma1;  // class 1
};

// Type II error of the level-alpha NP oracle built on this feature alone.
double gaussian_np_type2(const GaussianFeature& f, double alpha);

// Risk of the classical oracle 1(p1/p0 > pi0/pi1); the unequal-variance
// case solves the quadratic density-ratio boundary analytically.
double gaussian_classical_risk(const GaussianFeature& f, double pi0);

// True iff the two features share the class-0/class-1 sd ratio, which is
// exactly the condition for an alpha-invariant NP ranking.
bool alpha_invariant(const GaussianFeature& f1, const GaussianFeature& f2, double tol);

enum class ModelKind;  // simulate module

enum class PopulationCriterion { CC, NPC };

// Large-sample approximation of the population criterion per feature:
// draws `sample_size` observations from the model, scores them with the
// true density ratio, and evaluates the optimal rule empirically.
std::vector<double> mc_population_criterion(ModelKind model, PopulationCriterion criterion,
                                            double alpha, std::size_t sample_size,
                                            std::uint64_t seed);

}  // namespace nprank

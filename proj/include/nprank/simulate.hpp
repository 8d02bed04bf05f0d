#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "nprank/baselines.hpp"
#include "nprank/criteria.hpp"
#include "nprank/dataset.hpp"

namespace nprank {

enum class ModelKind { Toy2D, Gauss30, Chisq30, Gauss500, Mixture2D };

struct ModelSpec {
    ModelKind kind = ModelKind::Toy2D;
    std::size_t n = 400;
    std::uint64_t seed = 0;
    // Keys the one-time draw of uninformative-feature means in the
    // Gaussian models; held fixed across repetitions of an experiment.
    std::uint64_t noise_seed = 0;
};

struct NormalDist {
    double mu, sigma;
};
struct ChiSquaredDist {
    double df;
};
struct MixtureComponent {
    double weight;
    NormalDist dist;
};
struct MixtureDist {
    std::vector<MixtureComponent> components;
};
using FeatureDist = std::variant<NormalDist, ChiSquaredDist, MixtureDist>;

// Class-conditional marginal distributions for every feature of a model.
struct ModelDists {
    std::vector<FeatureDist> class0, class1;
    std::size_t n_features() const { return class0.size(); }
};

ModelDists model_distributions(ModelKind kind, std::uint64_t noise_seed);

double feature_pdf(const FeatureDist& dist, double x);
double sample_feature(const FeatureDist& dist, std::mt19937_64& rng);

// Draws labels i.i.d. Bernoulli(.5) and features from the class marginals.
Dataset generate(const ModelSpec& spec);

// One ranking approach applied inside an experiment: either a KDE
// criterion or one of the comparison baselines.
struct Ranker {
    std::string name;
    std::optional<CriterionConfig> criterion;
    std::optional<BaselineKind> baseline;
};

Ranker make_criterion_ranker(std::string name, CriterionConfig config);
Ranker make_baseline_ranker(BaselineKind kind);

std::vector<std::size_t> baseline_order(const Dataset& dataset, BaselineKind kind);

struct RankerReport {
    std::string name;
    std::vector<double> top_frequency;               // per feature, sums to 1
    std::vector<double> average_rank;                // per feature, in [1, d]
    std::vector<std::vector<std::size_t>> rank_histogram;  // [feature][rank-1]
};

struct ExperimentReport {
    std::size_t reps = 0;
    std::size_t n_features = 0;
    std::vector<RankerReport> rankers;
};

ExperimentReport run_rank_frequency(const ModelSpec& spec, const std::vector<Ranker>& rankers,
                                    std::size_t reps);
ExperimentReport run_average_ranks(const ModelSpec& spec, const std::vector<Ranker>& rankers,
                                   std::size_t reps);

std::optional<ModelKind> parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind kind);

}  // namespace nprank

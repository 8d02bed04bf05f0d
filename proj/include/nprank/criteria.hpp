#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nprank/dataset.hpp"
#include "nprank/kde.hpp"

namespace nprank {

struct DegenerateSplit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AllSplitsSkipped : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CriterionKind { CC, NPC };

struct CriterionConfig {
    CriterionKind kind = CriterionKind::CC;
    double alpha = 0.05;   // NPC only
    double delta1 = 0.05;  // NPC only
    std::size_t B = 11;
    std::uint64_t seed = 0;
    BandwidthRule bandwidth_rule = BandwidthRule::PaperRate;
    Kernel kernel = Kernel::Gaussian;
    std::optional<double> prior_ratio_override;  // pi0/pi1, CC threshold when known
    unsigned threads = 1;                        // 0 = hardware concurrency
};

struct FeatureResult {
    double score = 0;               // mean over non-skipped splits
    std::vector<double> per_split;  // NaN for skipped splits
    std::size_t skipped = 0;        // NPC splits with no finite order
};

struct RankingResult {
    std::vector<double> scores;        // per feature, in [0,1]
    std::vector<std::size_t> order;    // feature indices, best (smallest score) first
    std::vector<std::vector<double>> per_split_scores;  // [B][d]
    std::vector<std::size_t> skipped_splits;            // per feature

    // 1-based rank position of each feature.
    std::vector<std::size_t> rank_of() const;
};

// Scores of both left-out halves under the density-ratio score function
// fitted on the train-scoring halves of one split.
struct SplitScores {
    std::vector<double> class0_lo;
    std::vector<double> class1_lo;
    double sample_ratio = 1;  // m1/n1, the CC plug-in threshold
};

SplitScores compute_split_scores(const Dataset& dataset, std::size_t feature_index,
                                 const Split& split, const CriterionConfig& config);

// Classification-error fraction on the left-out halves at the given
// density-ratio threshold.
double cc_from_scores(const SplitScores& s, double threshold);

// Type II error fraction at the umbrella threshold; empty when the split
// has no finite order for (alpha, delta1).
std::optional<double> npc_from_scores(const SplitScores& s, double alpha, double delta1);

FeatureResult s_cc_feature(const Dataset& dataset, std::size_t feature_index,
                           const SplitPlan& plan, const CriterionConfig& config);

FeatureResult s_npc_feature(const Dataset& dataset, std::size_t feature_index,
                            const SplitPlan& plan, const CriterionConfig& config);

RankingResult rank_features(const Dataset& dataset, const CriterionConfig& config);

// Ranks under several configurations that share (B, seed, bandwidth_rule,
// kernel), fitting and evaluating each score function once. Output is
// deterministic for any thread count.
std::vector<RankingResult> rank_features_multi(const Dataset& dataset,
                                               const std::vector<CriterionConfig>& configs);

// Feature order sorted ascending by score, ties broken by lower index.
std::vector<std::size_t> order_ascending(const std::vector<double>& scores);

}  // namespace nprank

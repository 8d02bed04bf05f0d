#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nprank/criteria.hpp"
#include "nprank/dataset.hpp"

namespace nprank {

struct UniverseMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered feature identifiers, best first.
using RankList = std::vector<std::string>;

// Element j-1 is |top-j(a) intersect top-j(b)| / j; always ends at 1.
std::vector<double> consistency_curve(const RankList& a, const RankList& b);

// Uniform without-replacement subsample of one class; the other class is
// untouched. keep_fraction = .5 keeps ceil(count/2) observations.
Dataset subsample_class(const Dataset& dataset, int class_label, double keep_fraction,
                        std::uint64_t seed);

struct BiasRobustnessReport {
    std::vector<double> cc_curve;
    std::vector<double> npc_curve;
};

// Builds the two disproportionally subsampled datasets (half of class 0
// removed vs half of class 1 removed), ranks each with each criterion,
// and compares the resulting rank lists.
BiasRobustnessReport bias_robustness_report(const Dataset& dataset,
                                            const CriterionConfig& config_cc,
                                            const CriterionConfig& config_npc,
                                            std::uint64_t seed);

}  // namespace nprank

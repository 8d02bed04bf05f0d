#include "nprank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "nprank/rng.hpp"

namespace nprank {

std::vector<double> consistency_curve(const RankList& a, const RankList& b) {
    if (a.size() != b.size()) throw UniverseMismatch("rank lists differ in length");
    {
        auto sa = a, sb = b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (std::adjacent_find(sa.begin(), sa.end()) != sa.end())
            throw UniverseMismatch("duplicate identifiers in rank list");
        if (sa != sb) throw UniverseMismatch("rank lists cover different feature universes");
    }
    const std::size_t d = a.size();
    std::vector<double> curve(d);
    std::unordered_set<std::string> top_a, top_b;
    std::size_t overlap = 0;
    for (std::size_t j = 0; j < d; ++j) {
        if (top_b.count(a[j])) ++overlap;
        top_a.insert(a[j]);
        top_b.insert(b[j]);
        if (top_a.count(b[j])) ++overlap;
        curve[j] = static_cast<double>(overlap) / static_cast<double>(j + 1);
    }
    return curve;
}

Dataset subsample_class(const Dataset& dataset, int class_label, double keep_fraction,
                        std::uint64_t seed) {
    if (class_label != 0 && class_label != 1)
        throw std::invalid_argument("class label must be 0 or 1");
    if (!(keep_fraction > 0 && keep_fraction <= 1))
        throw std::invalid_argument("keep_fraction must lie in (0, 1]");

    const std::size_t count = dataset.class_count(class_label);
    const std::size_t removed = static_cast<std::size_t>(
        std::floor(static_cast<double>(count) * (1.0 - keep_fraction)));
    const std::size_t keep = count - removed;
    if (keep < 4) throw ClassTooSmall("subsampled class would keep fewer than 4 observations");

    std::vector<std::size_t> positions(count);
    for (std::size_t i = 0; i < count; ++i) positions[i] = i;
    auto rng = make_stream(seed, 0x73756273ULL, static_cast<std::uint64_t>(class_label));
    shuffle_fisher_yates(positions, rng);
    positions.resize(keep);
    std::sort(positions.begin(), positions.end());

    const auto& rows = dataset.class_rows(class_label);
    std::vector<bool> keep_row(dataset.n_samples(), false);
    for (std::size_t i = 0; i < dataset.n_samples(); ++i)
        if (dataset.labels()[i] != class_label) keep_row[i] = true;
    for (std::size_t pos : positions) keep_row[rows[pos]] = true;

    std::vector<int> labels;
    for (std::size_t i = 0; i < dataset.n_samples(); ++i)
        if (keep_row[i]) labels.push_back(dataset.labels()[i]);
    std::vector<std::vector<double>> columns(dataset.n_features());
    for (std::size_t j = 0; j < dataset.n_features(); ++j) {
        const auto col = dataset.column(j);
        columns[j].reserve(labels.size());
        for (std::size_t i = 0; i < dataset.n_samples(); ++i)
            if (keep_row[i]) columns[j].push_back(col[i]);
    }
    return Dataset(std::move(columns), std::move(labels), dataset.feature_names());
}

namespace {

RankList rank_list_of(const Dataset& dataset, const RankingResult& result) {
    RankList list;
    list.reserve(result.order.size());
    for (std::size_t j : result.order) list.push_back(dataset.feature_names()[j]);
    return list;
}

}  // namespace

BiasRobustnessReport bias_robustness_report(const Dataset& dataset,
                                            const CriterionConfig& config_cc,
                                            const CriterionConfig& config_npc,
                                            std::uint64_t seed) {
    const Dataset fewer_class0 = subsample_class(dataset, 0, 0.5, seed);
    const Dataset fewer_class1 = subsample_class(dataset, 1, 0.5, seed + 1);

    BiasRobustnessReport report;
    const auto cc_a = rank_features(fewer_class0, config_cc);
    const auto cc_b = rank_features(fewer_class1, config_cc);
    report.cc_curve =
        consistency_curve(rank_list_of(fewer_class0, cc_a), rank_list_of(fewer_class1, cc_b));
    const auto npc_a = rank_features(fewer_class0, config_npc);
    const auto npc_b = rank_features(fewer_class1, config_npc);
    report.npc_curve =
        consistency_curve(rank_list_of(fewer_class0, npc_a), rank_list_of(fewer_class1, npc_b));
    return report;
}

}  // namespace nprank

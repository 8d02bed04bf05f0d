#include "nprank/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <span>
#include <thread>

#include "nprank/umbrella.hpp"

namespace nprank {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Static block partition; worker i owns a contiguous index range, so the
// result layout does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = count * t / threads;
        const std::size_t end = count * (t + 1) / threads;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> gather(std::span<const double> column, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& members) {
    std::vector<double> out;
    out.reserve(members.size());
    for (std::size_t pos : members) out.push_back(column[rows[pos]]);
    return out;
}

FeatureResult reduce_feature(const std::vector<std::optional<double>>& per_split,
                             const std::string& context) {
    FeatureResult result;
    result.per_split.reserve(per_split.size());
    double sum = 0;
    std::size_t used = 0;
    for (const auto& v : per_split) {
        if (v) {
            result.per_split.push_back(*v);
            sum += *v;
            ++used;
        } else {
            result.per_split.push_back(kNaN);
            ++result.skipped;
        }
    }
    if (used == 0) throw AllSplitsSkipped(context + ": every split lacked a finite order");
    result.score = sum / static_cast<double>(used);
    return result;
}

}  // namespace

std::vector<std::size_t> order_ascending(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    return order;
}

std::vector<std::size_t> RankingResult::rank_of() const {
    std::vector<std::size_t> pos(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) pos[order[r]] = r + 1;
    return pos;
}

SplitScores compute_split_scores(const Dataset& dataset, std::size_t feature_index,
                                 const Split& split, const CriterionConfig& config) {
    if (split.class0_lo.empty() || split.class1_lo.empty() || split.class0_ts.empty() ||
        split.class1_ts.empty())
        throw DegenerateSplit("split has an empty half");

    const auto column = dataset.column(feature_index);
    const auto& rows0 = dataset.class_rows(0);
    const auto& rows1 = dataset.class_rows(1);

    const auto ts0 = gather(column, rows0, split.class0_ts);
    const auto ts1 = gather(column, rows1, split.class1_ts);
    const ScoreFunction score =
        make_score(ts1, ts0, config.bandwidth_rule, config.kernel);

    SplitScores out;
    out.sample_ratio =
        static_cast<double>(split.class0_ts.size()) / static_cast<double>(split.class1_ts.size());
    out.class0_lo.reserve(split.class0_lo.size());
    for (std::size_t pos : split.class0_lo) out.class0_lo.push_back(score(column[rows0[pos]]));
    out.class1_lo.reserve(split.class1_lo.size());
    for (std::size_t pos : split.class1_lo) out.class1_lo.push_back(score(column[rows1[pos]]));
    return out;
}

double cc_from_scores(const SplitScores& s, double threshold) {
    std::size_t errors = 0;
    for (double v : s.class0_lo)
        if (v > threshold) ++errors;  // class-0 point predicted class 1
    for (double v : s.class1_lo)
        if (v <= threshold) ++errors;  // class-1 point predicted class 0
    return static_cast<double>(errors) /
           static_cast<double>(s.class0_lo.size() + s.class1_lo.size());
}

std::optional<double> npc_from_scores(const SplitScores& s, double alpha, double delta1) {
    const std::size_t m2 = s.class0_lo.size();
    std::size_t k_star = 0;
    try {
        k_star = umbrella_order(m2, alpha, delta1);
    } catch (const NoFiniteOrder&) {
        return std::nullopt;
    }
    const double threshold = np_threshold(s.class0_lo, k_star);
    std::size_t misses = 0;
    for (double v : s.class1_lo)
        if (v <= threshold) ++misses;
    return static_cast<double>(misses) / static_cast<double>(s.class1_lo.size());
}

FeatureResult s_cc_feature(const Dataset& dataset, std::size_t feature_index,
                           const SplitPlan& plan, const CriterionConfig& config) {
    std::vector<std::optional<double>> per_split(plan.B);
    for (std::size_t b = 0; b < plan.B; ++b) {
        const SplitScores s =
            compute_split_scores(dataset, feature_index, plan.splits[b], config);
        const double threshold = config.prior_ratio_override.value_or(s.sample_ratio);
        per_split[b] = cc_from_scores(s, threshold);
    }
    return reduce_feature(per_split, "s-CC");
}

FeatureResult s_npc_feature(const Dataset& dataset, std::size_t feature_index,
                            const SplitPlan& plan, const CriterionConfig& config) {
    std::vector<std::optional<double>> per_split(plan.B);
    for (std::size_t b = 0; b < plan.B; ++b) {
        const SplitScores s =
            compute_split_scores(dataset, feature_index, plan.splits[b], config);
        per_split[b] = npc_from_scores(s, config.alpha, config.delta1);
    }
    return reduce_feature(per_split,
                          "s-NPC feature " + dataset.feature_names()[feature_index]);
}

RankingResult rank_features(const Dataset& dataset, const CriterionConfig& config) {
    return rank_features_multi(dataset, {config}).front();
}

std::vector<RankingResult> rank_features_multi(const Dataset& dataset,
                                               const std::vector<CriterionConfig>& configs) {
    if (configs.empty()) return {};
    const CriterionConfig& base = configs.front();
    for (const auto& c : configs) {
        if (c.B != base.B || c.seed != base.seed || c.bandwidth_rule != base.bandwidth_rule ||
            c.kernel != base.kernel)
            throw std::invalid_argument(
                "rank_features_multi requires shared split and kernel settings");
        if (c.kind == CriterionKind::NPC &&
            (!(c.alpha > 0 && c.alpha < 1) || !(c.delta1 > 0 && c.delta1 < 1)))
            throw std::invalid_argument("NPC requires alpha and delta1 in (0,1)");
    }

    const std::size_t d = dataset.n_features();
    const std::size_t m = dataset.class_count(0);
    const std::size_t n = dataset.class_count(1);
    const SplitPlan plan = make_splits(m, n, base.B, base.seed);

    // results[c][feature]
    std::vector<std::vector<std::optional<double>>> cell(
        configs.size() * base.B, std::vector<std::optional<double>>(d));
    std::exception_ptr feature_error;
    std::mutex feature_error_mutex;

    parallel_for(d, base.threads, [&](std::size_t j) {
        try {
            for (std::size_t b = 0; b < base.B; ++b) {
                const SplitScores s = compute_split_scores(dataset, j, plan.splits[b], base);
                for (std::size_t c = 0; c < configs.size(); ++c) {
                    const auto& cfg = configs[c];
                    if (cfg.kind == CriterionKind::CC) {
                        const double threshold =
                            cfg.prior_ratio_override.value_or(s.sample_ratio);
                        cell[c * base.B + b][j] = cc_from_scores(s, threshold);
                    } else {
                        cell[c * base.B + b][j] = npc_from_scores(s, cfg.alpha, cfg.delta1);
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(feature_error_mutex);
            if (!feature_error)
                try {
                    std::throw_with_nested(std::runtime_error(
                        "feature '" + dataset.feature_names()[j] + "' failed"));
                } catch (...) {
                    feature_error = std::current_exception();
                }
        }
    });
    if (feature_error) std::rethrow_exception(feature_error);

    std::vector<RankingResult> results(configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c) {
        RankingResult& r = results[c];
        r.scores.resize(d);
        r.skipped_splits.assign(d, 0);
        r.per_split_scores.assign(base.B, std::vector<double>(d, kNaN));
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<std::optional<double>> per_split(base.B);
            for (std::size_t b = 0; b < base.B; ++b) per_split[b] = cell[c * base.B + b][j];
            FeatureResult fr = reduce_feature(
                per_split, "feature '" + dataset.feature_names()[j] + "'");
            r.scores[j] = fr.score;
            r.skipped_splits[j] = fr.skipped;
            for (std::size_t b = 0; b < base.B; ++b) r.per_split_scores[b][j] = fr.per_split[b];
        }
        r.order = order_ascending(r.scores);
    }
    return results;
}

}  // namespace nprank

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nprank/criteria.hpp"
#include "nprank/rng.hpp"

using namespace nprank;

namespace {

Dataset two_class(const std::vector<double>& class0, const std::vector<double>& class1) {
    std::vector<double> column = class0;
    column.insert(column.end(), class1.begin(), class1.end());
    std::vector<int> labels(class0.size(), 0);
    labels.insert(labels.end(), class1.size(), 1);
    return Dataset({std::move(column)}, std::move(labels), {"f1"});
}

std::vector<double> normal_sample(std::size_t n, double mu, double sigma, std::uint64_t seed) {
    auto rng = make_stream(seed, 0);
    std::normal_distribution<double> nd(mu, sigma);
    std::vector<double> out(n);
    for (auto& v : out) v = nd(rng);
    return out;
}

}  // namespace

TEST_CASE("perfectly separated classes score near zero") {
    const Dataset ds = two_class(normal_sample(160, 0.0, 1.0, 1),
                                 normal_sample(160, 50.0, 1.0, 2));
    CriterionConfig cc;
    cc.kind = CriterionKind::CC;
    cc.B = 5;
    cc.seed = 3;
    const auto r_cc = rank_features(ds, cc);
    CHECK(r_cc.scores[0] <= 0.01);

    CriterionConfig npc = cc;
    npc.kind = CriterionKind::NPC;
    npc.alpha = 0.10;
    npc.delta1 = 0.05;
    const auto r_npc = rank_features(ds, npc);
    CHECK(r_npc.scores[0] <= 0.05);
    CHECK(r_npc.skipped_splits[0] == 0);
}

TEST_CASE("identically distributed classes land near the uninformative level") {
    const Dataset ds = two_class(normal_sample(400, 0.0, 1.0, 11),
                                 normal_sample(400, 0.0, 1.0, 12));
    CriterionConfig cc;
    cc.kind = CriterionKind::CC;
    cc.B = 11;
    cc.seed = 5;
    const auto r_cc = rank_features(ds, cc);
    CHECK(r_cc.scores[0] > 0.4);
    CHECK(r_cc.scores[0] < 0.6);

    CriterionConfig npc = cc;
    npc.kind = CriterionKind::NPC;
    npc.alpha = 0.10;
    npc.delta1 = 0.05;
    const auto r_npc = rank_features(ds, npc);
    // The conservative threshold keeps the realized type I below alpha, so
    // the type II error of a useless feature sits just below 1 - alpha... 1.
    CHECK(r_npc.scores[0] > 0.85);
    CHECK(r_npc.scores[0] <= 1.0);
}

TEST_CASE("scores stay inside [0, 1] with per-split detail") {
    const Dataset ds = two_class(normal_sample(80, 0.0, 1.0, 21),
                                 normal_sample(90, 1.0, 2.0, 22));
    CriterionConfig cfg;
    cfg.kind = CriterionKind::CC;
    cfg.B = 7;
    cfg.seed = 9;
    const auto r = rank_features(ds, cfg);
    REQUIRE(r.per_split_scores.size() == 7);
    for (const auto& row : r.per_split_scores)
        for (double v : row) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    CHECK(r.scores[0] >= 0.0);
    CHECK(r.scores[0] <= 1.0);
}

TEST_CASE("results are deterministic across repeats and thread counts") {
    std::vector<std::vector<double>> columns;
    for (std::uint64_t j = 0; j < 4; ++j) {
        auto col = normal_sample(60, 0.0, 1.0, 100 + j);
        const auto shift = normal_sample(60, 0.4 * static_cast<double>(j), 1.0, 200 + j);
        col.insert(col.end(), shift.begin(), shift.end());
        columns.push_back(std::move(col));
    }
    std::vector<int> labels(60, 0);
    labels.insert(labels.end(), 60, 1);
    const Dataset ds(columns, labels, {"a", "b", "c", "d"});

    CriterionConfig cfg;
    cfg.kind = CriterionKind::NPC;
    cfg.alpha = 0.2;
    cfg.delta1 = 0.2;
    cfg.B = 5;
    cfg.seed = 17;
    cfg.threads = 1;
    const auto r1 = rank_features(ds, cfg);
    const auto r2 = rank_features(ds, cfg);
    cfg.threads = 3;
    const auto r3 = rank_features(ds, cfg);
    cfg.threads = 0;
    const auto r4 = rank_features(ds, cfg);
    CHECK(r1.scores == r2.scores);
    CHECK(r1.scores == r3.scores);
    CHECK(r1.scores == r4.scores);
    CHECK(r1.order == r3.order);
    CHECK(r1.per_split_scores == r3.per_split_scores);
}

TEST_CASE("duplicated columns tie and break toward the lower index") {
    const auto c0 = normal_sample(50, 0.0, 1.0, 41);
    const auto c1 = normal_sample(50, 1.5, 1.0, 42);
    std::vector<double> col = c0;
    col.insert(col.end(), c1.begin(), c1.end());
    std::vector<int> labels(50, 0);
    labels.insert(labels.end(), 50, 1);
    const Dataset ds({col, col, col}, labels, {"x", "y", "z"});

    CriterionConfig cfg;
    cfg.kind = CriterionKind::CC;
    cfg.B = 3;
    cfg.seed = 1;
    const auto r = rank_features(ds, cfg);
    CHECK(r.scores[0] == r.scores[1]);
    CHECK(r.scores[1] == r.scores[2]);
    CHECK(r.order == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("prior ratio override of one matches the balanced sample ratio") {
    const Dataset ds = two_class(normal_sample(100, 0.0, 1.0, 61),
                                 normal_sample(100, 1.0, 1.0, 62));
    CriterionConfig cfg;
    cfg.kind = CriterionKind::CC;
    cfg.B = 9;
    cfg.seed = 13;
    const auto plain = rank_features(ds, cfg);
    cfg.prior_ratio_override = 1.0;
    const auto overridden = rank_features(ds, cfg);
    CHECK(plain.scores == overridden.scores);
}

TEST_CASE("NPC with an unattainable order fails loudly") {
    // Left-out class-0 half of size 25 cannot support (alpha, delta1) = (.05, .05).
    const Dataset ds = two_class(normal_sample(50, 0.0, 1.0, 71),
                                 normal_sample(200, 2.0, 1.0, 72));
    CriterionConfig cfg;
    cfg.kind = CriterionKind::NPC;
    cfg.alpha = 0.05;
    cfg.delta1 = 0.05;
    cfg.B = 3;
    cfg.seed = 2;
    CHECK_THROWS_AS(rank_features(ds, cfg), AllSplitsSkipped);
    // The same data works at a looser level.
    cfg.alpha = 0.2;
    const auto r = rank_features(ds, cfg);
    CHECK(r.skipped_splits[0] == 0);
}

TEST_CASE("rank_features_multi agrees with separate single runs") {
    std::vector<std::vector<double>> columns;
    for (std::uint64_t j = 0; j < 3; ++j) {
        auto col = normal_sample(150, 0.0, 1.0, 300 + j);
        const auto shift =
            normal_sample(150, 1.5 - 0.5 * static_cast<double>(j), 1.0, 400 + j);
        col.insert(col.end(), shift.begin(), shift.end());
        columns.push_back(std::move(col));
    }
    std::vector<int> labels(150, 0);
    labels.insert(labels.end(), 150, 1);
    const Dataset ds(columns, labels, {"a", "b", "c"});

    CriterionConfig cc;
    cc.kind = CriterionKind::CC;
    cc.B = 5;
    cc.seed = 23;
    CriterionConfig npc = cc;
    npc.kind = CriterionKind::NPC;
    npc.alpha = 0.1;
    npc.delta1 = 0.1;

    const auto multi = rank_features_multi(ds, {cc, npc});
    REQUIRE(multi.size() == 2);
    CHECK(multi[0].scores == rank_features(ds, cc).scores);
    CHECK(multi[1].scores == rank_features(ds, npc).scores);
}

TEST_CASE("rank_features_multi rejects mismatched shared settings") {
    const Dataset ds = two_class(normal_sample(30, 0.0, 1.0, 81),
                                 normal_sample(30, 1.0, 1.0, 82));
    CriterionConfig a, b;
    a.seed = 1;
    b.seed = 2;
    CHECK_THROWS_AS(rank_features_multi(ds, {a, b}), std::invalid_argument);

    CriterionConfig bad;
    bad.kind = CriterionKind::NPC;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(rank_features(ds, bad), std::invalid_argument);
}

TEST_CASE("per-feature API matches the batched path") {
    const Dataset ds = two_class(normal_sample(70, 0.0, 1.0, 91),
                                 normal_sample(70, 1.0, 1.0, 92));
    CriterionConfig cfg;
    cfg.kind = CriterionKind::CC;
    cfg.B = 5;
    cfg.seed = 6;
    const SplitPlan plan = make_splits(70, 70, cfg.B, cfg.seed);
    const FeatureResult fr = s_cc_feature(ds, 0, plan, cfg);
    const auto r = rank_features(ds, cfg);
    CHECK(fr.score == r.scores[0]);

    cfg.kind = CriterionKind::NPC;
    cfg.alpha = 0.2;
    cfg.delta1 = 0.1;
    const FeatureResult fn = s_npc_feature(ds, 0, plan, cfg);
    const auto rn = rank_features(ds, cfg);
    CHECK(fn.score == rn.scores[0]);
}

TEST_CASE("swapping labels swaps which class is error-controlled") {
    // Class 1 tight, class 0 wide: NPC depends on which class holds the cap.
    const Dataset ds = two_class(normal_sample(200, 0.0, 3.0, 95),
                                 normal_sample(200, 4.0, 0.5, 96));
    CriterionConfig cfg;
    cfg.kind = CriterionKind::NPC;
    cfg.alpha = 0.1;
    cfg.delta1 = 0.1;
    cfg.B = 7;
    cfg.seed = 8;
    const auto direct = rank_features(ds, cfg);
    const auto swapped = rank_features(ds.with_swapped_labels(), cfg);
    CHECK(direct.scores[0] != swapped.scores[0]);
}

#include "nprank/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "nprank/rng.hpp"

namespace nprank {

namespace {

constexpr std::uint64_t kNoiseStream = 0x6e6f6973ULL;
constexpr std::uint64_t kLabelStream = 0x6c61626cULL;
constexpr std::uint64_t kRepStream = 0x72657073ULL;

std::vector<FeatureDist> gaussian_class_means(const std::vector<double>& means, double sigma) {
    std::vector<FeatureDist> dists;
    dists.reserve(means.size());
    for (double mu : means) dists.push_back(NormalDist{mu, sigma});
    return dists;
}

ModelDists gaussian_model(std::size_t d, std::uint64_t noise_seed) {
    std::vector<double> mu0(d, 0.0), mu1(d, 0.0);
    for (std::size_t j = 0; j < 10; ++j) {
        mu0[j] = -1.5;
        mu1[j] = 1.0 - 0.1 * static_cast<double>(j);  // 1.0, .9, ..., .1
    }
    // Uninformative means drawn once and shared by both classes.
    auto rng = make_stream(noise_seed, kNoiseStream);
    std::normal_distribution<double> std_normal(0.0, 1.0);
    for (std::size_t j = 10; j < d; ++j) {
        const double mu = std_normal(rng);
        mu0[j] = mu;
        mu1[j] = mu;
    }
    return {gaussian_class_means(mu0, 2.0), gaussian_class_means(mu1, 2.0)};
}

}  // namespace

ModelDists model_distributions(ModelKind kind, std::uint64_t noise_seed) {
    switch (kind) {
        case ModelKind::Toy2D:
            return {{NormalDist{-5, 2}, NormalDist{-5, 2}},
                    {NormalDist{0, 2}, NormalDist{1.5, 3.5}}};
        case ModelKind::Gauss30:
            return gaussian_model(30, noise_seed);
        case ModelKind::Gauss500:
            return gaussian_model(500, noise_seed);
        case ModelKind::Chisq30: {
            ModelDists m;
            m.class0.assign(30, ChiSquaredDist{1});
            m.class1.assign(30, ChiSquaredDist{1});
            for (std::size_t j = 0; j < 10; ++j)
                m.class1[j] = ChiSquaredDist{11.0 - static_cast<double>(j)};  // 11, ..., 2
            return m;
        }
        case ModelKind::Mixture2D:
            return {{NormalDist{0, 1}, NormalDist{0, 1}},
                    {NormalDist{1, 1},
                     MixtureDist{{{0.5, NormalDist{-2, 1}}, {0.5, NormalDist{2, 1}}}}}};
    }
    throw std::invalid_argument("unknown model kind");
}

namespace {

double normal_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

double chisq_pdf(double x, double df) {
    if (x <= 0) return 0;
    const double k2 = 0.5 * df;
    return std::exp((k2 - 1) * std::log(x) - 0.5 * x - k2 * std::log(2.0) - std::lgamma(k2));
}

}  // namespace

double feature_pdf(const FeatureDist& dist, double x) {
    return std::visit(
        [x](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, NormalDist>) {
                return normal_pdf(x, d.mu, d.sigma);
            } else if constexpr (std::is_same_v<T, ChiSquaredDist>) {
                return chisq_pdf(x, d.df);
            } else {
                double p = 0;
                for (const auto& c : d.components)
                    p += c.weight * normal_pdf(x, c.dist.mu, c.dist.sigma);
                return p;
            }
        },
        dist);
}

double sample_feature(const FeatureDist& dist, std::mt19937_64& rng) {
    return std::visit(
        [&rng](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, NormalDist>) {
                std::normal_distribution<double> nd(d.mu, d.sigma);
                return nd(rng);
            } else if constexpr (std::is_same_v<T, ChiSquaredDist>) {
                std::chi_squared_distribution<double> cd(d.df);
                return cd(rng);
            } else {
                double u = random_unit(rng);
                for (const auto& c : d.components) {
                    if (u < c.weight) {
                        std::normal_distribution<double> nd(c.dist.mu, c.dist.sigma);
                        return nd(rng);
                    }
                    u -= c.weight;
                }
                std::normal_distribution<double> nd(d.components.back().dist.mu,
                                                    d.components.back().dist.sigma);
                return nd(rng);
            }
        },
        dist);
}

Dataset generate(const ModelSpec& spec) {
    if (spec.n < 4) throw std::invalid_argument("model sample size must be >= 4");
    const ModelDists dists = model_distributions(spec.kind, spec.noise_seed);
    const std::size_t d = dists.n_features();

    auto label_rng = make_stream(spec.seed, kLabelStream);
    std::vector<int> labels(spec.n);
    // Redraw in the (vanishingly rare) event one class comes up empty.
    while (true) {
        std::size_t ones = 0;
        for (auto& y : labels) {
            y = (label_rng() >> 63) & 1;
            ones += y;
        }
        if (ones > 0 && ones < spec.n) break;
    }

    auto feature_rng = make_stream(spec.seed, 0x66656174ULL);
    std::vector<std::vector<double>> columns(d, std::vector<double>(spec.n));
    for (std::size_t i = 0; i < spec.n; ++i) {
        const auto& class_dists = labels[i] == 0 ? dists.class0 : dists.class1;
        for (std::size_t j = 0; j < d; ++j)
            columns[j][i] = sample_feature(class_dists[j], feature_rng);
    }

    std::vector<std::string> names(d);
    for (std::size_t j = 0; j < d; ++j) names[j] = "f" + std::to_string(j + 1);
    return Dataset(std::move(columns), std::move(labels), std::move(names));
}

Ranker make_criterion_ranker(std::string name, CriterionConfig config) {
    Ranker r;
    r.name = std::move(name);
    r.criterion = std::move(config);
    return r;
}

Ranker make_baseline_ranker(BaselineKind kind) {
    Ranker r;
    switch (kind) {
        case BaselineKind::PearsonCorrelation: r.name = "pearson"; break;
        case BaselineKind::DistanceCorrelation: r.name = "dcor"; break;
        case BaselineKind::WelchT: r.name = "welch-t"; break;
        case BaselineKind::WilcoxonRankSum: r.name = "wilcoxon"; break;
    }
    r.baseline = kind;
    return r;
}

std::vector<std::size_t> baseline_order(const Dataset& dataset, BaselineKind kind) {
    const std::size_t d = dataset.n_features();
    std::vector<double> key(d);
    std::vector<double> y(dataset.n_samples());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = dataset.labels()[i];

    std::vector<double> class0, class1;
    for (std::size_t j = 0; j < d; ++j) {
        const auto col = dataset.column(j);
        switch (kind) {
            case BaselineKind::PearsonCorrelation:
                key[j] = -std::abs(pearson(col, y));
                break;
            case BaselineKind::DistanceCorrelation:
                key[j] = -distance_correlation(col, y);
                break;
            case BaselineKind::WelchT:
            case BaselineKind::WilcoxonRankSum: {
                class0.clear();
                class1.clear();
                for (std::size_t i = 0; i < col.size(); ++i)
                    (dataset.labels()[i] == 0 ? class0 : class1).push_back(col[i]);
                key[j] = kind == BaselineKind::WelchT
                             ? welch_t(class0, class1).p_value
                             : wilcoxon_rank_sum(class0, class1).p_value;
                break;
            }
        }
    }
    return order_ascending(key);
}

namespace {

ExperimentReport run_experiment(const ModelSpec& spec, const std::vector<Ranker>& rankers,
                                std::size_t reps) {
    if (reps < 1) throw std::invalid_argument("reps must be >= 1");
    const std::size_t d = model_distributions(spec.kind, spec.noise_seed).n_features();

    // Criterion rankers sharing split and kernel settings are evaluated in
    // one pass over each dataset.
    using GroupKey = std::tuple<std::size_t, std::uint64_t, int, int>;
    std::map<GroupKey, std::vector<std::size_t>> groups;  // -> ranker indices
    for (std::size_t r = 0; r < rankers.size(); ++r) {
        if (rankers[r].criterion) {
            const auto& c = *rankers[r].criterion;
            groups[{c.B, c.seed, static_cast<int>(c.bandwidth_rule),
                    static_cast<int>(c.kernel)}]
                .push_back(r);
        }
    }

    ExperimentReport report;
    report.reps = reps;
    report.n_features = d;
    report.rankers.resize(rankers.size());
    for (std::size_t r = 0; r < rankers.size(); ++r) {
        report.rankers[r].name = rankers[r].name;
        report.rankers[r].top_frequency.assign(d, 0.0);
        report.rankers[r].average_rank.assign(d, 0.0);
        report.rankers[r].rank_histogram.assign(d, std::vector<std::size_t>(d, 0));
    }

    auto rep_seed_rng = make_stream(spec.seed, kRepStream);
    std::vector<std::uint64_t> rep_seeds(reps);
    for (auto& s : rep_seeds) s = rep_seed_rng();

    for (std::size_t rep = 0; rep < reps; ++rep) {
        ModelSpec draw = spec;
        draw.seed = rep_seeds[rep];
        const Dataset dataset = generate(draw);

        std::vector<std::vector<std::size_t>> orders(rankers.size());
        for (const auto& [key, members] : groups) {
            std::vector<CriterionConfig> configs;
            configs.reserve(members.size());
            for (std::size_t r : members) configs.push_back(*rankers[r].criterion);
            const auto results = rank_features_multi(dataset, configs);
            for (std::size_t k = 0; k < members.size(); ++k)
                orders[members[k]] = results[k].order;
        }
        for (std::size_t r = 0; r < rankers.size(); ++r)
            if (rankers[r].baseline) orders[r] = baseline_order(dataset, *rankers[r].baseline);

        for (std::size_t r = 0; r < rankers.size(); ++r) {
            auto& rr = report.rankers[r];
            rr.top_frequency[orders[r][0]] += 1.0;
            for (std::size_t pos = 0; pos < d; ++pos) {
                const std::size_t j = orders[r][pos];
                rr.average_rank[j] += static_cast<double>(pos + 1);
                rr.rank_histogram[j][pos] += 1;
            }
        }
    }

    for (auto& rr : report.rankers) {
        for (auto& v : rr.top_frequency) v /= static_cast<double>(reps);
        for (auto& v : rr.average_rank) v /= static_cast<double>(reps);
    }
    return report;
}

}  // namespace

ExperimentReport run_rank_frequency(const ModelSpec& spec, const std::vector<Ranker>& rankers,
                                    std::size_t reps) {
    return run_experiment(spec, rankers, reps);
}

ExperimentReport run_average_ranks(const ModelSpec& spec, const std::vector<Ranker>& rankers,
                                   std::size_t reps) {
    return run_experiment(spec, rankers, reps);
}

std::optional<ModelKind> parse_model_kind(const std::string& name) {
    if (name == "toy") return ModelKind::Toy2D;
    if (name == "gauss30") return ModelKind::Gauss30;
    if (name == "chisq30") return ModelKind::Chisq30;
    if (name == "gauss500") return ModelKind::Gauss500;
    if (name == "mixture2d") return ModelKind::Mixture2D;
    return std::nullopt;
}

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Toy2D: return "toy";
        case ModelKind::Gauss30: return "gauss30";
        case ModelKind::Chisq30: return "chisq30";
        case ModelKind::Gauss500: return "gauss500";
        case ModelKind::Mixture2D: return "mixture2d";
    }
    return "unknown";
}

}  // namespace nprank

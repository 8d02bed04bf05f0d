#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nprank/baselines.hpp"
#include "nprank/criteria.hpp"
#include "nprank/dataset.hpp"
#include "nprank/metrics.hpp"
#include "nprank/oracle.hpp"
#include "nprank/simulate.hpp"

namespace {

using namespace nprank;

// 6 significant digits, '.' decimal separator regardless of locale.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct OutputTarget {
    std::ofstream file;
    std::ostream& stream() { return file.is_open() ? file : std::cout; }
    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
        }
    }
};

struct CommonFlags {
    std::string input, label_col, output = "-";
    std::size_t splits = 11;
    std::uint64_t seed = 0;
    double delta1 = 0.05;
    std::string bandwidth = "paper";
    std::string kernel = "gaussian";
    unsigned threads = 1;
    bool swap_classes = false;
};

BandwidthRule parse_bandwidth(const std::string& s) {
    if (s == "paper") return BandwidthRule::PaperRate;
    if (s == "silverman") return BandwidthRule::Silverman;
    throw CLI::ValidationError("--bandwidth must be 'paper' or 'silverman'");
}

Kernel parse_kernel(const std::string& s) {
    if (s == "gaussian") return Kernel::Gaussian;
    if (s == "epanechnikov") return Kernel::Epanechnikov;
    throw CLI::ValidationError("--kernel must be 'gaussian' or 'epanechnikov'");
}

void write_config_header(std::ostream& out,
                         const std::vector<std::pair<std::string, std::string>>& entries) {
    out << "# nprank run configuration\n";
    for (const auto& [key, value] : entries) out << "# " << key << " = " << value << "\n";
}

// ---------------------------------------------------------------- rank ----

struct RankFlags : CommonFlags {
    std::string criterion = "cc";
    std::optional<double> alpha;
    std::optional<double> prior_ratio;
};

int cmd_rank(const RankFlags& f) {
    CriterionConfig config;
    if (f.criterion == "cc") {
        config.kind = CriterionKind::CC;
    } else if (f.criterion == "npc") {
        config.kind = CriterionKind::NPC;
        if (!f.alpha) {
            std::cerr << "error: --criterion npc requires --alpha\n";
            return 2;
        }
        config.alpha = *f.alpha;
    } else {
        std::cerr << "error: --criterion must be 'cc' or 'npc'\n";
        return 2;
    }
    config.delta1 = f.delta1;
    config.B = f.splits;
    config.seed = f.seed;
    config.bandwidth_rule = parse_bandwidth(f.bandwidth);
    config.kernel = parse_kernel(f.kernel);
    config.prior_ratio_override = f.prior_ratio;
    config.threads = f.threads;

    Dataset dataset = load_csv(f.input, f.label_col);
    if (f.swap_classes) dataset = dataset.with_swapped_labels();
    const RankingResult result = rank_features(dataset, config);

    OutputTarget target(f.output);
    std::ostream& out = target.stream();
    write_config_header(
        out, {{"subcommand", "rank"},
              {"input", f.input},
              {"label_column", f.label_col},
              {"criterion", f.criterion},
              {"alpha", config.kind == CriterionKind::NPC ? fmt(config.alpha) : "n/a"},
              {"delta1", config.kind == CriterionKind::NPC ? fmt(config.delta1) : "n/a"},
              {"splits", std::to_string(config.B)},
              {"seed", std::to_string(config.seed)},
              {"bandwidth", f.bandwidth},
              {"kernel", f.kernel},
              {"prior_ratio",
               config.prior_ratio_override ? fmt(*config.prior_ratio_override) : "sample"},
              {"swap_classes", f.swap_classes ? "true" : "false"}});
    out << "rank\tfeature\tscore\tskipped_splits\n";
    for (std::size_t r = 0; r < result.order.size(); ++r) {
        const std::size_t j = result.order[r];
        out << (r + 1) << "\t" << dataset.feature_names()[j] << "\t" << fmt(result.scores[j])
            << "\t" << result.skipped_splits[j] << "\n";
    }
    return 0;
}

// ------------------------------------------------------------ simulate ----

struct SimulateFlags {
    std::string model;
    std::size_t n = 400;
    std::size_t reps = 200;
    std::uint64_t seed = 0;
    std::vector<double> alphas = {0.05, 0.10, 0.20, 0.30};
    double delta1 = 0.05;
    std::size_t splits = 11;
    std::string bandwidth = "paper";
    std::string kernel = "gaussian";
    bool baselines = false;
    bool no_cc = false;
    unsigned threads = 1;
    std::string out_tsv = "-";
    std::string out_json;
};

int cmd_simulate(const SimulateFlags& f) {
    const auto kind = parse_model_kind(f.model);
    if (!kind) {
        std::cerr << "error: unknown model '" << f.model
                  << "' (expected toy|gauss30|chisq30|gauss500|mixture2d)\n";
        return 2;
    }
    ModelSpec spec;
    spec.kind = *kind;
    spec.n = f.n;
    spec.seed = f.seed;
    spec.noise_seed = f.seed;

    CriterionConfig base;
    base.B = f.splits;
    base.seed = f.seed;
    base.delta1 = f.delta1;
    base.bandwidth_rule = parse_bandwidth(f.bandwidth);
    base.kernel = parse_kernel(f.kernel);
    base.threads = f.threads;

    std::vector<Ranker> rankers;
    if (!f.no_cc) {
        CriterionConfig cc = base;
        cc.kind = CriterionKind::CC;
        rankers.push_back(make_criterion_ranker("s-CC", cc));
    }
    for (double alpha : f.alphas) {
        CriterionConfig npc = base;
        npc.kind = CriterionKind::NPC;
        npc.alpha = alpha;
        rankers.push_back(make_criterion_ranker("s-NPC(" + fmt(alpha) + ")", npc));
    }
    if (f.baselines) {
        rankers.push_back(make_baseline_ranker(BaselineKind::PearsonCorrelation));
        rankers.push_back(make_baseline_ranker(BaselineKind::DistanceCorrelation));
        rankers.push_back(make_baseline_ranker(BaselineKind::WelchT));
        rankers.push_back(make_baseline_ranker(BaselineKind::WilcoxonRankSum));
    }

    const ExperimentReport report = run_rank_frequency(spec, rankers, f.reps);

    std::vector<std::pair<std::string, std::string>> header = {
        {"subcommand", "simulate"},  {"model", f.model},
        {"n", std::to_string(f.n)},  {"reps", std::to_string(f.reps)},
        {"seed", std::to_string(f.seed)}, {"delta1", fmt(f.delta1)},
        {"splits", std::to_string(f.splits)}, {"bandwidth", f.bandwidth},
        {"kernel", f.kernel},        {"baselines", f.baselines ? "true" : "false"}};
    {
        std::ostringstream alphas;
        for (std::size_t i = 0; i < f.alphas.size(); ++i)
            alphas << (i ? "," : "") << fmt(f.alphas[i]);
        header.emplace_back("alphas", alphas.str());
    }

    OutputTarget target(f.out_tsv);
    std::ostream& out = target.stream();
    write_config_header(out, header);
    out << "ranker\tmetric";
    for (std::size_t j = 0; j < report.n_features; ++j) out << "\tf" << (j + 1);
    out << "\n";
    for (const auto& rr : report.rankers) {
        out << rr.name << "\ttop_frequency";
        for (double v : rr.top_frequency) out << "\t" << fmt(v);
        out << "\n" << rr.name << "\taverage_rank";
        for (double v : rr.average_rank) out << "\t" << fmt(v);
        out << "\n";
    }

    if (!f.out_json.empty()) {
        nlohmann::json j;
        for (const auto& [key, value] : header) j["config"][key] = value;
        j["reps"] = report.reps;
        j["n_features"] = report.n_features;
        for (const auto& rr : report.rankers) {
            nlohmann::json jr;
            jr["name"] = rr.name;
            jr["top_frequency"] = rr.top_frequency;
            jr["average_rank"] = rr.average_rank;
            jr["rank_histogram"] = rr.rank_histogram;
            j["rankers"].push_back(std::move(jr));
        }
        std::ofstream jf(f.out_json);
        if (!jf) throw std::runtime_error("cannot open output file: " + f.out_json);
        jf << j.dump(2) << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- oracle ----

struct OracleGaussianFlags {
    double mu0 = 0, sigma0 = 1, mu1 = 0, sigma1 = 1;
    double alpha = 0.05;
    double pi0 = 0.5;
};

int cmd_oracle_np(const OracleGaussianFlags& f) {
    if (f.sigma0 <= 0 || f.sigma1 <= 0) {
        std::cerr << "error: --sigma0 and --sigma1 must be positive\n";
        return 2;
    }
    std::cout << fmt(gaussian_np_type2({f.mu0, f.sigma0, f.mu1, f.sigma1}, f.alpha)) << "\n";
    return 0;
}

int cmd_oracle_classical(const OracleGaussianFlags& f) {
    if (f.sigma0 <= 0 || f.sigma1 <= 0) {
        std::cerr << "error: --sigma0 and --sigma1 must be positive\n";
        return 2;
    }
    std::cout << fmt(gaussian_classical_risk({f.mu0, f.sigma0, f.mu1, f.sigma1}, f.pi0)) << "\n";
    return 0;
}

struct OracleMcFlags {
    std::string model;
    std::string criterion = "cc";
    double alpha = 0.05;
    std::size_t sample_size = 1000000;
    std::uint64_t seed = 0;
};

int cmd_oracle_mc(const OracleMcFlags& f) {
    const auto kind = parse_model_kind(f.model);
    if (!kind) {
        std::cerr << "error: unknown model '" << f.model << "'\n";
        return 2;
    }
    const auto criterion =
        f.criterion == "cc" ? PopulationCriterion::CC : PopulationCriterion::NPC;
    const auto values = mc_population_criterion(*kind, criterion, f.alpha, f.sample_size, f.seed);
    for (std::size_t j = 0; j < values.size(); ++j)
        std::cout << "f" << (j + 1) << "\t" << fmt(values[j]) << "\n";
    return 0;
}

// --------------------------------------------------------- consistency ----

struct ConsistencyFlags {
    std::string ranks_a, ranks_b;
    std::string input, label_col;
    std::string protocol;
    std::string output = "-";
    std::uint64_t seed = 0;
    double alpha = 0.10;
    double delta1 = 0.05;
    std::size_t splits = 11;
    unsigned threads = 1;
};

RankList read_rank_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rank file: " + path);
    RankList list;
    std::string line;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string rank, feature;
        if (!(ss >> rank >> feature)) continue;
        if (!header_skipped && rank == "rank") {
            header_skipped = true;
            continue;
        }
        list.push_back(feature);
    }
    return list;
}

int cmd_consistency(const ConsistencyFlags& f) {
    OutputTarget target(f.output);
    std::ostream& out = target.stream();

    if (!f.ranks_a.empty() && !f.ranks_b.empty()) {
        const auto curve = consistency_curve(read_rank_file(f.ranks_a), read_rank_file(f.ranks_b));
        write_config_header(out, {{"subcommand", "consistency"},
                                  {"ranks_a", f.ranks_a},
                                  {"ranks_b", f.ranks_b}});
        out << "j\tconsistency\n";
        for (std::size_t j = 0; j < curve.size(); ++j)
            out << (j + 1) << "\t" << fmt(curve[j]) << "\n";
        return 0;
    }

    if (f.protocol == "paper") {
        if (f.input.empty() || f.label_col.empty()) {
            std::cerr << "error: --protocol paper requires --input and --label-col\n";
            return 2;
        }
        const Dataset dataset = load_csv(f.input, f.label_col);
        CriterionConfig cc;
        cc.kind = CriterionKind::CC;
        cc.B = f.splits;
        cc.seed = f.seed;
        cc.threads = f.threads;
        CriterionConfig npc = cc;
        npc.kind = CriterionKind::NPC;
        npc.alpha = f.alpha;
        npc.delta1 = f.delta1;
        const auto report = bias_robustness_report(dataset, cc, npc, f.seed);
        write_config_header(out, {{"subcommand", "consistency"},
                                  {"input", f.input},
                                  {"label_column", f.label_col},
                                  {"protocol", "paper"},
                                  {"alpha", fmt(f.alpha)},
                                  {"delta1", fmt(f.delta1)},
                                  {"splits", std::to_string(f.splits)},
                                  {"seed", std::to_string(f.seed)}});
        out << "j\tcc\tnpc\n";
        for (std::size_t j = 0; j < report.cc_curve.size(); ++j)
            out << (j + 1) << "\t" << fmt(report.cc_curve[j]) << "\t"
                << fmt(report.npc_curve[j]) << "\n";
        return 0;
    }

    std::cerr << "error: provide --ranks-a/--ranks-b or --protocol paper\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prediction-objective feature ranking for binary datasets"};
    app.require_subcommand(1);

    RankFlags rank_flags;
    auto* rank = app.add_subcommand("rank", "Rank features of a labeled CSV");
    rank->add_option("--input", rank_flags.input, "input CSV")->required();
    rank->add_option("--label-col", rank_flags.label_col, "label column name")->required();
    rank->add_option("--criterion", rank_flags.criterion, "cc | npc");
    rank->add_option("--alpha", rank_flags.alpha, "type I error cap (npc)");
    rank->add_option("--delta1", rank_flags.delta1, "violation rate (npc)");
    rank->add_option("--splits", rank_flags.splits, "number of random splits B");
    rank->add_option("--seed", rank_flags.seed, "RNG seed")->required();
    rank->add_option("--bandwidth", rank_flags.bandwidth, "paper | silverman");
    rank->add_option("--kernel", rank_flags.kernel, "gaussian | epanechnikov");
    rank->add_option("--prior-ratio", rank_flags.prior_ratio, "known pi0/pi1 (cc)");
    rank->add_option("--threads", rank_flags.threads, "worker threads (0 = auto)");
    rank->add_option("--output", rank_flags.output, "output TSV path ('-' = stdout)");
    rank->add_flag("--swap-classes", rank_flags.swap_classes,
                   "treat label 1 as the error-controlled class");

    SimulateFlags sim_flags;
    auto* sim = app.add_subcommand("simulate", "Run a seeded ranking experiment");
    sim->add_option("model", sim_flags.model, "toy|gauss30|chisq30|gauss500|mixture2d")
        ->required();
    sim->add_option("--n", sim_flags.n, "sample size per repetition");
    sim->add_option("--reps", sim_flags.reps, "number of repetitions");
    sim->add_option("--seed", sim_flags.seed, "RNG seed")->required();
    sim->add_option("--alphas", sim_flags.alphas, "s-NPC alpha levels");
    sim->add_option("--delta1", sim_flags.delta1, "violation rate");
    sim->add_option("--splits", sim_flags.splits, "number of random splits B");
    sim->add_option("--bandwidth", sim_flags.bandwidth, "paper | silverman");
    sim->add_option("--kernel", sim_flags.kernel, "gaussian | epanechnikov");
    sim->add_flag("--baselines", sim_flags.baselines, "include the four baseline rankers");
    sim->add_flag("--no-cc", sim_flags.no_cc, "skip the s-CC ranker");
    sim->add_option("--threads", sim_flags.threads, "worker threads (0 = auto)");
    sim->add_option("--out-tsv", sim_flags.out_tsv, "report TSV path ('-' = stdout)");
    sim->add_option("--out-json", sim_flags.out_json, "report JSON path");

    auto* oracle = app.add_subcommand("oracle", "Closed-form and Monte Carlo oracles");
    oracle->require_subcommand(1);
    OracleGaussianFlags og;
    auto* onp = oracle->add_subcommand("gaussian-np", "NP oracle type II error");
    onp->add_option("--mu0", og.mu0)->required();
    onp->add_option("--sigma0", og.sigma0)->required();
    onp->add_option("--mu1", og.mu1)->required();
    onp->add_option("--sigma1", og.sigma1)->required();
    onp->add_option("--alpha", og.alpha)->required();
    auto* ocl = oracle->add_subcommand("classical", "classical oracle risk");
    ocl->add_option("--mu0", og.mu0)->required();
    ocl->add_option("--sigma0", og.sigma0)->required();
    ocl->add_option("--mu1", og.mu1)->required();
    ocl->add_option("--sigma1", og.sigma1)->required();
    ocl->add_option("--pi0", og.pi0)->required();
    OracleMcFlags omc;
    auto* omcc = oracle->add_subcommand("mc", "Monte Carlo population criterion");
    omcc->add_option("model", omc.model, "generative model id")->required();
    omcc->add_option("--criterion", omc.criterion, "cc | npc");
    omcc->add_option("--alpha", omc.alpha, "type I error cap (npc)");
    omcc->add_option("--sample-size", omc.sample_size, "approximation sample size");
    omcc->add_option("--seed", omc.seed, "RNG seed")->required();

    ConsistencyFlags cons_flags;
    auto* cons = app.add_subcommand("consistency", "Rank-list consistency analysis");
    cons->add_option("--ranks-a", cons_flags.ranks_a, "first rank TSV");
    cons->add_option("--ranks-b", cons_flags.ranks_b, "second rank TSV");
    cons->add_option("--input", cons_flags.input, "input CSV (protocol mode)");
    cons->add_option("--label-col", cons_flags.label_col, "label column (protocol mode)");
    cons->add_option("--protocol", cons_flags.protocol, "'paper' = subsampling protocol");
    cons->add_option("--seed", cons_flags.seed, "RNG seed");
    cons->add_option("--alpha", cons_flags.alpha, "s-NPC alpha (protocol mode)");
    cons->add_option("--delta1", cons_flags.delta1, "violation rate (protocol mode)");
    cons->add_option("--splits", cons_flags.splits, "number of random splits B");
    cons->add_option("--threads", cons_flags.threads, "worker threads (0 = auto)");
    cons->add_option("--output", cons_flags.output, "output TSV path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rank->parsed()) return cmd_rank(rank_flags);
        if (sim->parsed()) return cmd_simulate(sim_flags);
        if (oracle->parsed()) {
            if (onp->parsed()) return cmd_oracle_np(og);
            if (ocl->parsed()) return cmd_oracle_classical(og);
            if (omcc->parsed()) return cmd_oracle_mc(omc);
        }
        if (cons->parsed()) return cmd_consistency(cons_flags);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MissingLabelColumn& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonBinaryLabel& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonNumericCell& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UniverseMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// evim: evidential influence maximization from the command line.
//
//   evim gen       --out DIR [--nodes N --edges M --outlink-min D --min-influence X --seed S]
//   evim estimate  --data DIR --out DIR [--alpha A --beta B --no-update-step]
//   evim select    --data DIR --model ev1 --k 50 --out DIR
//   evim benchmark --out DIR [--min-influence-sweep 0.1,0.3 --repetitions 10 --k 50]
//
// Options may also come from a key = value file given with --config; flags
// on the command line take precedence.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evim/benchmark.hpp"
#include "evim/diffusion.hpp"
#include "evim/errors.hpp"
#include "evim/format.hpp"
#include "evim/influence.hpp"
#include "evim/seed_selection.hpp"
#include "evim/social_graph.hpp"
#include "evim/weighting.hpp"

namespace fs = std::filesystem;
using namespace evim;

namespace {

constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Model { UnIcm, TvIcm, WcIcm, Ltm, Cd, Ev1, Ev2 };

const std::map<std::string, Model> kModels{
    {"un_icm", Model::UnIcm}, {"tv_icm", Model::TvIcm}, {"wc_icm", Model::WcIcm},
    {"ltm", Model::Ltm},      {"cd", Model::Cd},        {"ev1", Model::Ev1},
    {"ev2", Model::Ev2}};

struct Config {
    // inputs
    std::string data_dir;
    std::string follow_file, tweet_file, action_file;
    bool strict = false;
    // estimator
    double alpha = 0.1;
    double beta = 0.1;
    bool no_update_step = false;
    std::string aggregation = "sum";
    // selection
    std::string model = "ev1";
    std::size_t k = 50;
    std::optional<int> level;
    std::size_t runs = 10000;
    std::uint64_t seed = 1;
    double p = 0.01;
    double ltm_weight = 0.01;
    bool exact_gain = false;
    // synthetic data
    std::size_t nodes = 1010;
    std::size_t edges = 6906;
    std::size_t outlink_min = 15;
    double min_influence = 0.1;
    std::vector<double> sweep{0.1, 0.3, 0.5, 0.7, 0.9};
    std::size_t repetitions = 10;
    std::string source = "planted";
    // output
    std::string out = ".";
};

struct Inputs {
    fs::path follows, tweets, actions;
};

Inputs input_paths(const Config &c) {
    Inputs in;
    if (!c.data_dir.empty()) {
        in = {fs::path(c.data_dir) / "follows.tsv", fs::path(c.data_dir) / "tweets.tsv",
              fs::path(c.data_dir) / "actions.tsv"};
    }
    if (!c.follow_file.empty()) in.follows = c.follow_file;
    if (!c.tweet_file.empty()) in.tweets = c.tweet_file;
    if (!c.action_file.empty()) in.actions = c.action_file;
    if (in.follows.empty() || in.tweets.empty() || in.actions.empty()) {
        throw UsageError("input files required: pass --data DIR or --follows/--tweets/--actions");
    }
    for (const auto &p : {in.follows, in.tweets, in.actions}) {
        if (!fs::is_regular_file(p)) {
            throw MissingFile(p.string());
        }
    }
    return in;
}

SocialGraph load_graph(const Config &c) {
    const Inputs in = input_paths(c);
    const ActivityLog log = load_activity_log(in.follows, in.tweets, in.actions, {c.strict});
    for (const auto &r : log.rejections) {
        std::cerr << "warning: " << r.file << ":" << r.line << ": " << r.reason << "\n";
    }
    return build_graph(log);
}

EstimatorParams estimator_params(const Config &c) {
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0) || !(c.beta >= 0.0 && c.beta <= 1.0)) {
        throw UsageError("alpha and beta must lie in [0, 1]");
    }
    EstimatorParams p;
    p.alpha = c.alpha;
    p.beta = c.beta;
    p.use_update_step = !c.no_update_step;
    p.aggregation = c.aggregation == "mean" ? Aggregation::Mean : Aggregation::Sum;
    return p;
}

Estimate run_estimator(const SocialGraph &g, const Config &c) {
    Estimate est = estimate_influence(g, estimator_params(c));
    for (const auto &d : est.weights.diagnostics) {
        std::cerr << "warning: " << d << "\n";
    }
    return est;
}

fs::path output_dir(const Config &c) {
    fs::path dir(c.out);
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_output(const fs::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path.string());
    }
    return out;
}

double millis(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

int cmd_gen(const Config &c) {
    SyntheticSpec spec{c.nodes, c.edges, c.outlink_min, c.min_influence, c.seed};
    const SyntheticData data = generate_synthetic(spec);
    const fs::path dir = output_dir(c);
    auto follows = open_output(dir / "follows.tsv");
    auto tweets = open_output(dir / "tweets.tsv");
    auto actions = open_output(dir / "actions.tsv");
    write_follows(follows, data.log);
    write_tweets(tweets, data.log);
    write_actions(actions, data.log);
    auto truth = open_output(dir / "planted.csv");
    truth << "node\n";
    for (NodeId v : data.truth.influencers) {
        truth << data.graph.name(v) << "\n";
    }
    auto field = open_output(dir / "influence_truth.csv");
    write_influence_csv(field, data.graph.names(), data.field);
    std::cout << "nodes " << data.graph.node_count() << ", edges " << data.graph.edge_count()
              << ", planted influencers " << data.truth.influencers.size() << "\n";
    return 0;
}

int cmd_estimate(const Config &c) {
    const SocialGraph g = load_graph(c);
    const auto start = std::chrono::steady_clock::now();
    const Estimate est = run_estimator(g, c);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const fs::path dir = output_dir(c);
    auto inf = open_output(dir / "influence.csv");
    write_influence_csv(inf, g.names(), est.field);
    auto w = open_output(dir / "weights.csv");
    write_weights_csv(w, g, est.weights.edges);

    const auto values = est.field.values();
    std::cout << "nodes " << g.node_count() << ", edges " << g.edge_count();
    if (!values.empty()) {
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        std::cout << ", inf min " << format_real(*lo) << ", max " << format_real(*hi);
    }
    std::cout << ", " << millis(elapsed) << " ms\n";
    return 0;
}

SeedResult select_seeds(const SocialGraph &g, const Estimate &est, Model model, const Config &c) {
    const Digraph &t = g.topology();
    switch (model) {
    case Model::Ev1:
    case Model::Ev2: {
        SelectionOptions opt;
        opt.level = model == Model::Ev1 ? Level::One : Level::Two;
        opt.gain = c.exact_gain ? GainMode::Exact : GainMode::ClosedForm;
        return celf_select(est.field, c.k, opt);
    }
    case Model::Cd:
        return cd_select(est.field, c.k);
    case Model::UnIcm:
        return mc_greedy_select(t, SpreadModel::icm(t, EdgeProbScheme::uniform(c.p)), c.k, c.runs, c.seed);
    case Model::TvIcm:
        return mc_greedy_select(t, SpreadModel::icm(t, EdgeProbScheme::trivalency(c.seed)), c.k,
                                c.runs, c.seed);
    case Model::WcIcm:
        return mc_greedy_select(t, SpreadModel::icm(t, EdgeProbScheme::weighted_cascade()), c.k,
                                c.runs, c.seed);
    case Model::Ltm:
        return mc_greedy_select(t, SpreadModel::ltm(t, c.ltm_weight), c.k, c.runs, c.seed);
    }
    throw UsageError("unknown model");
}

int cmd_select(const Config &c) {
    const Model model = kModels.at(c.model);
    if (c.level && (model == Model::Ev1 || model == Model::Ev2) &&
        *c.level != (model == Model::Ev1 ? 1 : 2)) {
        throw UsageError("--level " + std::to_string(*c.level) + " contradicts --model " + c.model);
    }
    if (c.runs == 0) {
        throw UsageError("--runs must be at least 1");
    }
    const SocialGraph g = load_graph(c);
    if (c.k < 1 || c.k > g.node_count()) {
        throw KTooLarge("k = " + std::to_string(c.k) + " must lie in [1, " +
                        std::to_string(g.node_count()) + "]");
    }
    const auto start = std::chrono::steady_clock::now();
    const Estimate est = run_estimator(g, c);
    const SeedResult result = select_seeds(g, est, model, c);
    const auto elapsed = std::chrono::steady_clock::now() - start;

    const fs::path dir = output_dir(c);
    auto seeds = open_output(dir / "seeds.csv");
    write_seeds_csv(seeds, g.names(), result);
    auto criteria = open_output(dir / "criteria.csv");
    write_criteria_csv(criteria, criteria_curves(g, result.seeds));
    auto affected = open_output(dir / "affected.csv");
    write_affected_csv(affected, affected_nodes(est.field, result.seeds));

    std::cout << "model " << c.model << ", k " << c.k << ", sigma " << format_real(result.sigma_curve.back())
              << ", selection " << millis(result.elapsed) << " ms, total " << millis(elapsed)
              << " ms\n";
    return 0;
}

int cmd_benchmark(const Config &c) {
    if (c.source != "planted" && c.source != "estimated") {
        throw UsageError("--source must be planted or estimated");
    }
    AccuracyConfig cfg;
    cfg.base = {c.nodes, c.edges, c.outlink_min, c.min_influence, c.seed};
    cfg.min_influences = c.sweep;
    cfg.repetitions = c.repetitions;
    cfg.k = c.k;
    cfg.source = c.source == "planted" ? FieldSource::Planted : FieldSource::Estimated;
    cfg.params = estimator_params(c);
    const fs::path dir = output_dir(c);
    for (Level level : {Level::One, Level::Two}) {
        cfg.level = level;
        const auto rows = accuracy_sweep(cfg);
        const std::string name = level == Level::One ? "ev1" : "ev2";
        auto out = open_output(dir / ("accuracy_" + name + ".csv"));
        write_accuracy_csv(out, rows);
        for (const auto &row : rows) {
            std::cout << name << " min_influence " << format_real(row.min_influence) << ": hit ratio "
                      << format_real(row.mean_hit_ratio) << " +- " << format_real(row.std) << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Evidential influence maximization"};
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.require_subcommand(1);
    Config c;

    auto *inputs = app.add_option_group("Inputs");
    inputs->add_option("--data", c.data_dir, "Directory with follows.tsv, tweets.tsv, actions.tsv");
    inputs->add_option("--follows", c.follow_file, "follower<TAB>followee file");
    inputs->add_option("--tweets", c.tweet_file, "user<TAB>tweet_id file");
    inputs->add_option("--actions", c.action_file, "RT/MENTION action file");
    inputs->add_flag("--strict", c.strict, "Fail on the first malformed line");

    auto *est = app.add_option_group("Estimator");
    est->add_option("--alpha", c.alpha, "Node-level ignorance")->capture_default_str();
    est->add_option("--beta", c.beta, "Link-level ignorance")->capture_default_str();
    est->add_flag("--no-update-step", c.no_update_step, "Skip the belief update of link weights");
    est->add_option("--aggregation", c.aggregation, "Node weight aggregation")
        ->check(CLI::IsMember({"sum", "mean"}))
        ->capture_default_str();

    auto *sel = app.add_option_group("Selection");
    std::vector<std::string> model_names;
    for (const auto &[name, _] : kModels) model_names.push_back(name);
    sel->add_option("--model", c.model, "Selection model")
        ->check(CLI::IsMember(model_names))
        ->capture_default_str();
    sel->add_option("--k", c.k, "Seed set size")->capture_default_str();
    sel->add_option("--level", c.level, "Influence levels for evidential models")
        ->check(CLI::IsMember({1, 2}));
    sel->add_option("--runs", c.runs, "Monte Carlo runs")->capture_default_str();
    sel->add_option("--seed", c.seed, "Master random seed")->capture_default_str();
    sel->add_option("--p", c.p, "Uniform ICM edge probability")->capture_default_str();
    sel->add_option("--ltm-weight", c.ltm_weight, "Uniform LTM edge weight")->capture_default_str();
    sel->add_flag("--exact-gain", c.exact_gain, "Use spread differences instead of closed-form gains");

    auto *syn = app.add_option_group("Synthetic data");
    syn->add_option("--nodes", c.nodes)->capture_default_str();
    syn->add_option("--edges", c.edges)->capture_default_str();
    syn->add_option("--outlink-min", c.outlink_min, "Out-degree that makes a planted influencer")
        ->capture_default_str();
    syn->add_option("--min-influence", c.min_influence)->capture_default_str();
    syn->add_option("--min-influence-sweep", c.sweep, "Levels swept by benchmark")->delimiter(',');
    syn->add_option("--repetitions", c.repetitions)->capture_default_str();
    syn->add_option("--source", c.source, "Field used by benchmark: planted or estimated")
        ->capture_default_str();

    app.add_option("--out", c.out, "Output directory")->capture_default_str();

    std::function<int(const Config &)> command;
    auto sub = [&](const char *name, const char *help, int (*fn)(const Config &)) {
        app.add_subcommand(name, help)->fallthrough()->callback([&command, fn] { command = fn; });
    };
    sub("gen", "Generate a synthetic activity log with planted influencers", cmd_gen);
    sub("estimate", "Estimate per-edge influence", cmd_estimate);
    sub("select", "Select seeds", cmd_select);
    sub("benchmark", "Hit-ratio accuracy on synthetic data", cmd_benchmark);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return command(c);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MissingFile &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const evim::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const KTooLarge &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InfeasibleSpec &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownNode &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateScale &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}

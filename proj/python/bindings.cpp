#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <chrono>

#include "evim/belief.hpp"
#include "evim/benchmark.hpp"
#include "evim/diffusion.hpp"
#include "evim/errors.hpp"
#include "evim/influence.hpp"
#include "evim/seed_selection.hpp"
#include "evim/social_graph.hpp"
#include "evim/weighting.hpp"

namespace py = pybind11;
using namespace evim;

namespace {

using Triple = std::tuple<NodeId, NodeId, double>;

std::vector<Triple> field_edges(const InfluenceField &f) {
    std::vector<Triple> out;
    out.reserve(f.edge_count());
    for (EdgeId e = 0; e < f.edge_count(); ++e) {
        out.emplace_back(f.topology().arc(e).src, f.topology().arc(e).dst, f.value(e));
    }
    return out;
}

SpreadModel spread_model(const Digraph &g, const std::string &model, double p, std::uint64_t seed) {
    if (model == "un_icm") return SpreadModel::icm(g, EdgeProbScheme::uniform(p));
    if (model == "tv_icm") return SpreadModel::icm(g, EdgeProbScheme::trivalency(seed));
    if (model == "wc_icm") return SpreadModel::icm(g, EdgeProbScheme::weighted_cascade());
    if (model == "ltm") return SpreadModel::ltm(g, p);
    throw py::value_error("model must be one of un_icm, tv_icm, wc_icm, ltm");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Evidential influence maximization";

    auto error = py::register_exception<Error>(m, "EvimError", PyExc_RuntimeError);
    py::register_exception<NotNormalized>(m, "NotNormalized", error);
    py::register_exception<NegativeMass>(m, "NegativeMass", error);
    py::register_exception<TotalConflict>(m, "TotalConflict", error);
    py::register_exception<MissingFile>(m, "MissingFile", error);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<UnknownNode>(m, "UnknownNode", error);
    py::register_exception<DegenerateScale>(m, "DegenerateScale", error);
    py::register_exception<AlreadySeed>(m, "AlreadySeed", error);
    py::register_exception<KTooLarge>(m, "KTooLarge", error);
    py::register_exception<TooLargeToEnumerate>(m, "TooLargeToEnumerate", error);
    py::register_exception<InfeasibleSpec>(m, "InfeasibleSpec", error);

    py::enum_<Level>(m, "Level").value("One", Level::One).value("Two", Level::Two);
    py::enum_<Saturation>(m, "Saturation")
        .value("Uncapped", Saturation::None)
        .value("Unit", Saturation::Unit);
    py::enum_<GainMode>(m, "GainMode")
        .value("ClosedForm", GainMode::ClosedForm)
        .value("Exact", GainMode::Exact);

    // belief_core
    py::class_<Bba>(m, "Bba")
        .def(py::init(&Bba::make), py::arg("mass_i"), py::arg("mass_p"), py::arg("mass_ip"))
        .def_static("vacuous", &Bba::vacuous)
        .def_property_readonly("mass_i", &Bba::mass_i)
        .def_property_readonly("mass_p", &Bba::mass_p)
        .def_property_readonly("mass_ip", &Bba::mass_ip)
        .def(py::self == py::self)
        .def("__repr__", [](const Bba &b) {
            return "Bba(" + std::to_string(b.mass_i()) + ", " + std::to_string(b.mass_p()) + ", " +
                   std::to_string(b.mass_ip()) + ")";
        });
    m.def("conflict", &conflict);
    m.def("combine_dempster", &combine_dempster);
    m.def("pignistic", [](const Bba &b) {
        const Pignistic p = pignistic(b);
        return std::make_pair(p.betp_i, p.betp_p);
    }, "Returns (BetP(I), BetP(P)).");

    // social_graph
    py::class_<Digraph>(m, "Digraph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<NodeId, NodeId>> &arcs) {
                 std::vector<Arc> a;
                 for (const auto &[u, v] : arcs) a.push_back({u, v});
                 return Digraph(n, std::move(a));
             }),
             py::arg("node_count"), py::arg("arcs"))
        .def_property_readonly("node_count", &Digraph::node_count)
        .def_property_readonly("edge_count", &Digraph::edge_count)
        .def("arcs", [](const Digraph &g) {
            std::vector<std::pair<NodeId, NodeId>> out;
            for (const Arc &a : g.arcs()) out.emplace_back(a.src, a.dst);
            return out;
        });

    py::class_<SocialGraph>(m, "SocialGraph")
        .def_property_readonly("node_count", &SocialGraph::node_count)
        .def_property_readonly("edge_count", &SocialGraph::edge_count)
        .def_property_readonly("topology", &SocialGraph::topology, py::return_value_policy::reference_internal)
        .def_property_readonly("names", [](const SocialGraph &g) {
            return std::vector<std::string>(g.names().begin(), g.names().end());
        })
        .def("id", &SocialGraph::id)
        .def("name", &SocialGraph::name);

    m.def("load_graph",
          [](const std::filesystem::path &follows, const std::filesystem::path &tweets,
             const std::filesystem::path &actions, bool strict) {
              return build_graph(load_activity_log(follows, tweets, actions, {strict}));
          },
          py::arg("follows"), py::arg("tweets"), py::arg("actions"), py::arg("strict") = false,
          "Loads the three activity files and builds the graph.");

    // influence_model
    py::class_<InfluenceField>(m, "InfluenceField")
        .def_static("from_edges",
                    [](std::size_t n, const std::vector<Triple> &edges) {
                        return InfluenceField::from_edges(n, edges);
                    },
                    py::arg("node_count"), py::arg("edges"))
        .def_property_readonly("node_count", &InfluenceField::node_count)
        .def_property_readonly("edge_count", &InfluenceField::edge_count)
        .def("edges", &field_edges, "List of (src, dst, inf).")
        .def("__call__", &InfluenceField::operator(), py::arg("u"), py::arg("v"))
        .def(py::self == py::self);

    m.def("estimate_influence",
          [](const SocialGraph &g, double alpha, double beta, bool use_update_step) {
              EstimatorParams p;
              p.alpha = alpha;
              p.beta = beta;
              p.use_update_step = use_update_step;
              return estimate_influence(g, p).field;
          },
          py::arg("graph"), py::arg("alpha") = 0.1, py::arg("beta") = 0.1,
          py::arg("use_update_step") = true);
    m.def("influence_of_set",
          [](const InfluenceField &f, const std::vector<NodeId> &seeds, NodeId v, Level level) {
              return level == Level::One ? influence_of_set_l1(f, seeds, v)
                                         : influence_of_set_l2(f, seeds, v);
          },
          py::arg("field"), py::arg("seeds"), py::arg("v"), py::arg("level") = Level::One);
    m.def("sigma_bel",
          [](const InfluenceField &f, const std::vector<NodeId> &seeds, Level level, Saturation s) {
              return sigma_bel(f, seeds, level, s);
          },
          py::arg("field"), py::arg("seeds"), py::arg("level") = Level::One,
          py::arg("saturation") = Saturation::None);

    // seed_selection
    py::class_<SeedResult>(m, "SeedResult")
        .def_readonly("seeds", &SeedResult::seeds)
        .def_readonly("marginal_gains", &SeedResult::marginal_gains)
        .def_readonly("sigma_curve", &SeedResult::sigma_curve)
        .def_readonly("gain_evaluations", &SeedResult::gain_evaluations)
        .def_property_readonly("elapsed_ms", [](const SeedResult &r) {
            return std::chrono::duration<double, std::milli>(r.elapsed).count();
        });

    auto options = [](Level level, GainMode gain, Saturation s) {
        return SelectionOptions{level, gain, s};
    };
    m.def("celf_select",
          [options](const InfluenceField &f, std::size_t k, Level level, GainMode gain, Saturation s) {
              return celf_select(f, k, options(level, gain, s));
          },
          py::arg("field"), py::arg("k"), py::arg("level") = Level::One,
          py::arg("gain") = GainMode::ClosedForm, py::arg("saturation") = Saturation::None);
    m.def("naive_greedy",
          [options](const InfluenceField &f, std::size_t k, Level level, GainMode gain, Saturation s) {
              return naive_greedy(f, k, options(level, gain, s));
          },
          py::arg("field"), py::arg("k"), py::arg("level") = Level::One,
          py::arg("gain") = GainMode::ClosedForm, py::arg("saturation") = Saturation::None);
    m.def("exhaustive_opt",
          [](const InfluenceField &f, std::size_t k, Level level, Saturation s) {
              const auto r = exhaustive_opt(f, k, level, s);
              return std::make_pair(r.seeds, r.sigma);
          },
          py::arg("field"), py::arg("k"), py::arg("level") = Level::One,
          py::arg("saturation") = Saturation::None);

    // diffusion_baselines
    m.def("mc_spread",
          [](const Digraph &g, const std::vector<NodeId> &seeds, const std::string &model, double p,
             std::size_t runs, std::uint64_t seed) {
              const auto est = mc_spread(g, spread_model(g, model, p, seed), seeds, runs, seed);
              return std::make_pair(est.mean, est.std_error);
          },
          py::arg("graph"), py::arg("seeds"), py::arg("model") = "un_icm", py::arg("p") = 0.01,
          py::arg("runs") = 10000, py::arg("seed") = 1, "Returns (mean, std_error).");
    m.def("mc_greedy_select",
          [](const Digraph &g, std::size_t k, const std::string &model, double p, std::size_t runs,
             std::uint64_t seed) {
              return mc_greedy_select(g, spread_model(g, model, p, seed), k, runs, seed);
          },
          py::arg("graph"), py::arg("k"), py::arg("model") = "un_icm", py::arg("p") = 0.01,
          py::arg("runs") = 10000, py::arg("seed") = 1);
    m.def("cd_spread", [](const InfluenceField &f, const std::vector<NodeId> &s) { return cd_spread(f, s); });
    m.def("cd_select", &cd_select, py::arg("field"), py::arg("k"));

    // benchmark_eval
    py::class_<SyntheticData>(m, "SyntheticData")
        .def_readonly("graph", &SyntheticData::graph)
        .def_readonly("field", &SyntheticData::field)
        .def_property_readonly("influencers",
                               [](const SyntheticData &d) { return d.truth.influencers; });
    m.def("generate_synthetic",
          [](std::size_t nodes, std::size_t edges, std::size_t outlink_min, double min_influence,
             std::uint64_t seed) {
              return generate_synthetic({nodes, edges, outlink_min, min_influence, seed});
          },
          py::arg("nodes") = 1010, py::arg("edges") = 6906, py::arg("outlink_min") = 15,
          py::arg("min_influence") = 0.1, py::arg("seed") = 1);
    m.def("hit_ratio",
          [](const std::vector<NodeId> &predicted, const SyntheticData &d, std::size_t k) {
              return hit_ratio(predicted, d.truth, k);
          },
          py::arg("predicted"), py::arg("data"), py::arg("k"));
    m.def("accuracy",
          [](double min_influence, std::size_t repetitions, std::size_t k, Level level,
             bool estimated, std::uint64_t seed) {
              AccuracyConfig cfg;
              cfg.base.seed = seed;
              cfg.min_influences = {min_influence};
              cfg.repetitions = repetitions;
              cfg.k = k;
              cfg.level = level;
              cfg.source = estimated ? FieldSource::Estimated : FieldSource::Planted;
              const AccuracyRow row = accuracy_sweep(cfg).front();
              return std::make_pair(row.mean_hit_ratio, row.std);
          },
          py::arg("min_influence") = 0.1, py::arg("repetitions") = 10, py::arg("k") = 50,
          py::arg("level") = Level::One, py::arg("estimated") = false, py::arg("seed") = 1,
          "Mean and sample std of the hit ratio over repetitions.");
}

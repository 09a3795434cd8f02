#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evim/digraph.hpp"
#include "evim/influence.hpp"
#include "evim/rng.hpp"
#include "evim/seed_selection.hpp"

namespace evim {

/// Edge activation probabilities for the independent cascade model.
struct EdgeProbScheme {
    enum class Kind { Uniform, Trivalency, WeightedCascade };

    Kind kind = Kind::Uniform;
    double p = 0.01;        ///< Uniform only
    std::uint64_t seed = 0; ///< Trivalency only

    static EdgeProbScheme uniform(double p) { return {Kind::Uniform, p, 0}; }
    static EdgeProbScheme trivalency(std::uint64_t seed) { return {Kind::Trivalency, 0.0, seed}; }
    static EdgeProbScheme weighted_cascade() { return {Kind::WeightedCascade, 0.0, 0}; }
};

inline constexpr double kTrivalencyChoices[3] = {0.1, 0.01, 0.001};

/// Uniform: p everywhere. Trivalency: i.i.d. uniform pick from
/// {0.1, 0.01, 0.001}. Weighted cascade: p(u, v) = 1 / D_u with D_u the
/// overall degree of u.
std::vector<double> edge_probabilities(const Digraph &g, const EdgeProbScheme &scheme);

/// One independent cascade. Edge e is live in this run when
/// rng.uniform(e) < probability[e]; each newly active node tries each
/// inactive out-neighbour once. Returns the activated nodes, seeds first.
std::vector<NodeId> run_icm(const Digraph &g, std::span<const double> probability,
                            std::span<const NodeId> seeds, const RandomStream &rng);

/// Linear threshold cascade with fixed thresholds: an inactive node v with
/// at least one active in-neighbour activates once the total weight from
/// active in-neighbours reaches threshold[v]. Iterates to the fixpoint.
std::vector<NodeId> run_ltm(const Digraph &g, std::span<const double> weight,
                            std::span<const NodeId> seeds, std::span<const double> threshold);

/// Linear threshold cascade with thresholds θ_v = rng.uniform(v), drawn
/// fresh for each stream.
std::vector<NodeId> run_ltm(const Digraph &g, std::span<const double> weight,
                            std::span<const NodeId> seeds, const RandomStream &rng);

struct SpreadModel {
    enum class Kind { IndependentCascade, LinearThreshold };

    Kind kind = Kind::IndependentCascade;
    std::vector<double> edge_values; ///< probabilities (ICM) or weights (LTM)

    static SpreadModel icm(const Digraph &g, const EdgeProbScheme &scheme) {
        return {Kind::IndependentCascade, edge_probabilities(g, scheme)};
    }
    /// Uniform edge weight ω.
    static SpreadModel ltm(const Digraph &g, double weight = 0.01) {
        return {Kind::LinearThreshold, std::vector<double>(g.edge_count(), weight)};
    }
};

struct SpreadEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean activated count over `runs` cascades; run r uses
/// RandomStream(master_seed, r). Throws evim::Error when runs == 0.
SpreadEstimate mc_spread(const Digraph &g, const SpreadModel &model, std::span<const NodeId> seeds,
                         std::size_t runs, std::uint64_t master_seed);

/// CELF greedy over the Monte Carlo spread. All candidates share the same
/// `runs` random worlds, so the result is deterministic given master_seed.
/// Ties break toward the smaller NodeId. Throws KTooLarge.
SeedResult mc_greedy_select(const Digraph &g, const SpreadModel &model, std::size_t k,
                            std::size_t runs, std::uint64_t master_seed);

// Credit distribution, single-action form: the direct credit of an edge is
// its influence value, and for v outside S
//   Γ(S, v) = sum over x in D_IN(v) of Inf1(S, x) Inf(x, v)
// where Inf1 is the one-level set influence. Γ(S, v) = 1 for v in S.

/// Γ(S, v).
double cd_credit(const InfluenceField &credits, std::span<const NodeId> seeds, NodeId v);
/// Σ_v Γ(S, v).
double cd_spread(const InfluenceField &credits, std::span<const NodeId> seeds);
/// CELF over Σ_v Γ(S, v) with exact marginal gains. Ties toward the smaller
/// NodeId. Throws KTooLarge.
SeedResult cd_select(const InfluenceField &credits, std::size_t k);

} // namespace evim

#pragma once

#include <algorithm>
#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "evim/belief.hpp"
#include "evim/digraph.hpp"
#include "evim/weighting.hpp"

namespace evim {

/// Per-edge influence Inf(u, v) in [0, 1], indexed by EdgeId of the
/// topology. Pairs without an edge have influence 0.
class InfluenceField {
  public:
    InfluenceField() = default;
    /// Throws evim::Error if a value lies outside [0, 1] or the sizes differ.
    InfluenceField(Digraph topology, std::vector<double> values);

    /// Builds the topology from (src, dst, inf) triples.
    static InfluenceField from_edges(std::size_t node_count,
                                     std::span<const std::tuple<NodeId, NodeId, double>> edges);

    const Digraph &topology() const { return topology_; }
    std::size_t node_count() const { return topology_.node_count(); }
    std::size_t edge_count() const { return topology_.edge_count(); }
    std::span<const double> values() const { return values_; }
    double value(EdgeId e) const { return values_[e]; }
    /// Inf(u, v); 0 when there is no edge.
    double operator()(NodeId u, NodeId v) const;

    friend bool operator==(const InfluenceField &a, const InfluenceField &b) {
        return std::ranges::equal(a.topology_.arcs(), b.topology_.arcs()) &&
               a.values_ == b.values_;
    }

  private:
    Digraph topology_;
    std::vector<double> values_;
};

struct EstimatorParams {
    double alpha = 0.1; ///< ignorance added to the node-level scale
    double beta = 0.1;  ///< ignorance added to the link-level scale
    bool use_update_step = true;
    Aggregation aggregation = Aggregation::Sum;
};

/// Per-node evidence: one BBA per relation, their combination
/// (follow ⊕ retweet) ⊕ mention, and the pignistic probability of I.
struct NodeBelief {
    Bba follow;
    Bba mention;
    Bba retweet;
    Bba combined;
    double betp_i = 0.5;
};

/// Min-max scaled BBA: m(I) = (w - lo)/s, m(P) = (hi - w)/s, remainder on
/// {I, P}, with s = hi - lo + ignorance.
Bba scaled_bba(double w, double lo, double hi, double ignorance);

/// Node-level step. Throws DegenerateScale when a relation has all node
/// weights equal and alpha = 0.
std::vector<NodeBelief> node_bbas(std::span<const WeightVector> node_weights, double alpha);

/// w'_x(u, v) = w_x(u, v) * BetP_v(I).
std::vector<WeightVector> update_link_weights(const Digraph &topology,
                                              std::span<const WeightVector> edge_weights,
                                              std::span<const double> betp_i);

/// Link-level step: min-max BBAs per relation over all edges, combined by
/// Dempster's rule; Inf(u, v) is the combined mass on {I}. Throws
/// DegenerateScale when a relation has all edge weights equal and beta = 0.
InfluenceField link_influence(const Digraph &topology, std::span<const WeightVector> edge_weights,
                              double beta);

/// Intermediate products of the estimator, kept for inspection and ablation.
struct Estimate {
    LinkWeights weights;
    std::vector<WeightVector> node_weights;
    std::vector<NodeBelief> nodes;
    std::vector<WeightVector> link_level_weights; ///< weights fed to the link step
    InfluenceField field;
};

/// Full estimator on precomputed link weights. When `params.use_update_step`
/// is false the link step runs on the raw weights.
Estimate estimate_influence(const Digraph &topology, LinkWeights weights,
                            const EstimatorParams &params = {});
/// Full estimator with whole-network link weights.
Estimate estimate_influence(const SocialGraph &g, const EstimatorParams &params = {});

enum class Level { One = 1, Two = 2 };

/// How the per-node credit Inf(S, v) enters the spread.
///   None: the raw sum, as printed; may exceed 1 for v outside S.
///   Unit: min(1, Inf(S, v)); a node never counts for more than a seed.
enum class Saturation { None, Unit };

/// Membership mask for a seed list.
std::vector<char> seed_mask(std::size_t node_count, std::span<const NodeId> seeds);

/// Inf(S, v) with one hop: 1 if v in S, else sum over u in S of Inf(u, v).
double influence_of_set_l1(const InfluenceField &field, std::span<const NodeId> seeds, NodeId v);

/// Inf(S, v) with two hops: 1 if v in S, else
/// sum over u in S of [Inf(u, v) + sum over a in D_IN(v) of Inf(u, a) Inf(a, v)].
/// The first term is the a = v slot with Inf(v, v) = 1; self-influence of u
/// is not counted in the a slot.
double influence_of_set_l2(const InfluenceField &field, std::span<const NodeId> seeds, NodeId v);

/// σ_Bel(S) = sum over v of Inf(S, v).
double sigma_bel(const InfluenceField &field, std::span<const NodeId> seeds, Level level,
                 Saturation saturation = Saturation::None);

/// CSV `src,dst,inf` using the graph's user names.
void write_influence_csv(std::ostream &out, std::span<const std::string> names,
                         const InfluenceField &field);

} // namespace evim

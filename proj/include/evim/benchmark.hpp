#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "evim/influence.hpp"
#include "evim/social_graph.hpp"

namespace evim {

struct SyntheticSpec {
    std::size_t n_nodes = 1010;
    std::size_t n_edges = 6906;
    std::size_t influencer_outlink_min = 15;
    double min_influence = 0.1;
    std::uint64_t seed = 1;
};

struct PlantedTruth {
    std::vector<NodeId> influencers; ///< sorted
    std::vector<char> is_influencer; ///< indexed by NodeId

    bool contains(NodeId v) const { return v < is_influencer.size() && is_influencer[v]; }
};

struct SyntheticData {
    ActivityLog log;
    SocialGraph graph;
    InfluenceField field; ///< ground-truth influence on graph.topology()
    PlantedTruth truth;
};

/// Directed preferential-attachment graph with exactly n_nodes nodes and
/// n_edges edges. Nodes named "0", "1", ... so NodeId equals the name.
/// Nodes with out-degree >= influencer_outlink_min are planted: their
/// out-edges get influence U[min_influence, 1], every other edge
/// U[0, min_influence). The activity log encodes each edge (u, v) as
/// u following v plus round(5 Inf) retweets and mentions of u by v.
/// Throws InfeasibleSpec for invalid sizes or when nothing gets planted.
SyntheticData generate_synthetic(const SyntheticSpec &spec);

/// |top-k(predicted) ∩ influencers| / k. Throws KTooLarge unless
/// 1 <= k <= |predicted|.
double hit_ratio(std::span<const NodeId> predicted, const PlantedTruth &truth, std::size_t k);

struct CriteriaCurve {
    std::vector<std::uint64_t> follow;
    std::vector<std::uint64_t> tweet;
    std::vector<std::uint64_t> mention;
    std::vector<std::uint64_t> retweet;
};

/// Prefix sums of follower count, tweet count, times mentioned and times
/// retweeted along the seed order. Throws UnknownNode.
CriteriaCurve criteria_curves(const SocialGraph &g, std::span<const NodeId> seeds);
/// CSV `rank,follow,tweet,mention,retweet`.
void write_criteria_csv(std::ostream &out, const CriteriaCurve &curve);

/// For each seed prefix, the number of distinct non-seed nodes reachable in
/// one or two hops over edges with Inf > 0. Throws UnknownNode.
std::vector<std::size_t> affected_nodes(const InfluenceField &field, std::span<const NodeId> seeds);
/// CSV `rank,affected`.
void write_affected_csv(std::ostream &out, std::span<const std::size_t> affected);

enum class FieldSource {
    Planted,  ///< select on the ground-truth field
    Estimated ///< select on the field estimated from the activity log
};

struct AccuracyConfig {
    SyntheticSpec base;
    std::vector<double> min_influences{0.1, 0.3, 0.5, 0.7, 0.9};
    std::size_t repetitions = 10;
    std::size_t k = 50;
    Level level = Level::One;
    FieldSource source = FieldSource::Planted;
    EstimatorParams params;
};

struct AccuracyRow {
    double min_influence = 0.0;
    double mean_hit_ratio = 0.0;
    double std = 0.0; ///< sample standard deviation
    std::vector<double> hit_ratios;
    std::vector<std::size_t> planted_counts;
};

/// Seed of repetition r derived from the base seed.
std::uint64_t repetition_seed(std::uint64_t base, std::size_t r);

/// For every min_influence level, generates `repetitions` graphs and scores
/// CELF selections of size k against the planted influencers.
std::vector<AccuracyRow> accuracy_sweep(const AccuracyConfig &config);
/// CSV `min_influence,mean_hit_ratio,std`.
void write_accuracy_csv(std::ostream &out, std::span<const AccuracyRow> rows);

} // namespace evim

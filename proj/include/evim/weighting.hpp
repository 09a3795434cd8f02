#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evim/social_graph.hpp"

namespace evim {

struct WeightVector {
    double follow = 0.0;
    double mention = 0.0;
    double retweet = 0.0;

    friend constexpr bool operator==(const WeightVector &, const WeightVector &) = default;
};

/// Per-edge weights, indexed by EdgeId of the graph topology, plus any
/// diagnostics raised while computing them.
struct LinkWeights {
    std::vector<WeightVector> edges;
    std::vector<std::string> diagnostics;
};

/// Weights normalized by whole-network maxima:
///   w_f = (|S_u ∩ P_v| + [u follows v]) / S_max
///   w_m = |M_v(u)| / M_max
///   w_r = |R_u(v)| / T_max
/// with S_max = max |S_u|, M_max = max |M_u|, T_max = max |T_u|. A component
/// whose maximum is zero is set to zero on every edge and reported in
/// diagnostics.
LinkWeights link_weights_global(const SocialGraph &g);

/// Source-relative weights:
///   w_f = (|S_u ∩ P_v| + [u follows v]) / |S_u|
///   w_m = |M_u(v)| / |M_u|
///   w_r = |R_u(v)| / |T_u|
/// Zero denominators give a zero component.
LinkWeights link_weights_local(const SocialGraph &g);

enum class Aggregation { Sum, Mean };

/// w_x(u) aggregated over the out-edges of u (sum by default; mean over
/// out-edges, zero for sinks, when requested).
std::vector<WeightVector> node_weights(const Digraph &topology,
                                       std::span<const WeightVector> edge_weights,
                                       Aggregation aggregation = Aggregation::Sum);

/// CSV `src,dst,w_f,w_m,w_r`.
void write_weights_csv(std::ostream &out, const SocialGraph &g,
                       std::span<const WeightVector> edge_weights);

} // namespace evim

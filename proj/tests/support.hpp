#pragma once

#include <algorithm>
#include <random>
#include <tuple>
#include <vector>

#include "evim/influence.hpp"

namespace testing {

using evim::NodeId;

// Random field on n nodes; each ordered pair is an edge with probability
// `density`, carrying a uniform [0, 1) influence.
inline evim::InfluenceField random_field(std::mt19937_64 &rng, std::size_t n, double density) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u != v && unit(rng) < density) {
                edges.emplace_back(u, v, unit(rng));
            }
        }
    }
    return evim::InfluenceField::from_edges(n, edges);
}

inline std::vector<NodeId> random_subset(std::mt19937_64 &rng, std::size_t n, double p) {
    std::bernoulli_distribution keep(p);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n; ++v) {
        if (keep(rng)) {
            out.push_back(v);
        }
    }
    return out;
}

// Dense matrix copy used by the brute-force oracles below.
struct Dense {
    std::size_t n;
    std::vector<std::vector<double>> inf;

    explicit Dense(const evim::InfluenceField &f)
        : n(f.node_count()), inf(n, std::vector<double>(n, 0.0)) {
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = 0; v < n; ++v) {
                if (u != v) {
                    inf[u][v] = f(u, v);
                }
            }
        }
    }

    // Credit of u on v over one or two hops, summing every intermediate a.
    double credit(NodeId u, NodeId v, int level) const {
        double c = inf[u][v];
        if (level == 2) {
            for (NodeId a = 0; a < n; ++a) {
                if (a != u && a != v) {
                    c += inf[u][a] * inf[a][v];
                }
            }
        }
        return c;
    }

    double set_influence(const std::vector<NodeId> &s, NodeId v, int level) const {
        double total = 0.0;
        for (NodeId u : s) {
            if (u == v) {
                return 1.0;
            }
            total += credit(u, v, level);
        }
        return total;
    }

    double sigma(const std::vector<NodeId> &s, int level, bool cap = false) const {
        double total = 0.0;
        for (NodeId v = 0; v < n; ++v) {
            const double c = set_influence(s, v, level);
            total += cap ? std::min(c, 1.0) : c;
        }
        return total;
    }
};

} // namespace testing

#include "evim/diffusion.hpp"

#include <cmath>
#include <queue>

#include "evim/errors.hpp"

namespace evim {

std::vector<double> edge_probabilities(const Digraph &g, const EdgeProbScheme &scheme) {
    std::vector<double> p(g.edge_count(), 0.0);
    switch (scheme.kind) {
    case EdgeProbScheme::Kind::Uniform:
        if (!(scheme.p >= 0.0 && scheme.p <= 1.0)) {
            throw Error("edge probability must lie in [0, 1]");
        }
        std::fill(p.begin(), p.end(), scheme.p);
        break;
    case EdgeProbScheme::Kind::Trivalency: {
        const RandomStream rng(scheme.seed, 0x7472697661ULL);
        for (EdgeId e = 0; e < p.size(); ++e) {
            p[e] = kTrivalencyChoices[rng.bits(e) % 3];
        }
        break;
    }
    case EdgeProbScheme::Kind::WeightedCascade:
        for (EdgeId e = 0; e < p.size(); ++e) {
            p[e] = 1.0 / static_cast<double>(g.degree(g.arc(e).src));
        }
        break;
    }
    return p;
}

namespace {

/// Scratch space for one cascade: nodes activated by the current expansion.
struct Frontier {
    explicit Frontier(std::size_t n) : fresh(n, 0) {}

    std::vector<char> fresh;
    std::vector<NodeId> order;

    void clear() {
        for (NodeId v : order) {
            fresh[v] = 0;
        }
        order.clear();
    }
};

/// Activates `seeds` on top of the already-active `base` (null for none) and
/// runs the cascade to completion. New nodes land in `frontier.order`.
template <typename Threshold>
void expand(const Digraph &g, const SpreadModel::Kind kind, std::span<const double> values,
            const RandomStream &rng, Threshold threshold, std::span<const NodeId> seeds,
            const char *base, Frontier &frontier) {
    auto active = [&](NodeId v) { return frontier.fresh[v] || (base && base[v]); };
    const std::size_t first = frontier.order.size();
    for (NodeId s : seeds) {
        if (!active(s)) {
            frontier.fresh[s] = 1;
            frontier.order.push_back(s);
        }
    }
    for (std::size_t i = first; i < frontier.order.size(); ++i) {
        const NodeId u = frontier.order[i];
        for (EdgeId e : g.out_edges(u)) {
            const NodeId w = g.arc(e).dst;
            if (active(w)) {
                continue;
            }
            bool activate;
            if (kind == SpreadModel::Kind::IndependentCascade) {
                activate = rng.uniform(e) < values[e];
            } else {
                double total = 0.0;
                for (EdgeId f : g.in_edges(w)) {
                    if (active(g.arc(f).src)) {
                        total += values[f];
                    }
                }
                activate = total >= threshold(w);
            }
            if (activate) {
                frontier.fresh[w] = 1;
                frontier.order.push_back(w);
            }
        }
    }
}

void check_sizes(const Digraph &g, std::span<const double> values) {
    if (values.size() != g.edge_count()) {
        throw Error("expected one value per edge");
    }
}

void check_seeds(const Digraph &g, std::span<const NodeId> seeds) {
    for (NodeId s : seeds) {
        if (s >= g.node_count()) {
            throw UnknownNode("seed " + std::to_string(s) + " is not in the graph");
        }
    }
}

auto stream_thresholds(const RandomStream &rng) {
    return [&rng](NodeId v) { return rng.uniform(v); };
}

} // namespace

std::vector<NodeId> run_icm(const Digraph &g, std::span<const double> probability,
                            std::span<const NodeId> seeds, const RandomStream &rng) {
    check_sizes(g, probability);
    check_seeds(g, seeds);
    Frontier frontier(g.node_count());
    expand(g, SpreadModel::Kind::IndependentCascade, probability, rng,
           [](NodeId) { return 0.0; }, seeds, nullptr, frontier);
    return frontier.order;
}

std::vector<NodeId> run_ltm(const Digraph &g, std::span<const double> weight,
                            std::span<const NodeId> seeds, std::span<const double> threshold) {
    check_sizes(g, weight);
    check_seeds(g, seeds);
    if (threshold.size() != g.node_count()) {
        throw Error("expected one threshold per node");
    }
    Frontier frontier(g.node_count());
    const RandomStream unused(0, 0);
    expand(g, SpreadModel::Kind::LinearThreshold, weight, unused,
           [threshold](NodeId v) { return threshold[v]; }, seeds, nullptr, frontier);
    return frontier.order;
}

std::vector<NodeId> run_ltm(const Digraph &g, std::span<const double> weight,
                            std::span<const NodeId> seeds, const RandomStream &rng) {
    check_sizes(g, weight);
    check_seeds(g, seeds);
    Frontier frontier(g.node_count());
    expand(g, SpreadModel::Kind::LinearThreshold, weight, rng, stream_thresholds(rng), seeds,
           nullptr, frontier);
    return frontier.order;
}

SpreadEstimate mc_spread(const Digraph &g, const SpreadModel &model, std::span<const NodeId> seeds,
                         std::size_t runs, std::uint64_t master_seed) {
    if (runs == 0) {
        throw Error("Monte Carlo spread needs at least one run");
    }
    check_sizes(g, model.edge_values);
    check_seeds(g, seeds);
    Frontier frontier(g.node_count());
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
        const RandomStream rng(master_seed, r);
        expand(g, model.kind, model.edge_values, rng, stream_thresholds(rng), seeds, nullptr,
               frontier);
        const double count = static_cast<double>(frontier.order.size());
        sum += count;
        sum_sq += count * count;
        frontier.clear();
    }
    SpreadEstimate est;
    const double n = static_cast<double>(runs);
    est.mean = sum / n;
    if (runs > 1) {
        const double variance = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0));
        est.std_error = std::sqrt(variance / n);
    }
    return est;
}

namespace {

struct LazyEntry {
    double gain;
    NodeId node;
    std::size_t round;
};

struct LazyOrder {
    bool operator()(const LazyEntry &a, const LazyEntry &b) const {
        return a.gain < b.gain || (a.gain == b.gain && a.node > b.node);
    }
};

/// Lazy-forward greedy shared by the Monte Carlo and credit-distribution
/// selectors. `gain(x)` evaluates against the current set, `commit(x)` adds
/// x and returns the new spread.
template <typename Gain, typename Commit>
SeedResult lazy_greedy(std::size_t n, std::size_t k, Gain gain, Commit commit) {
    if (k < 1 || k > n) {
        throw KTooLarge("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
    }
    const auto start = std::chrono::steady_clock::now();
    SeedResult result;
    std::vector<LazyEntry> initial;
    initial.reserve(n);
    for (NodeId x = 0; x < n; ++x) {
        initial.push_back({gain(x), x, 0});
    }
    result.gain_evaluations = n;
    std::priority_queue<LazyEntry, std::vector<LazyEntry>, LazyOrder> queue(LazyOrder{},
                                                                             std::move(initial));
    while (result.seeds.size() < k) {
        LazyEntry top = queue.top();
        queue.pop();
        if (top.round == result.seeds.size()) {
            result.seeds.push_back(top.node);
            result.marginal_gains.push_back(top.gain);
            result.sigma_curve.push_back(commit(top.node));
            continue;
        }
        top.gain = gain(top.node);
        top.round = result.seeds.size();
        ++result.gain_evaluations;
        queue.push(top);
    }
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

} // namespace

SeedResult mc_greedy_select(const Digraph &g, const SpreadModel &model, std::size_t k,
                            std::size_t runs, std::uint64_t master_seed) {
    if (runs == 0) {
        throw Error("Monte Carlo selection needs at least one run");
    }
    check_sizes(g, model.edge_values);
    const std::size_t n = g.node_count();
    // Active set of the current seed list in every world.
    std::vector<char> active(k <= n ? runs * n : 0, 0);
    Frontier frontier(n);
    std::uint64_t total_active = 0;

    auto new_in_all_worlds = [&](NodeId x, bool keep) {
        std::uint64_t added = 0;
        const NodeId seed[1] = {x};
        for (std::size_t r = 0; r < runs; ++r) {
            const RandomStream rng(master_seed, r);
            char *base = active.data() + r * n;
            expand(g, model.kind, model.edge_values, rng, stream_thresholds(rng), seed, base,
                   frontier);
            added += frontier.order.size();
            if (keep) {
                for (NodeId v : frontier.order) {
                    base[v] = 1;
                }
            }
            frontier.clear();
        }
        return added;
    };
    const double scale = 1.0 / static_cast<double>(runs);
    return lazy_greedy(
        n, k,
        [&](NodeId x) { return static_cast<double>(new_in_all_worlds(x, false)) * scale; },
        [&](NodeId x) {
            total_active += new_in_all_worlds(x, true);
            return static_cast<double>(total_active) * scale;
        });
}

namespace {

double cd_spread_masked(const InfluenceField &credits, const std::vector<char> &mask) {
    const Digraph &t = credits.topology();
    const std::size_t n = credits.node_count();
    std::vector<double> one_level(n, 0.0);
    for (NodeId x = 0; x < n; ++x) {
        if (mask[x]) {
            one_level[x] = 1.0;
            continue;
        }
        for (EdgeId e : t.in_edges(x)) {
            if (mask[t.arc(e).src]) {
                one_level[x] += credits.value(e);
            }
        }
    }
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        if (mask[v]) {
            total += 1.0;
            continue;
        }
        for (EdgeId e : t.in_edges(v)) {
            total += one_level[t.arc(e).src] * credits.value(e);
        }
    }
    return total;
}

} // namespace

double cd_credit(const InfluenceField &credits, std::span<const NodeId> seeds, NodeId v) {
    const auto mask = seed_mask(credits.node_count(), seeds);
    if (v >= credits.node_count()) {
        throw UnknownNode("node " + std::to_string(v) + " is not in the graph");
    }
    if (mask[v]) {
        return 1.0;
    }
    const Digraph &t = credits.topology();
    double total = 0.0;
    for (EdgeId e : t.in_edges(v)) {
        const NodeId x = t.arc(e).src;
        total += influence_of_set_l1(credits, seeds, x) * credits.value(e);
    }
    return total;
}

double cd_spread(const InfluenceField &credits, std::span<const NodeId> seeds) {
    return cd_spread_masked(credits, seed_mask(credits.node_count(), seeds));
}

SeedResult cd_select(const InfluenceField &credits, std::size_t k) {
    std::vector<char> mask(credits.node_count(), 0);
    double current = 0.0;
    return lazy_greedy(
        credits.node_count(), k,
        [&](NodeId x) {
            mask[x] = 1;
            const double gain = cd_spread_masked(credits, mask) - current;
            mask[x] = 0;
            return gain;
        },
        [&](NodeId x) {
            mask[x] = 1;
            current = cd_spread_masked(credits, mask);
            return current;
        });
}

} // namespace evim

#include "evim/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_set>

#include "evim/errors.hpp"
#include "evim/format.hpp"
#include "evim/rng.hpp"
#include "evim/seed_selection.hpp"

namespace evim {

namespace {

constexpr double kAttractiveness = 1.0;
constexpr std::size_t kActivityScale = 5;
constexpr std::size_t kRejectionTries = 1000;

struct Generator {
    explicit Generator(std::uint64_t seed) : rng(seed, 0x67656eULL) {}

    RandomStream rng;
    std::vector<NodeId> out_urn, in_urn; // one entry per edge endpoint
    std::unordered_set<std::uint64_t> present;
    std::vector<Arc> arcs;
    std::size_t nodes = 0;

    static std::uint64_t key(NodeId u, NodeId v) { return std::uint64_t{u} << 32 | v; }

    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(n));
    }

    // Degree-proportional pick with additive attractiveness.
    NodeId pick(const std::vector<NodeId> &urn) {
        const double total = static_cast<double>(urn.size()) +
                             kAttractiveness * static_cast<double>(nodes);
        if (rng.next_uniform() * total < static_cast<double>(urn.size())) {
            return urn[below(urn.size())];
        }
        return static_cast<NodeId>(below(nodes));
    }

    bool has(NodeId u, NodeId v) const { return present.contains(key(u, v)); }

    void add(NodeId u, NodeId v) {
        present.insert(key(u, v));
        arcs.push_back({u, v});
        out_urn.push_back(u);
        in_urn.push_back(v);
    }

    // Any absent pair, scanning from a random start.
    Arc first_absent() {
        const std::size_t pairs = nodes * nodes;
        const std::size_t start = below(pairs);
        for (std::size_t i = 0; i < pairs; ++i) {
            const std::size_t p = (start + i) % pairs;
            const auto u = static_cast<NodeId>(p / nodes), v = static_cast<NodeId>(p % nodes);
            if (u != v && !has(u, v)) {
                return {u, v};
            }
        }
        throw InfeasibleSpec("graph is already complete");
    }
};

void validate(const SyntheticSpec &spec) {
    if (spec.n_nodes < 2) {
        throw InfeasibleSpec("synthetic graph needs at least 2 nodes");
    }
    if (spec.n_edges < spec.n_nodes - 1) {
        throw InfeasibleSpec("synthetic graph needs at least n_nodes - 1 edges");
    }
    if (spec.n_edges > spec.n_nodes * (spec.n_nodes - 1)) {
        throw InfeasibleSpec("n_edges exceeds n_nodes * (n_nodes - 1)");
    }
    if (!(spec.min_influence >= 0.0 && spec.min_influence <= 1.0)) {
        throw InfeasibleSpec("min_influence must lie in [0, 1]");
    }
}

std::vector<Arc> preferential_attachment(const SyntheticSpec &spec) {
    Generator gen(spec.seed);
    const std::size_t m = spec.n_edges;
    // Step 0 creates nodes 0 and 1; n_nodes - 2 further steps each bring one
    // new node.
    std::vector<char> creates(m, 0);
    {
        std::vector<std::size_t> steps(m - 1);
        std::iota(steps.begin(), steps.end(), std::size_t{1});
        for (std::size_t i = 0; i < spec.n_nodes - 2; ++i) {
            std::swap(steps[i], steps[i + gen.below(steps.size() - i)]);
            creates[steps[i]] = 1;
        }
    }
    std::size_t last_creation = m;
    auto next_to_last = [&] {
        while (last_creation > 0 && !creates[last_creation - 1]) {
            --last_creation;
        }
        return last_creation > 0 ? last_creation - 1 : m;
    };

    gen.nodes = 2;
    gen.add(0, 1);
    for (std::size_t s = 1; s < m; ++s) {
        const std::size_t n = gen.nodes;
        if (!creates[s] && 2 * gen.arcs.size() >= n * (n - 1)) {
            // Too dense to place an edge between existing nodes; pull a
            // later creation step forward.
            const std::size_t later = next_to_last();
            if (later != m && later > s) {
                creates[later] = 0;
                creates[s] = 1;
            }
        }
        if (creates[s]) {
            const auto fresh = static_cast<NodeId>(n);
            const bool fresh_source = gen.rng.next_uniform() < 0.5;
            const NodeId other = gen.pick(fresh_source ? gen.in_urn : gen.out_urn);
            ++gen.nodes;
            fresh_source ? gen.add(fresh, other) : gen.add(other, fresh);
            continue;
        }
        bool placed = false;
        for (std::size_t t = 0; t < kRejectionTries && !placed; ++t) {
            const NodeId u = gen.pick(gen.out_urn);
            const NodeId v = gen.pick(gen.in_urn);
            if (u != v && !gen.has(u, v)) {
                gen.add(u, v);
                placed = true;
            }
        }
        if (!placed) {
            const Arc a = gen.first_absent();
            gen.add(a.src, a.dst);
        }
    }
    return gen.arcs;
}

} // namespace

SyntheticData generate_synthetic(const SyntheticSpec &spec) {
    validate(spec);
    const std::vector<Arc> arcs = preferential_attachment(spec);
    const std::size_t n = spec.n_nodes;

    std::vector<std::size_t> out_degree(n, 0);
    for (const Arc &a : arcs) {
        ++out_degree[a.src];
    }
    PlantedTruth truth;
    truth.is_influencer.assign(n, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (out_degree[v] >= spec.influencer_outlink_min) {
            truth.is_influencer[v] = 1;
            truth.influencers.push_back(v);
        }
    }
    if (truth.influencers.empty()) {
        throw InfeasibleSpec("no node reaches out-degree " +
                             std::to_string(spec.influencer_outlink_min));
    }

    const RandomStream draw(spec.seed, 0x696e66ULL);
    const RandomStream activity(spec.seed, 0x616374ULL);
    std::vector<double> influence(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const double u = draw.uniform(i);
        influence[i] = truth.is_influencer[arcs[i].src]
                           ? spec.min_influence + (1.0 - spec.min_influence) * u
                           : spec.min_influence * u;
    }

    SyntheticData data;
    auto name = [](NodeId v) { return std::to_string(v); };
    std::vector<std::size_t> tweets(n);
    for (NodeId v = 0; v < n; ++v) {
        tweets[v] = kActivityScale + activity.bits(v) % 20;
        for (std::size_t t = 0; t < tweets[v]; ++t) {
            data.log.records.push_back(
                {name(v), Action::Tweet, "", name(v) + ":" + std::to_string(t)});
        }
    }
    std::vector<std::size_t> mentions_made(n, 0);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto [u, v] = arcs[i];
        data.log.records.push_back({name(u), Action::Follow, name(v), ""});
        const auto count = static_cast<std::size_t>(
            std::lround(static_cast<double>(kActivityScale) * influence[i]));
        for (std::size_t c = 0; c < count; ++c) {
            data.log.records.push_back(
                {name(v), Action::Retweet, name(u), name(u) + ":" + std::to_string(c)});
            const std::size_t own = mentions_made[v]++ % tweets[v];
            data.log.records.push_back(
                {name(v), Action::Mention, name(u), name(v) + ":" + std::to_string(own)});
        }
    }

    data.graph = build_graph(data.log);
    const Digraph &t = data.graph.topology();
    std::vector<double> values(t.edge_count(), 0.0);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        values[*t.find(arcs[i].src, arcs[i].dst)] = influence[i];
    }
    data.field = InfluenceField(t, std::move(values));
    data.truth = std::move(truth);
    return data;
}

double hit_ratio(std::span<const NodeId> predicted, const PlantedTruth &truth, std::size_t k) {
    if (k < 1 || k > predicted.size()) {
        throw KTooLarge("k = " + std::to_string(k) + " must lie in [1, " +
                        std::to_string(predicted.size()) + "]");
    }
    const auto hits = std::count_if(predicted.begin(), predicted.begin() + k,
                                    [&](NodeId v) { return truth.contains(v); });
    return static_cast<double>(hits) / static_cast<double>(k);
}

CriteriaCurve criteria_curves(const SocialGraph &g, std::span<const NodeId> seeds) {
    CriteriaCurve c;
    std::uint64_t follow = 0, tweet = 0, mention = 0, retweet = 0;
    for (NodeId s : seeds) {
        if (s >= g.node_count()) {
            throw UnknownNode("node " + std::to_string(s) + " is not in the graph");
        }
        const NodeStats &st = g.stats(s);
        c.follow.push_back(follow += st.follower_count);
        c.tweet.push_back(tweet += st.tweet_count);
        c.mention.push_back(mention += st.times_mentioned);
        c.retweet.push_back(retweet += st.times_retweeted);
    }
    return c;
}

void write_criteria_csv(std::ostream &out, const CriteriaCurve &curve) {
    out << "rank,follow,tweet,mention,retweet\n";
    for (std::size_t i = 0; i < curve.follow.size(); ++i) {
        out << i + 1 << ',' << curve.follow[i] << ',' << curve.tweet[i] << ','
            << curve.mention[i] << ',' << curve.retweet[i] << '\n';
    }
}

std::vector<std::size_t> affected_nodes(const InfluenceField &field,
                                        std::span<const NodeId> seeds) {
    const Digraph &t = field.topology();
    std::vector<char> seed(field.node_count(), 0), reached(field.node_count(), 0);
    std::size_t count = 0;
    std::vector<std::size_t> result;
    auto reach = [&](NodeId v) {
        if (!reached[v]) {
            reached[v] = 1;
            count += seed[v] ? 0 : 1;
        }
    };
    for (NodeId s : seeds) {
        if (s >= field.node_count()) {
            throw UnknownNode("node " + std::to_string(s) + " is not in the graph");
        }
        if (!seed[s]) {
            seed[s] = 1;
            count -= reached[s] ? 1 : 0;
            for (EdgeId e : t.out_edges(s)) {
                if (field.value(e) <= 0.0) {
                    continue;
                }
                const NodeId a = t.arc(e).dst;
                reach(a);
                for (EdgeId f : t.out_edges(a)) {
                    if (field.value(f) > 0.0) {
                        reach(t.arc(f).dst);
                    }
                }
            }
        }
        result.push_back(count);
    }
    return result;
}

void write_affected_csv(std::ostream &out, std::span<const std::size_t> affected) {
    out << "rank,affected\n";
    for (std::size_t i = 0; i < affected.size(); ++i) {
        out << i + 1 << ',' << affected[i] << '\n';
    }
}

std::uint64_t repetition_seed(std::uint64_t base, std::size_t r) {
    return mix64(base ^ mix64(r + 1));
}

std::vector<AccuracyRow> accuracy_sweep(const AccuracyConfig &config) {
    if (config.repetitions == 0) {
        throw Error("accuracy sweep needs at least one repetition");
    }
    std::vector<AccuracyRow> rows;
    for (double level : config.min_influences) {
        AccuracyRow row;
        row.min_influence = level;
        for (std::size_t r = 0; r < config.repetitions; ++r) {
            SyntheticSpec spec = config.base;
            spec.min_influence = level;
            spec.seed = repetition_seed(config.base.seed, r);
            const SyntheticData data = generate_synthetic(spec);
            const SelectionOptions options{config.level};
            const SeedResult selected =
                config.source == FieldSource::Planted
                    ? celf_select(data.field, config.k, options)
                    : celf_select(estimate_influence(data.graph, config.params).field, config.k,
                                  options);
            row.hit_ratios.push_back(hit_ratio(selected.seeds, data.truth, config.k));
            row.planted_counts.push_back(data.truth.influencers.size());
        }
        const double n = static_cast<double>(row.hit_ratios.size());
        row.mean_hit_ratio = std::accumulate(row.hit_ratios.begin(), row.hit_ratios.end(), 0.0) / n;
        if (row.hit_ratios.size() > 1) {
            double ss = 0.0;
            for (double h : row.hit_ratios) {
                ss += (h - row.mean_hit_ratio) * (h - row.mean_hit_ratio);
            }
            row.std = std::sqrt(ss / (n - 1.0));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_accuracy_csv(std::ostream &out, std::span<const AccuracyRow> rows) {
    out << "min_influence,mean_hit_ratio,std\n";
    for (const AccuracyRow &row : rows) {
        out << format_real(row.min_influence) << ',' << format_real(row.mean_hit_ratio) << ','
            << format_real(row.std) << '\n';
    }
}

} // namespace evim

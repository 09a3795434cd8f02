#include "evim/influence.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "evim/errors.hpp"
#include "evim/format.hpp"

namespace evim {

InfluenceField::InfluenceField(Digraph topology, std::vector<double> values)
    : topology_(std::move(topology)), values_(std::move(values)) {
    if (values_.size() != topology_.edge_count()) {
        throw Error("influence field has " + std::to_string(values_.size()) + " values for " +
                    std::to_string(topology_.edge_count()) + " edges");
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw Error("influence value " + format_real(v) + " outside [0, 1]");
        }
    }
}

InfluenceField InfluenceField::from_edges(std::size_t node_count,
                                          std::span<const std::tuple<NodeId, NodeId, double>> edges) {
    std::vector<Arc> arcs;
    arcs.reserve(edges.size());
    for (const auto &[u, v, inf] : edges) {
        arcs.push_back({u, v});
    }
    Digraph topology(node_count, std::move(arcs));
    std::vector<double> values(topology.edge_count(), 0.0);
    for (const auto &[u, v, inf] : edges) {
        values[*topology.find(u, v)] = inf;
    }
    return InfluenceField(std::move(topology), std::move(values));
}

double InfluenceField::operator()(NodeId u, NodeId v) const {
    auto e = topology_.find(u, v);
    return e ? values_[*e] : 0.0;
}

Bba scaled_bba(double w, double lo, double hi, double ignorance) {
    const double scale = hi - lo + ignorance;
    const double mass_i = (w - lo) / scale;
    const double mass_p = (hi - w) / scale;
    return Bba::make(mass_i, mass_p, std::max(0.0, 1.0 - mass_i - mass_p));
}

namespace {

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
};

struct Ranges {
    Range follow, mention, retweet;
};

Ranges ranges_of(std::span<const WeightVector> weights) {
    Ranges r;
    for (const WeightVector &w : weights) {
        r.follow.add(w.follow);
        r.mention.add(w.mention);
        r.retweet.add(w.retweet);
    }
    return r;
}

void check_scale(const Range &r, double ignorance, const char *relation, const char *level,
                 const char *knob) {
    if (r.hi - r.lo + ignorance <= 0.0) {
        throw DegenerateScale(std::string(relation) + " weights are identical on every " + level +
                              " and " + knob + " = 0; set " + knob + " > 0");
    }
}

Bba fuse(const Bba &follow, const Bba &mention, const Bba &retweet) {
    return combine_dempster(combine_dempster(follow, retweet), mention);
}

} // namespace

std::vector<NodeBelief> node_bbas(std::span<const WeightVector> node_weights, double alpha) {
    std::vector<NodeBelief> out(node_weights.size());
    if (node_weights.empty()) {
        return out;
    }
    const Ranges r = ranges_of(node_weights);
    check_scale(r.follow, alpha, "follow", "node", "alpha");
    check_scale(r.mention, alpha, "mention", "node", "alpha");
    check_scale(r.retweet, alpha, "retweet", "node", "alpha");
    for (std::size_t u = 0; u < node_weights.size(); ++u) {
        const WeightVector &w = node_weights[u];
        NodeBelief &b = out[u];
        b.follow = scaled_bba(w.follow, r.follow.lo, r.follow.hi, alpha);
        b.mention = scaled_bba(w.mention, r.mention.lo, r.mention.hi, alpha);
        b.retweet = scaled_bba(w.retweet, r.retweet.lo, r.retweet.hi, alpha);
        b.combined = fuse(b.follow, b.mention, b.retweet);
        b.betp_i = pignistic(b.combined).betp_i;
    }
    return out;
}

std::vector<WeightVector> update_link_weights(const Digraph &topology,
                                              std::span<const WeightVector> edge_weights,
                                              std::span<const double> betp_i) {
    std::vector<WeightVector> out(edge_weights.begin(), edge_weights.end());
    for (EdgeId e = 0; e < out.size(); ++e) {
        const double p = betp_i[topology.arc(e).dst];
        out[e] = {out[e].follow * p, out[e].mention * p, out[e].retweet * p};
    }
    return out;
}

InfluenceField link_influence(const Digraph &topology, std::span<const WeightVector> edge_weights,
                              double beta) {
    std::vector<double> values(edge_weights.size());
    if (!edge_weights.empty()) {
        const Ranges r = ranges_of(edge_weights);
        check_scale(r.follow, beta, "follow", "edge", "beta");
        check_scale(r.mention, beta, "mention", "edge", "beta");
        check_scale(r.retweet, beta, "retweet", "edge", "beta");
        for (std::size_t e = 0; e < edge_weights.size(); ++e) {
            const WeightVector &w = edge_weights[e];
            const Bba m = fuse(scaled_bba(w.follow, r.follow.lo, r.follow.hi, beta),
                               scaled_bba(w.mention, r.mention.lo, r.mention.hi, beta),
                               scaled_bba(w.retweet, r.retweet.lo, r.retweet.hi, beta));
            values[e] = m.mass_i();
        }
    }
    return InfluenceField(topology, std::move(values));
}

Estimate estimate_influence(const Digraph &topology, LinkWeights weights,
                            const EstimatorParams &params) {
    Estimate est;
    est.weights = std::move(weights);
    est.node_weights = node_weights(topology, est.weights.edges, params.aggregation);
    est.nodes = node_bbas(est.node_weights, params.alpha);
    if (params.use_update_step) {
        std::vector<double> betp(est.nodes.size());
        std::transform(est.nodes.begin(), est.nodes.end(), betp.begin(),
                       [](const NodeBelief &b) { return b.betp_i; });
        est.link_level_weights = update_link_weights(topology, est.weights.edges, betp);
    } else {
        est.link_level_weights = est.weights.edges;
    }
    est.field = link_influence(topology, est.link_level_weights, params.beta);
    return est;
}

Estimate estimate_influence(const SocialGraph &g, const EstimatorParams &params) {
    return estimate_influence(g.topology(), link_weights_global(g), params);
}

std::vector<char> seed_mask(std::size_t node_count, std::span<const NodeId> seeds) {
    std::vector<char> mask(node_count, 0);
    for (NodeId s : seeds) {
        if (s >= node_count) {
            throw UnknownNode("seed " + std::to_string(s) + " is not in the graph");
        }
        mask[s] = 1;
    }
    return mask;
}

namespace {

/// Sum over seeds u != v of Inf(u, v).
double seed_inflow(const InfluenceField &field, const std::vector<char> &mask, NodeId v) {
    double total = 0.0;
    const Digraph &t = field.topology();
    for (EdgeId e : t.in_edges(v)) {
        if (mask[t.arc(e).src]) {
            total += field.value(e);
        }
    }
    return total;
}

double two_hop_inflow(const InfluenceField &field, const std::vector<char> &mask,
                      std::span<const double> inflow, NodeId v) {
    double total = 0.0;
    const Digraph &t = field.topology();
    for (EdgeId e : t.in_edges(v)) {
        const NodeId a = t.arc(e).src;
        // a = v slot: Inf(u, v) * Inf(v, v) for u = a in S.
        if (mask[a]) {
            total += field.value(e);
        }
        total += inflow[a] * field.value(e);
    }
    return total;
}

} // namespace

double influence_of_set_l1(const InfluenceField &field, std::span<const NodeId> seeds, NodeId v) {
    const auto mask = seed_mask(field.node_count(), seeds);
    if (v >= field.node_count()) {
        throw UnknownNode("node " + std::to_string(v) + " is not in the graph");
    }
    return mask[v] ? 1.0 : seed_inflow(field, mask, v);
}

double influence_of_set_l2(const InfluenceField &field, std::span<const NodeId> seeds, NodeId v) {
    const auto mask = seed_mask(field.node_count(), seeds);
    if (v >= field.node_count()) {
        throw UnknownNode("node " + std::to_string(v) + " is not in the graph");
    }
    if (mask[v]) {
        return 1.0;
    }
    std::vector<double> inflow(field.node_count(), 0.0);
    for (EdgeId e : field.topology().in_edges(v)) {
        const NodeId a = field.topology().arc(e).src;
        inflow[a] = seed_inflow(field, mask, a);
    }
    return two_hop_inflow(field, mask, inflow, v);
}

double sigma_bel(const InfluenceField &field, std::span<const NodeId> seeds, Level level,
                 Saturation saturation) {
    const std::size_t n = field.node_count();
    const auto mask = seed_mask(n, seeds);
    std::vector<double> inflow(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        inflow[v] = seed_inflow(field, mask, v);
    }
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        double credit = 1.0;
        if (!mask[v]) {
            credit = level == Level::One ? inflow[v] : two_hop_inflow(field, mask, inflow, v);
            if (saturation == Saturation::Unit) {
                credit = std::min(credit, 1.0);
            }
        }
        total += credit;
    }
    return total;
}

void write_influence_csv(std::ostream &out, std::span<const std::string> names,
                         const InfluenceField &field) {
    out << "src,dst,inf\n";
    for (EdgeId e = 0; e < field.edge_count(); ++e) {
        const Arc a = field.topology().arc(e);
        out << names[a.src] << ',' << names[a.dst] << ',' << format_real(field.value(e)) << '\n';
    }
}

} // namespace evim

#include "evim/weighting.hpp"

#include <algorithm>
#include <ostream>

#include "evim/format.hpp"

namespace evim {

namespace {

double ratio(double numerator, double denominator) {
    return denominator > 0.0 ? numerator / denominator : 0.0;
}

double follow_numerator(const EdgeActivity &a) {
    return static_cast<double>(a.common_followers) + (a.follow ? 1.0 : 0.0);
}

} // namespace

LinkWeights link_weights_global(const SocialGraph &g) {
    double s_max = 0.0, m_max = 0.0, t_max = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        s_max = std::max(s_max, static_cast<double>(g.follow_out_degree(u)));
        m_max = std::max(m_max, static_cast<double>(g.stats(u).mention_made_count));
        t_max = std::max(t_max, static_cast<double>(g.stats(u).tweet_count));
    }

    LinkWeights out;
    if (g.edge_count() > 0) {
        if (s_max == 0.0) {
            out.diagnostics.emplace_back("no follow relations: follow weight set to 0 on every edge");
        }
        if (m_max == 0.0) {
            out.diagnostics.emplace_back("no mentions: mention weight set to 0 on every edge");
        }
        if (t_max == 0.0) {
            out.diagnostics.emplace_back("no tweets: retweet weight set to 0 on every edge");
        }
    }
    out.edges.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeActivity &a = g.activity(e);
        out.edges[e] = {ratio(follow_numerator(a), s_max),
                        ratio(a.mentions_of_u_by_v, m_max),
                        ratio(a.retweets_of_u_by_v, t_max)};
    }
    return out;
}

LinkWeights link_weights_local(const SocialGraph &g) {
    const Digraph &t = g.topology();
    LinkWeights out;
    out.edges.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Arc arc = t.arc(e);
        const EdgeActivity &a = g.activity(e);
        const NodeStats &src = g.stats(arc.src);
        // M_u(v): tweets of u mentioning v, carried by the reverse edge (v, u).
        double mentions_by_u = 0.0;
        if (auto reverse = t.find(arc.dst, arc.src)) {
            mentions_by_u = g.activity(*reverse).mentions_of_u_by_v;
        }
        out.edges[e] = {ratio(follow_numerator(a), static_cast<double>(g.follow_out_degree(arc.src))),
                        ratio(mentions_by_u, src.mention_made_count),
                        ratio(a.retweets_of_u_by_v, src.tweet_count)};
    }
    return out;
}

std::vector<WeightVector> node_weights(const Digraph &topology,
                                       std::span<const WeightVector> edge_weights,
                                       Aggregation aggregation) {
    std::vector<WeightVector> nodes(topology.node_count());
    for (NodeId u = 0; u < topology.node_count(); ++u) {
        WeightVector &w = nodes[u];
        for (EdgeId e : topology.out_edges(u)) {
            w.follow += edge_weights[e].follow;
            w.mention += edge_weights[e].mention;
            w.retweet += edge_weights[e].retweet;
        }
        if (aggregation == Aggregation::Mean && topology.out_degree(u) > 0) {
            const double d = static_cast<double>(topology.out_degree(u));
            w = {w.follow / d, w.mention / d, w.retweet / d};
        }
    }
    return nodes;
}

void write_weights_csv(std::ostream &out, const SocialGraph &g,
                       std::span<const WeightVector> edge_weights) {
    out << "src,dst,w_f,w_m,w_r\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Arc a = g.topology().arc(e);
        const WeightVector &w = edge_weights[e];
        out << g.name(a.src) << ',' << g.name(a.dst) << ',' << format_real(w.follow) << ','
            << format_real(w.mention) << ',' << format_real(w.retweet) << '\n';
    }
}

} // namespace evim

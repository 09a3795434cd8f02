#include "evim/social_graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

#include "evim/errors.hpp"

namespace evim {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) {
            break;
        }
        start = tab + 1;
    }
    return fields;
}

/// Calls `handle(fields)` for every data line; `handle` returns an error
/// message or an empty string on success.
template <typename Handler>
void for_each_line(std::istream &in, std::string_view source, ActivityLog &log,
                   const LoadOptions &options, Handler handle) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split_tabs(line);
        bool has_empty = std::any_of(fields.begin(), fields.end(),
                                     [](std::string_view f) { return f.empty(); });
        std::string reason = has_empty ? "empty field" : handle(fields);
        if (reason.empty()) {
            continue;
        }
        if (options.strict) {
            throw ParseError(std::string(source), number, reason);
        }
        log.rejections.push_back({std::string(source), number, std::move(reason)});
    }
}

std::ifstream open_input(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingFile(path.string());
    }
    return in;
}

bool all_digits(const std::string &s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return c >= '0' && c <= '9'; });
}

} // namespace

void read_follows(std::istream &in, std::string_view source, ActivityLog &log,
                  const LoadOptions &options) {
    for_each_line(in, source, log, options, [&](const auto &f) -> std::string {
        if (f.size() != 2) {
            return "expected follower<TAB>followee, got " + std::to_string(f.size()) + " fields";
        }
        log.records.push_back({std::string(f[0]), Action::Follow, std::string(f[1]), {}});
        return {};
    });
}

void read_tweets(std::istream &in, std::string_view source, ActivityLog &log,
                 const LoadOptions &options) {
    for_each_line(in, source, log, options, [&](const auto &f) -> std::string {
        if (f.size() != 2) {
            return "expected user<TAB>tweet_id, got " + std::to_string(f.size()) + " fields";
        }
        log.records.push_back({std::string(f[0]), Action::Tweet, {}, std::string(f[1])});
        return {};
    });
}

void read_actions(std::istream &in, std::string_view source, ActivityLog &log,
                  const LoadOptions &options) {
    for_each_line(in, source, log, options, [&](const auto &f) -> std::string {
        if (f.size() != 4) {
            return "expected type<TAB>actor<TAB>target_user<TAB>tweet_id, got " +
                   std::to_string(f.size()) + " fields";
        }
        Action action;
        if (f[0] == "RT") {
            action = Action::Retweet;
        } else if (f[0] == "MENTION") {
            action = Action::Mention;
        } else {
            return "unknown action type '" + std::string(f[0]) + "'";
        }
        log.records.push_back({std::string(f[1]), action, std::string(f[2]), std::string(f[3])});
        return {};
    });
}

ActivityLog load_activity_log(const std::filesystem::path &follow_file,
                              const std::filesystem::path &tweet_file,
                              const std::filesystem::path &action_file,
                              const LoadOptions &options) {
    auto follows = open_input(follow_file);
    auto tweets = open_input(tweet_file);
    auto actions = open_input(action_file);
    ActivityLog log;
    read_follows(follows, follow_file.string(), log, options);
    read_tweets(tweets, tweet_file.string(), log, options);
    read_actions(actions, action_file.string(), log, options);
    return log;
}

void write_follows(std::ostream &out, const ActivityLog &log) {
    for (const auto &r : log.records) {
        if (r.action == Action::Follow) {
            out << r.user << '\t' << r.target << '\n';
        }
    }
}

void write_tweets(std::ostream &out, const ActivityLog &log) {
    for (const auto &r : log.records) {
        if (r.action == Action::Tweet) {
            out << r.user << '\t' << r.tweet_id << '\n';
        }
    }
}

void write_actions(std::ostream &out, const ActivityLog &log) {
    for (const auto &r : log.records) {
        if (r.action == Action::Retweet || r.action == Action::Mention) {
            out << (r.action == Action::Retweet ? "RT" : "MENTION") << '\t' << r.user << '\t'
                << r.target << '\t' << r.tweet_id << '\n';
        }
    }
}

SocialGraph::SocialGraph(std::vector<std::string> names, std::vector<NodeStats> stats,
                         Digraph topology, std::vector<EdgeActivity> activity,
                         std::vector<std::vector<NodeId>> follow_successors)
    : names_(std::move(names)), stats_(std::move(stats)), topology_(std::move(topology)),
      activity_(std::move(activity)), follow_out_(std::move(follow_successors)) {
    if (stats_.size() != names_.size() || topology_.node_count() != names_.size() ||
        activity_.size() != topology_.edge_count() || follow_out_.size() != names_.size()) {
        throw Error("inconsistent SocialGraph components");
    }
    by_name_.resize(names_.size());
    for (NodeId v = 0; v < by_name_.size(); ++v) {
        by_name_[v] = v;
    }
    std::sort(by_name_.begin(), by_name_.end(),
              [this](NodeId a, NodeId b) { return names_[a] < names_[b]; });
}

std::optional<NodeId> SocialGraph::find(std::string_view name) const {
    auto it = std::lower_bound(by_name_.begin(), by_name_.end(), name,
                               [this](NodeId v, std::string_view n) { return names_[v] < n; });
    if (it == by_name_.end() || names_[*it] != name) {
        return std::nullopt;
    }
    return *it;
}

NodeId SocialGraph::id(std::string_view name) const {
    if (auto v = find(name)) {
        return *v;
    }
    throw UnknownNode("unknown user '" + std::string(name) + "'");
}

SocialGraph build_graph(const ActivityLog &log) {
    std::vector<const ActivityRecord *> records;
    records.reserve(log.records.size());
    for (const auto &r : log.records) {
        if (r.action != Action::Tweet && r.user == r.target) {
            continue;
        }
        records.push_back(&r);
    }
    std::sort(records.begin(), records.end(),
              [](const ActivityRecord *a, const ActivityRecord *b) { return *a < *b; });
    records.erase(std::unique(records.begin(), records.end(),
                              [](const ActivityRecord *a, const ActivityRecord *b) {
                                  return *a == *b;
                              }),
                  records.end());

    std::vector<std::string> names;
    for (const auto *r : records) {
        names.push_back(r->user);
        if (!r->target.empty()) {
            names.push_back(r->target);
        }
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    if (std::all_of(names.begin(), names.end(), all_digits)) {
        std::sort(names.begin(), names.end(), [](const std::string &a, const std::string &b) {
            return std::forward_as_tuple(a.size(), a) < std::forward_as_tuple(b.size(), b);
        });
    }
    const std::size_t n = names.size();
    std::vector<std::pair<std::string_view, NodeId>> index;
    index.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
        index.emplace_back(names[v], v);
    }
    std::sort(index.begin(), index.end());
    auto lookup = [&](const std::string &name) {
        return std::lower_bound(index.begin(), index.end(),
                                std::pair<std::string_view, NodeId>{name, 0})
            ->second;
    };

    std::vector<NodeStats> stats(n);
    std::vector<std::vector<NodeId>> follow_out(n), follow_in(n);
    std::vector<std::vector<std::string_view>> mention_tweets(n);
    struct Contribution {
        Arc arc;
        Action action;
    };
    std::vector<Contribution> contributions;

    for (const auto *r : records) {
        const NodeId user = lookup(r->user);
        switch (r->action) {
        case Action::Tweet:
            ++stats[user].tweet_count;
            break;
        case Action::Follow: {
            const NodeId followee = lookup(r->target);
            follow_out[user].push_back(followee);
            follow_in[followee].push_back(user);
            contributions.push_back({{user, followee}, Action::Follow});
            break;
        }
        case Action::Mention: {
            const NodeId mentioned = lookup(r->target);
            mention_tweets[user].push_back(r->tweet_id);
            ++stats[mentioned].times_mentioned;
            contributions.push_back({{mentioned, user}, Action::Mention});
            break;
        }
        case Action::Retweet: {
            const NodeId author = lookup(r->target);
            ++stats[author].times_retweeted;
            contributions.push_back({{author, user}, Action::Retweet});
            break;
        }
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        auto &tweets = mention_tweets[v];
        std::sort(tweets.begin(), tweets.end());
        stats[v].mention_made_count =
            static_cast<std::uint32_t>(std::unique(tweets.begin(), tweets.end()) - tweets.begin());
        std::sort(follow_out[v].begin(), follow_out[v].end());
        std::sort(follow_in[v].begin(), follow_in[v].end());
        stats[v].follower_count = static_cast<std::uint32_t>(follow_in[v].size());
    }

    std::vector<Arc> arcs;
    arcs.reserve(contributions.size());
    for (const auto &c : contributions) {
        arcs.push_back(c.arc);
    }
    Digraph topology(n, std::move(arcs));
    std::vector<EdgeActivity> activity(topology.edge_count());
    for (const auto &c : contributions) {
        auto &a = activity[*topology.find(c.arc.src, c.arc.dst)];
        switch (c.action) {
        case Action::Follow:
            a.follow = true;
            break;
        case Action::Mention:
            ++a.mentions_of_u_by_v;
            break;
        case Action::Retweet:
            ++a.retweets_of_u_by_v;
            break;
        case Action::Tweet:
            break;
        }
    }
    for (EdgeId e = 0; e < topology.edge_count(); ++e) {
        const auto &s = follow_out[topology.arc(e).src];
        const auto &p = follow_in[topology.arc(e).dst];
        std::uint32_t common = 0;
        for (auto i = s.begin(), j = p.begin(); i != s.end() && j != p.end();) {
            if (*i < *j) {
                ++i;
            } else if (*j < *i) {
                ++j;
            } else {
                ++common, ++i, ++j;
            }
        }
        activity[e].common_followers = common;
    }
    return SocialGraph(std::move(names), std::move(stats), std::move(topology),
                       std::move(activity), std::move(follow_out));
}

DegreeInfo degree_queries(const SocialGraph &g, NodeId v) {
    if (v >= g.node_count()) {
        throw UnknownNode("node id " + std::to_string(v) + " is not in the graph");
    }
    const Digraph &t = g.topology();
    DegreeInfo info;
    for (EdgeId e : t.out_edges(v)) {
        info.successors.push_back(t.arc(e).dst);
    }
    for (EdgeId e : t.in_edges(v)) {
        info.predecessors.push_back(t.arc(e).src);
    }
    info.out_degree = info.successors.size();
    info.in_degree = info.predecessors.size();
    info.degree = info.in_degree + info.out_degree;
    return info;
}

} // namespace evim

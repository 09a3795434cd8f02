#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evim/digraph.hpp"

namespace evim {

enum class Action : std::uint8_t { Follow, Tweet, Retweet, Mention };

/// One ingested activity tuple.
///   Follow:  `user` follows `target`.
///   Tweet:   `user` authored `tweet_id` (`target` empty).
///   Retweet: `user` retweeted `tweet_id` authored by `target`.
///   Mention: `user`'s tweet `tweet_id` mentions `target`.
struct ActivityRecord {
    std::string user;
    Action action;
    std::string target;
    std::string tweet_id;

    friend auto operator<=>(const ActivityRecord &, const ActivityRecord &) = default;
};

struct Rejection {
    std::string file;
    std::size_t line;
    std::string reason;
};

struct ActivityLog {
    std::vector<ActivityRecord> records;
    std::vector<Rejection> rejections;
};

struct LoadOptions {
    /// Throw ParseError on the first malformed line instead of recording it.
    bool strict = false;
};

/// Reads the three tab-separated activity files. Lines starting with '#' and
/// blank lines are skipped. Throws MissingFile if a file cannot be opened.
ActivityLog load_activity_log(const std::filesystem::path &follow_file,
                              const std::filesystem::path &tweet_file,
                              const std::filesystem::path &action_file,
                              const LoadOptions &options = {});

// Stream readers behind load_activity_log; `source` names the input in
// rejection reports.
void read_follows(std::istream &in, std::string_view source, ActivityLog &log,
                  const LoadOptions &options = {});
void read_tweets(std::istream &in, std::string_view source, ActivityLog &log,
                 const LoadOptions &options = {});
void read_actions(std::istream &in, std::string_view source, ActivityLog &log,
                  const LoadOptions &options = {});

void write_follows(std::ostream &out, const ActivityLog &log);
void write_tweets(std::ostream &out, const ActivityLog &log);
void write_actions(std::ostream &out, const ActivityLog &log);

struct NodeStats {
    std::uint32_t tweet_count = 0;        ///< |T_u|
    std::uint32_t mention_made_count = 0; ///< |M_u|, tweets of u mentioning someone else
    std::uint32_t follower_count = 0;     ///< users following u
    std::uint32_t times_mentioned = 0;    ///< mention records targeting u
    std::uint32_t times_retweeted = 0;    ///< retweet records targeting u
};

/// Activity carried by edge (u, v), u the influence source.
struct EdgeActivity {
    bool follow = false;                  ///< u follows v
    std::uint32_t common_followers = 0;   ///< |S_u ∩ P_v| in the follow relation
    std::uint32_t mentions_of_u_by_v = 0; ///< |M_v(u)|
    std::uint32_t retweets_of_u_by_v = 0; ///< |R_u(v)|
};

/// Directed social graph. An edge (u, v) exists for every ordered pair with
/// follow, mention or retweet activity: follows run from follower to
/// followee, mentions and retweets from the mentioned or retweeted user to
/// the actor.
class SocialGraph {
  public:
    SocialGraph() = default;
    SocialGraph(std::vector<std::string> names, std::vector<NodeStats> stats,
                Digraph topology, std::vector<EdgeActivity> activity,
                std::vector<std::vector<NodeId>> follow_successors);

    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return topology_.edge_count(); }

    const Digraph &topology() const { return topology_; }
    const std::string &name(NodeId v) const { return names_.at(v); }
    std::span<const std::string> names() const { return names_; }
    std::optional<NodeId> find(std::string_view name) const;
    /// Throws UnknownNode.
    NodeId id(std::string_view name) const;

    const NodeStats &stats(NodeId v) const { return stats_.at(v); }
    const EdgeActivity &activity(EdgeId e) const { return activity_[e]; }

    /// S_u in the follow relation (sorted).
    std::span<const NodeId> follow_successors(NodeId u) const { return follow_out_[u]; }
    std::size_t follow_out_degree(NodeId u) const { return follow_out_[u].size(); }

  private:
    std::vector<std::string> names_;
    std::vector<NodeId> by_name_; // ids sorted by name
    std::vector<NodeStats> stats_;
    Digraph topology_;
    std::vector<EdgeActivity> activity_;
    std::vector<std::vector<NodeId>> follow_out_;
};

/// Builds the graph from a log. Exact duplicate records and
/// self-interactions are dropped. Node ids follow the sort order of user
/// names (numeric order when every name is a decimal integer), so the result
/// does not depend on record order.
SocialGraph build_graph(const ActivityLog &log);

struct DegreeInfo {
    std::vector<NodeId> successors;
    std::vector<NodeId> predecessors;
    std::size_t in_degree = 0;
    std::size_t out_degree = 0;
    std::size_t degree = 0; ///< D_u = in + out
};

/// Throws UnknownNode for ids outside the graph.
DegreeInfo degree_queries(const SocialGraph &g, NodeId v);

} // namespace evim

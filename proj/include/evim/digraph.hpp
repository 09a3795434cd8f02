#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ranges>
#include <span>
#include <vector>

namespace evim {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Arc {
    NodeId src;
    NodeId dst;

    friend constexpr auto operator<=>(const Arc &, const Arc &) = default;
};

/// Immutable directed simple graph in compressed sparse row form.
/// Edge ids are positions in the (src, dst)-sorted arc list, so the
/// out-edges of a node form a contiguous id range.
class Digraph {
  public:
    Digraph() = default;

    /// Duplicate arcs are merged. Throws evim::Error on self-loops or
    /// endpoints >= node_count.
    Digraph(std::size_t node_count, std::vector<Arc> arcs);

    std::size_t node_count() const { return out_offset_.empty() ? 0 : out_offset_.size() - 1; }
    std::size_t edge_count() const { return arcs_.size(); }

    const Arc &arc(EdgeId e) const { return arcs_[e]; }
    std::span<const Arc> arcs() const { return arcs_; }

    auto out_edges(NodeId u) const {
        return std::views::iota(out_offset_[u], out_offset_[u + 1]);
    }
    std::span<const EdgeId> in_edges(NodeId v) const {
        return {in_edge_ids_.data() + in_offset_[v],
                in_edge_ids_.data() + in_offset_[v + 1]};
    }

    std::size_t out_degree(NodeId u) const { return out_offset_[u + 1] - out_offset_[u]; }
    std::size_t in_degree(NodeId v) const { return in_offset_[v + 1] - in_offset_[v]; }
    /// Overall degree: in-degree plus out-degree.
    std::size_t degree(NodeId u) const { return in_degree(u) + out_degree(u); }

    std::optional<EdgeId> find(NodeId u, NodeId v) const;

  private:
    std::vector<Arc> arcs_;
    std::vector<EdgeId> out_offset_;
    std::vector<EdgeId> in_offset_;
    std::vector<EdgeId> in_edge_ids_;
};

} // namespace evim

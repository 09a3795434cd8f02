#include "evim/digraph.hpp"

#include <algorithm>
#include <string>

#include "evim/errors.hpp"

namespace evim {

Digraph::Digraph(std::size_t node_count, std::vector<Arc> arcs)
    : arcs_(std::move(arcs)) {
    for (const Arc &a : arcs_) {
        if (a.src >= node_count || a.dst >= node_count) {
            throw Error("arc (" + std::to_string(a.src) + ", " +
                        std::to_string(a.dst) + ") references a node outside [0, " +
                        std::to_string(node_count) + ")");
        }
        if (a.src == a.dst) {
            throw Error("self-loop on node " + std::to_string(a.src));
        }
    }
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

    out_offset_.assign(node_count + 1, 0);
    in_offset_.assign(node_count + 1, 0);
    for (const Arc &a : arcs_) {
        ++out_offset_[a.src + 1];
        ++in_offset_[a.dst + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) {
        out_offset_[i + 1] += out_offset_[i];
        in_offset_[i + 1] += in_offset_[i];
    }
    in_edge_ids_.resize(arcs_.size());
    std::vector<EdgeId> cursor(in_offset_.begin(), in_offset_.end() - 1);
    // Arcs are sorted by source, so each in-list is ordered by source too.
    for (EdgeId e = 0; e < arcs_.size(); ++e) {
        in_edge_ids_[cursor[arcs_[e].dst]++] = e;
    }
}

std::optional<EdgeId> Digraph::find(NodeId u, NodeId v) const {
    if (u + 1 >= out_offset_.size()) {
        return std::nullopt;
    }
    auto first = arcs_.begin() + out_offset_[u];
    auto last = arcs_.begin() + out_offset_[u + 1];
    auto it = std::lower_bound(first, last, v,
                               [](const Arc &a, NodeId dst) { return a.dst < dst; });
    if (it == last || it->dst != v) {
        return std::nullopt;
    }
    return static_cast<EdgeId>(it - arcs_.begin());
}

} // namespace evim

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace graphcrop {

using NodeId = std::uint32_t;
using Label = std::int64_t;

struct Edge {
    NodeId u;
    NodeId v;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

// Counts of input pairs that did not become edges.
struct EdgeListReport {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_collapsed = 0;
};

/**
 * Immutable simple undirected graph.
 *
 * Edges are stored once with u < v, sorted lexicographically. Adjacency is kept
 * in CSR form with sorted neighbor lists, so neighbor queries and edge lookups
 * are cheap. Optional per-node labels and attributes and an optional graph
 * label ride along unchanged through every structural operation.
 */
class Graph {
public:
    Graph() = default;

    /// Builds a graph from unordered pairs. Self-loops are dropped and duplicate
    /// pairs (in either orientation) collapse to one edge; both are counted in
    /// `report` when given. Throws StructureError for an endpoint >= n.
    static Graph from_edge_list(std::size_t n, std::span<const std::pair<NodeId, NodeId>> pairs,
                                EdgeListReport *report = nullptr);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge> &edges() const noexcept { return edges_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
    bool has_edge(NodeId u, NodeId v) const;

    const std::optional<std::vector<Label>> &node_labels() const noexcept { return node_labels_; }
    const std::optional<std::vector<std::vector<double>>> &node_attributes() const noexcept {
        return node_attributes_;
    }
    const std::optional<Label> &graph_label() const noexcept { return graph_label_; }

    // Copies with one optional field replaced. Length and dimension are validated.
    Graph with_node_labels(std::optional<std::vector<Label>> labels) const;
    Graph with_node_attributes(std::optional<std::vector<std::vector<double>>> attributes) const;
    Graph with_graph_label(std::optional<Label> label) const;

    // Same nodes, same labels and attributes, edges restricted to `kept`,
    // which must be a subset of edges().
    Graph with_edges(std::vector<Edge> kept) const;

    friend bool operator==(const Graph &, const Graph &) = default;

private:
    void build_adjacency();

    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
    std::optional<std::vector<Label>> node_labels_;
    std::optional<std::vector<std::vector<double>>> node_attributes_;
    std::optional<Label> graph_label_;
};

struct CropResult {
    std::vector<NodeId> kept_original_ids; // strictly increasing
    Graph subgraph;                        // ids compacted to [0, kept.size())
    NodeId initial_node_original_id = 0;
};

std::vector<std::size_t> degrees(const Graph &g);

/// Induced subgraph on `keep` (non-empty, strictly increasing, valid ids).
/// Node labels, attributes and the graph label are carried over under the
/// compaction keep[i] -> i. initial_node_original_id is set to keep.front();
/// callers that crop around a specific node overwrite it.
CropResult induced_subgraph(const Graph &g, std::span<const NodeId> keep);

/// Sorted ids of the connected component containing v.
std::vector<NodeId> connected_component_of(const Graph &g, NodeId v);

bool is_connected(const Graph &g);

} // namespace graphcrop

#include <graphcrop/graph.hpp>

#include <graphcrop/error.hpp>

#include <algorithm>
#include <string>

namespace graphcrop {

Graph Graph::from_edge_list(std::size_t n, std::span<const std::pair<NodeId, NodeId>> pairs,
                            EdgeListReport *report) {
    Graph g;
    g.node_count_ = n;
    g.edges_.reserve(pairs.size());
    std::size_t self_loops = 0;
    for (const auto &[a, b] : pairs) {
        if (a >= n || b >= n) {
            throw StructureError("edge (" + std::to_string(a) + ", " + std::to_string(b)
                                 + ") has an endpoint outside [0, " + std::to_string(n) + ")");
        }
        if (a == b) {
            ++self_loops;
            continue;
        }
        g.edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    const auto unique_end = std::unique(g.edges_.begin(), g.edges_.end());
    const auto duplicates = static_cast<std::size_t>(g.edges_.end() - unique_end);
    g.edges_.erase(unique_end, g.edges_.end());
    g.build_adjacency();

    if (report != nullptr) {
        report->self_loops_dropped += self_loops;
        report->duplicates_collapsed += duplicates;
    }
    return g;
}

void Graph::build_adjacency() {
    offsets_.assign(node_count_ + 1, 0);
    for (const auto &e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < node_count_; ++i)
        offsets_[i + 1] += offsets_[i];

    adjacency_.assign(offsets_.back(), 0);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted, so every neighbor list comes out sorted as well:
    // for node x, neighbors smaller than x arrive as e.u (ascending), larger
    // ones as e.v (ascending), and all smaller ones precede all larger ones.
    for (const auto &e : edges_) {
        adjacency_[cursor[e.u]++] = e.v;
        adjacency_[cursor[e.v]++] = e.u;
    }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count_ || v >= node_count_)
        return false;
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::with_node_labels(std::optional<std::vector<Label>> labels) const {
    if (labels && labels->size() != node_count_) {
        throw StructureError("node label count " + std::to_string(labels->size())
                             + " does not match node count " + std::to_string(node_count_));
    }
    Graph g = *this;
    g.node_labels_ = std::move(labels);
    return g;
}

Graph Graph::with_node_attributes(std::optional<std::vector<std::vector<double>>> attributes) const {
    if (attributes) {
        if (attributes->size() != node_count_) {
            throw StructureError("node attribute count " + std::to_string(attributes->size())
                                 + " does not match node count " + std::to_string(node_count_));
        }
        for (const auto &row : *attributes) {
            if (row.size() != attributes->front().size())
                throw StructureError("node attribute vectors have differing dimensions");
        }
    }
    Graph g = *this;
    g.node_attributes_ = std::move(attributes);
    return g;
}

Graph Graph::with_graph_label(std::optional<Label> label) const {
    Graph g = *this;
    g.graph_label_ = label;
    return g;
}

Graph Graph::with_edges(std::vector<Edge> kept) const {
    Graph g = *this;
    g.edges_ = std::move(kept);
    g.build_adjacency();
    return g;
}

std::vector<std::size_t> degrees(const Graph &g) {
    std::vector<std::size_t> result(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        result[u] = g.degree(u);
    return result;
}

CropResult induced_subgraph(const Graph &g, std::span<const NodeId> keep) {
    if (keep.empty())
        throw UsageError("induced_subgraph: keep list is empty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= g.node_count())
            throw UsageError("induced_subgraph: node id " + std::to_string(keep[i]) + " out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw UsageError("induced_subgraph: keep list must be strictly increasing");
    }

    constexpr NodeId absent = ~NodeId{0};
    std::vector<NodeId> compact(g.node_count(), absent);
    for (std::size_t i = 0; i < keep.size(); ++i)
        compact[keep[i]] = static_cast<NodeId>(i);

    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (const NodeId u : keep) {
        for (const NodeId w : g.neighbors(u)) {
            if (w > u && compact[w] != absent)
                pairs.emplace_back(compact[u], compact[w]);
        }
    }

    Graph sub = Graph::from_edge_list(keep.size(), pairs);
    if (const auto &labels = g.node_labels()) {
        std::vector<Label> kept;
        kept.reserve(keep.size());
        for (const NodeId u : keep)
            kept.push_back((*labels)[u]);
        sub = sub.with_node_labels(std::move(kept));
    }
    if (const auto &attributes = g.node_attributes()) {
        std::vector<std::vector<double>> kept;
        kept.reserve(keep.size());
        for (const NodeId u : keep)
            kept.push_back((*attributes)[u]);
        sub = sub.with_node_attributes(std::move(kept));
    }
    sub = sub.with_graph_label(g.graph_label());

    return CropResult{std::vector<NodeId>(keep.begin(), keep.end()), std::move(sub), keep.front()};
}

std::vector<NodeId> connected_component_of(const Graph &g, NodeId v) {
    if (v >= g.node_count())
        throw UsageError("connected_component_of: node id " + std::to_string(v) + " out of range");
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack{v};
    std::vector<NodeId> component;
    seen[v] = true;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        component.push_back(u);
        for (const NodeId w : g.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    std::sort(component.begin(), component.end());
    return component;
}

bool is_connected(const Graph &g) {
    if (g.node_count() <= 1)
        return true;
    return connected_component_of(g, 0).size() == g.node_count();
}

} // namespace graphcrop

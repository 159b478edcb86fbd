#include <graphcrop/random_graphs.hpp>

#include <numeric>
#include <utility>
#include <vector>

namespace graphcrop {

Graph erdos_renyi(std::size_t n, double p, RngStream &rng) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (rng.bernoulli(p))
                pairs.emplace_back(u, v);
        }
    }
    return Graph::from_edge_list(n, pairs);
}

Graph random_connected(std::size_t n, double p, RngStream &rng) {
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);

    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (std::size_t i = 1; i < n; ++i)
        pairs.emplace_back(order[i], order[rng.below(i)]);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (rng.bernoulli(p))
                pairs.emplace_back(u, v);
        }
    }
    return Graph::from_edge_list(n, pairs);
}

} // namespace graphcrop

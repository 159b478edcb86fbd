#pragma once

#include <graphcrop/dataset.hpp>
#include <graphcrop/diffusion.hpp>
#include <graphcrop/graph.hpp>
#include <graphcrop/rng.hpp>

#include <cstdint>
#include <string>

namespace graphcrop {

enum class Method { GraphCrop, UniNode, DropEdge };

std::string to_string(Method m);
Method parse_method(const std::string &s); // "graphcrop" | "uninode" | "dropedge"

struct AugmentConfig {
    double p = 0.5;
    double rho = 0.7;
    Method method = Method::GraphCrop;
    double drop_rate = 0.3;
    DiffusionConfig diffusion;
    bool enforce_component = true;
    std::uint64_t seed = 0;

    void validate() const;
};

/// ceil(rho * n), clamped to [1, n] for n >= 1. A product that lands within
/// rounding error of an integer counts as that integer, so 0.7 * 10 gives 7.
std::size_t crop_size(double rho, std::size_t n);

/// Deterministic part of GraphCrop: ranks candidates by connectivity to v and
/// keeps the best crop_size(rho, n) of them (capped by the candidate count),
/// v always included. Candidates are v's component when enforce_component is
/// set, else every node. Ties go to the smaller node id.
CropResult crop_around(const Graph &g, NodeId v, const AugmentConfig &cfg, DiffusionCache *cache = nullptr,
                       std::size_t graph_key = 0);

/// GraphCrop with the initial node drawn uniformly from rng.
CropResult graph_crop(const Graph &g, const AugmentConfig &cfg, RngStream &rng, DiffusionCache *cache = nullptr,
                      std::size_t graph_key = 0);

/// Induced subgraph on a uniformly random subset of crop_size(rho, n) nodes.
/// The first node drawn is reported as the initial node.
CropResult uni_node(const Graph &g, double rho, RngStream &rng);

/// Removes each edge independently with probability drop_rate.
Graph drop_edge(const Graph &g, double drop_rate, RngStream &rng);

struct PolicyOutcome {
    Graph graph;
    bool augmented = false;
};

/// With probability cfg.p (drawn from the (seed, graph_index, epoch) stream)
/// applies cfg.method; otherwise returns g unchanged. Empty graphs pass
/// through. The graph label is always the input's.
PolicyOutcome apply_policy(const Graph &g, std::uint64_t graph_index, std::uint64_t epoch,
                           const AugmentConfig &cfg, DiffusionCache *cache = nullptr);

struct AugmentSummary {
    std::size_t graphs_in = 0;
    std::size_t graphs_out = 0;
    std::size_t augmented = 0;
    double mean_node_ratio = 1.0; // over augmented graphs
    double mean_edge_ratio = 1.0; // over augmented graphs with at least one edge

    double augmented_fraction() const {
        return graphs_out == 0 ? 0.0 : static_cast<double>(augmented) / static_cast<double>(graphs_out);
    }
};

struct AugmentedDataset {
    Dataset dataset;
    AugmentSummary summary;
};

struct AugmentOptions {
    std::size_t workers = 1;
    bool use_cache = true;
};

/// Output order is epoch-major, then graph index. Identical for any worker
/// count. Metadata records the configuration and seed.
AugmentedDataset augment_dataset(const Dataset &d, const AugmentConfig &cfg, std::size_t epochs,
                                 const AugmentOptions &options = {});

} // namespace graphcrop

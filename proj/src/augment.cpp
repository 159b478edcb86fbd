#include <graphcrop/augment.hpp>

#include <graphcrop/error.hpp>
#include <graphcrop/parallel.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace graphcrop {

std::string to_string(Method m) {
    switch (m) {
    case Method::GraphCrop: return "graphcrop";
    case Method::UniNode: return "uninode";
    case Method::DropEdge: return "dropedge";
    }
    return "?";
}

Method parse_method(const std::string &s) {
    if (s == "graphcrop")
        return Method::GraphCrop;
    if (s == "uninode")
        return Method::UniNode;
    if (s == "dropedge")
        return Method::DropEdge;
    throw UsageError("unknown method '" + s + "' (expected graphcrop, uninode or dropedge)");
}

void AugmentConfig::validate() const {
    if (!(p >= 0.0 && p <= 1.0))
        throw UsageError("p must lie in [0, 1], got " + std::to_string(p));
    if (!(rho > 0.0 && rho <= 1.0))
        throw UsageError("rho must lie in (0, 1], got " + std::to_string(rho));
    if (!(drop_rate >= 0.0 && drop_rate < 1.0))
        throw UsageError("drop rate must lie in [0, 1), got " + std::to_string(drop_rate));
    if (method == Method::GraphCrop)
        diffusion.validate();
}

std::size_t crop_size(double rho, std::size_t n) {
    if (n == 0)
        return 0;
    const double x = rho * static_cast<double>(n);
    const double nearest = std::round(x);
    const double m = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
    return std::clamp<std::size_t>(static_cast<std::size_t>(m), 1, n);
}

CropResult crop_around(const Graph &g, NodeId v, const AugmentConfig &cfg, DiffusionCache *cache,
                       std::size_t graph_key) {
    if (v >= g.node_count())
        throw UsageError("initial node " + std::to_string(v) + " out of range for a graph with "
                         + std::to_string(g.node_count()) + " nodes");
    if (!(cfg.rho > 0.0 && cfg.rho <= 1.0))
        throw UsageError("rho must lie in (0, 1], got " + std::to_string(cfg.rho));

    std::vector<NodeId> candidates;
    if (cfg.enforce_component) {
        candidates = connected_component_of(g, v);
    } else {
        candidates.resize(g.node_count());
        std::iota(candidates.begin(), candidates.end(), NodeId{0});
    }
    const std::size_t target = std::min(crop_size(cfg.rho, g.node_count()), candidates.size());

    std::vector<NodeId> kept{v};
    if (target > 1) {
        auto scores = connectivity_scores(g, v, cfg.diffusion, cache, graph_key).scores;
        // Scores equal up to round-off (symmetric positions) must tie, so rank
        // on a 1e-12 grid relative to the largest magnitude.
        double scale = 0.0;
        for (const NodeId u : candidates)
            scale = std::max(scale, std::abs(scores[u]));
        if (scale > 0.0) {
            for (auto &s : scores)
                s = std::round(s / scale * 1e12);
        }
        std::erase(candidates, v);
        const auto better = [&](NodeId a, NodeId b) {
            return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
        };
        const auto cut = candidates.begin() + static_cast<std::ptrdiff_t>(target - 1);
        std::partial_sort(candidates.begin(), cut, candidates.end(), better);
        kept.insert(kept.end(), candidates.begin(), cut);
    }
    std::sort(kept.begin(), kept.end());

    auto result = induced_subgraph(g, kept);
    result.initial_node_original_id = v;
    return result;
}

CropResult graph_crop(const Graph &g, const AugmentConfig &cfg, RngStream &rng, DiffusionCache *cache,
                      std::size_t graph_key) {
    if (g.node_count() == 0)
        throw UsageError("cannot crop an empty graph");
    const auto v = static_cast<NodeId>(rng.below(g.node_count()));
    return crop_around(g, v, cfg, cache, graph_key);
}

CropResult uni_node(const Graph &g, double rho, RngStream &rng) {
    if (g.node_count() == 0)
        throw UsageError("cannot sample nodes from an empty graph");
    if (!(rho > 0.0 && rho <= 1.0))
        throw UsageError("rho must lie in (0, 1], got " + std::to_string(rho));
    const std::size_t n = g.node_count();
    const std::size_t m = crop_size(rho, n);

    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    for (std::size_t i = 0; i < m; ++i)
        std::swap(ids[i], ids[i + rng.below(n - i)]);
    const NodeId first = ids.front();
    ids.resize(m);
    std::sort(ids.begin(), ids.end());

    auto result = induced_subgraph(g, ids);
    result.initial_node_original_id = first;
    return result;
}

Graph drop_edge(const Graph &g, double drop_rate, RngStream &rng) {
    if (!(drop_rate >= 0.0 && drop_rate < 1.0))
        throw UsageError("drop rate must lie in [0, 1), got " + std::to_string(drop_rate));
    std::vector<Edge> kept;
    kept.reserve(g.edge_count());
    for (const auto &e : g.edges()) {
        if (!rng.bernoulli(drop_rate))
            kept.push_back(e);
    }
    return g.with_edges(std::move(kept));
}

PolicyOutcome apply_policy(const Graph &g, std::uint64_t graph_index, std::uint64_t epoch,
                           const AugmentConfig &cfg, DiffusionCache *cache) {
    RngStream rng(cfg.seed, graph_index, epoch);
    if (!rng.bernoulli(cfg.p) || g.node_count() == 0)
        return {g, false};

    switch (cfg.method) {
    case Method::GraphCrop:
        return {graph_crop(g, cfg, rng, cache, static_cast<std::size_t>(graph_index)).subgraph, true};
    case Method::UniNode:
        return {uni_node(g, cfg.rho, rng).subgraph, true};
    case Method::DropEdge:
        return {drop_edge(g, cfg.drop_rate, rng), true};
    }
    throw UsageError("unknown augmentation method");
}

namespace {

// Shortest form that reads back to the same double.
std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::map<std::string, std::string> describe(const AugmentConfig &cfg, std::size_t epochs) {
    std::map<std::string, std::string> meta{
        {"method", to_string(cfg.method)},
        {"p", format_double(cfg.p)},
        {"seed", std::to_string(cfg.seed)},
        {"epochs", std::to_string(epochs)},
    };
    if (cfg.method == Method::DropEdge) {
        meta["drop_rate"] = format_double(cfg.drop_rate);
        return meta;
    }
    meta["rho"] = format_double(cfg.rho);
    if (cfg.method == Method::GraphCrop) {
        meta["metric"] = to_string(cfg.diffusion.metric);
        meta["enforce_component"] = cfg.enforce_component ? "true" : "false";
        if (cfg.diffusion.metric != Metric::SP) {
            meta["normalization"] = to_string(cfg.diffusion.effective_normalization());
            meta["series_depth"] = std::to_string(cfg.diffusion.series_depth);
        }
        if (cfg.diffusion.metric == Metric::PPR) {
            meta["alpha"] = format_double(cfg.diffusion.alpha);
            meta["residual_tol"] = format_double(cfg.diffusion.residual_tol);
        }
        if (cfg.diffusion.metric == Metric::Heat)
            meta["t"] = format_double(cfg.diffusion.t);
    }
    return meta;
}

// A full matrix costs about as much as n heat columns or a few PPR columns.
bool worth_caching(const Graph &g, const AugmentConfig &cfg, std::size_t epochs) {
    if (cfg.method != Method::GraphCrop || epochs < 2)
        return false;
    if (cfg.diffusion.metric == Metric::PPR)
        return true;
    return cfg.diffusion.metric == Metric::Heat && epochs >= g.node_count();
}

} // namespace

AugmentedDataset augment_dataset(const Dataset &d, const AugmentConfig &cfg, std::size_t epochs,
                                 const AugmentOptions &options) {
    if (epochs < 1)
        throw UsageError("epochs must be at least 1");
    cfg.validate();

    const std::size_t graph_count = d.graphs.size();
    std::vector<PolicyOutcome> outcomes(graph_count * epochs);

    // One task per graph covering every epoch, so a graph's diffusion matrix
    // lives only while that graph is being augmented.
    parallel_for(graph_count, options.workers, [&](std::size_t index) {
        const auto &g = d.graphs[index];
        DiffusionCache cache;
        DiffusionCache *local = options.use_cache && worth_caching(g, cfg, epochs) ? &cache : nullptr;
        for (std::size_t epoch = 0; epoch < epochs; ++epoch)
            outcomes[epoch * graph_count + index] = apply_policy(g, index, epoch, cfg, local);
    });

    AugmentSummary summary;
    summary.graphs_in = graph_count;
    summary.graphs_out = outcomes.size();
    double node_ratio_sum = 0.0;
    double edge_ratio_sum = 0.0;
    std::size_t with_edges = 0;
    std::vector<Graph> graphs;
    graphs.reserve(outcomes.size());
    for (std::size_t slot = 0; slot < outcomes.size(); ++slot) {
        auto &outcome = outcomes[slot];
        if (outcome.augmented) {
            const auto &source = d.graphs[slot % graph_count];
            ++summary.augmented;
            node_ratio_sum += static_cast<double>(outcome.graph.node_count())
                              / static_cast<double>(source.node_count());
            if (source.edge_count() > 0) {
                ++with_edges;
                edge_ratio_sum += static_cast<double>(outcome.graph.edge_count())
                                  / static_cast<double>(source.edge_count());
            }
        }
        graphs.push_back(std::move(outcome.graph));
    }
    if (summary.augmented > 0)
        summary.mean_node_ratio = node_ratio_sum / static_cast<double>(summary.augmented);
    if (with_edges > 0)
        summary.mean_edge_ratio = edge_ratio_sum / static_cast<double>(with_edges);

    auto metadata = describe(cfg, epochs);
    metadata["source_graphs"] = std::to_string(graph_count);
    return {make_dataset(d.name, std::move(graphs), std::move(metadata)), summary};
}

} // namespace graphcrop

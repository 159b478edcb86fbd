#include <graphcrop/dataset.hpp>

#include <graphcrop/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace graphcrop {

Dataset make_dataset(std::string name, std::vector<Graph> graphs,
                     std::map<std::string, std::string> metadata) {
    Dataset d{std::move(name), std::move(graphs), {}, std::move(metadata)};
    for (const auto &g : d.graphs) {
        if (g.graph_label())
            d.label_set.push_back(*g.graph_label());
    }
    std::sort(d.label_set.begin(), d.label_set.end());
    d.label_set.erase(std::unique(d.label_set.begin(), d.label_set.end()), d.label_set.end());
    return d;
}

DatasetStats dataset_stats(const Dataset &d) {
    if (d.graphs.empty())
        throw UsageError("dataset '" + d.name + "' contains no graphs");
    std::size_t nodes = 0;
    std::size_t edges = 0;
    for (const auto &g : d.graphs) {
        nodes += g.node_count();
        edges += g.edge_count();
    }
    const auto count = static_cast<double>(d.graphs.size());
    return {d.graphs.size(), static_cast<double>(nodes) / count, static_cast<double>(edges) / count};
}

std::string format_stats(const DatasetStats &stats) {
    char buffer[128];
    std::snprintf(buffer, sizeof buffer, "%zu graphs, %.2f nodes, %.2f edges", stats.graph_count,
                  stats.mean_nodes, stats.mean_edges);
    return buffer;
}

std::optional<DatasetStats> published_stats(const std::string &name) {
    struct Row {
        const char *names[3];
        DatasetStats stats;
    };
    static const Row rows[] = {
        {{"DD", "D&D", nullptr}, {1178, 284.32, 715.66}},
        {{"ENZYMES", nullptr, nullptr}, {600, 32.63, 62.14}},
        {{"NCI1", nullptr, nullptr}, {4110, 29.87, 32.30}},
        {{"NCI109", nullptr, nullptr}, {4127, 29.68, 32.13}},
        {{"PROTEINS", nullptr, nullptr}, {1113, 39.06, 72.82}},
        {{"COLLAB", nullptr, nullptr}, {5000, 74.49, 2457.78}},
        {{"IMDB-BINARY", "IMDB-B", nullptr}, {1000, 19.77, 96.53}},
        {{"IMDB-MULTI", "IMDB-M", nullptr}, {1500, 13.00, 65.94}},
        {{"REDDIT-BINARY", "REDDIT-B", nullptr}, {2000, 429.63, 497.75}},
        {{"REDDIT-MULTI-5K", "REDDIT-5K", nullptr}, {4999, 508.52, 594.87}},
    };
    for (const auto &row : rows) {
        for (const char *alias : row.names) {
            if (alias != nullptr && name == alias)
                return row.stats;
        }
    }
    return std::nullopt;
}

bool matches_published(const DatasetStats &measured, const DatasetStats &published) {
    // +-0.01 on the means, with slack for binary rounding of the two-decimal figures.
    constexpr double tolerance = 0.01 + 1e-9;
    return measured.graph_count == published.graph_count
           && std::abs(measured.mean_nodes - published.mean_nodes) <= tolerance
           && std::abs(measured.mean_edges - published.mean_edges) <= tolerance;
}

bool same_structure(const Dataset &a, const Dataset &b) {
    return a.graphs == b.graphs && a.label_set == b.label_set;
}

Dataset synthesize_degree_labels(const Dataset &d, DegreeLabelMode mode) {
    Dataset out = d;
    for (auto &g : out.graphs) {
        if (mode == DegreeLabelMode::FillMissing && g.node_labels())
            continue;
        std::vector<Label> labels;
        labels.reserve(g.node_count());
        for (const auto deg : degrees(g))
            labels.push_back(static_cast<Label>(deg));
        g = g.with_node_labels(std::move(labels));
    }
    return out;
}

} // namespace graphcrop

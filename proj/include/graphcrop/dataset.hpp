#pragma once

#include <graphcrop/graph.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graphcrop {

struct Dataset {
    std::string name;
    std::vector<Graph> graphs;
    std::vector<Label> label_set; // sorted, distinct
    std::map<std::string, std::string> metadata;
};

/// Assembles a dataset and derives label_set from the graphs' labels.
Dataset make_dataset(std::string name, std::vector<Graph> graphs,
                     std::map<std::string, std::string> metadata = {});

struct DatasetStats {
    std::size_t graph_count = 0;
    double mean_nodes = 0.0;
    double mean_edges = 0.0; // undirected edges
};

/// Throws UsageError for an empty dataset.
DatasetStats dataset_stats(const Dataset &d);

/// "1113 graphs, 39.06 nodes, 72.82 edges"
std::string format_stats(const DatasetStats &stats);

/// Published benchmark statistics (graph count, mean nodes, mean undirected
/// edges) keyed by TU directory name; common aliases such as "IMDB-B" and
/// "D&D" are accepted.
std::optional<DatasetStats> published_stats(const std::string &name);

/// Counts equal and both means within 0.01 of the published figures.
bool matches_published(const DatasetStats &measured, const DatasetStats &published);

/// Structural equality of graphs, labels and attributes; name and metadata are
/// not compared.
bool same_structure(const Dataset &a, const Dataset &b);

enum class DegreeLabelMode {
    FillMissing, // graphs that already carry node labels keep them
    Replace,     // every graph's node labels become its degree sequence
};

Dataset synthesize_degree_labels(const Dataset &d, DegreeLabelMode mode = DegreeLabelMode::FillMissing);

} // namespace graphcrop

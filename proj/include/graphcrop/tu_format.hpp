#pragma once

#include <graphcrop/dataset.hpp>

#include <filesystem>
#include <string>

namespace graphcrop {

struct TuReport {
    std::size_t edge_rows = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_rows = 0; // includes the reverse row of every symmetric pair
};

/**
 * Reads a TU-format dataset from `directory`.
 *
 * Required files: NAME_A.txt ("u, v" rows of 1-based global node ids) and
 * NAME_graph_indicator.txt (line i holds the 1-based graph id of global node i).
 * Optional: NAME_graph_labels.txt, NAME_node_labels.txt, NAME_node_attributes.txt.
 * Other TU files (edge labels, edge attributes) are ignored.
 *
 * Per-graph local ids follow global order. An edge listed in one or both
 * directions becomes one undirected edge. Whitespace around fields and blank
 * lines are tolerated. Malformed content raises ParseError with the file and
 * line; a missing required file raises IoError.
 */
Dataset parse_tu(const std::filesystem::path &directory, const std::string &name,
                 TuReport *report = nullptr);

/// Writes `d` under `directory` using d.name as the file prefix. Each undirected
/// edge is emitted in both directions. Throws UsageError for an empty dataset or
/// for labels present on only some graphs; IoError on write failure.
void write_tu(const Dataset &d, const std::filesystem::path &directory);

} // namespace graphcrop

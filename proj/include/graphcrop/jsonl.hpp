#pragma once

#include <graphcrop/dataset.hpp>

#include <filesystem>
#include <string>

namespace graphcrop {

// One object per graph:
//   {"id":0,"label":1,"n":3,"edges":[[0,1],[0,2],[1,2]]}
// with optional "node_labels" and "node_attributes" arrays appended. Edges
// have u < v and are sorted. A missing graph label is written as null.
std::string graph_to_jsonl(const Graph &g, std::size_t id);

void write_jsonl(const Dataset &d, const std::filesystem::path &path);
Dataset read_jsonl(const std::filesystem::path &path, const std::string &name);

} // namespace graphcrop

#include <graphcrop/jsonl.hpp>

#include <graphcrop/error.hpp>

#include <json.hpp>

#include <fstream>

namespace graphcrop {

using ordered_json = nlohmann::ordered_json;

std::string graph_to_jsonl(const Graph &g, std::size_t id) {
    ordered_json obj;
    obj["id"] = id;
    obj["label"] = g.graph_label() ? ordered_json(*g.graph_label()) : ordered_json(nullptr);
    obj["n"] = g.node_count();
    auto edges = ordered_json::array();
    for (const auto &e : g.edges())
        edges.push_back({e.u, e.v});
    obj["edges"] = std::move(edges);
    if (g.node_labels())
        obj["node_labels"] = *g.node_labels();
    if (g.node_attributes())
        obj["node_attributes"] = *g.node_attributes();
    return obj.dump();
}

void write_jsonl(const Dataset &d, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    for (std::size_t k = 0; k < d.graphs.size(); ++k)
        out << graph_to_jsonl(d.graphs[k], k) << '\n';
    out.close();
    if (!out)
        throw IoError("error writing " + path.string());
}

Dataset read_jsonl(const std::filesystem::path &path, const std::string &name) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());

    std::vector<Graph> graphs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            const auto obj = nlohmann::json::parse(line);
            if (obj.at("id").get<std::size_t>() != graphs.size())
                throw ParseError(path.string(), line_no, "graph ids must be consecutive from 0");
            std::vector<std::pair<NodeId, NodeId>> pairs;
            for (const auto &edge : obj.at("edges"))
                pairs.emplace_back(edge.at(0).get<NodeId>(), edge.at(1).get<NodeId>());
            Graph g = Graph::from_edge_list(obj.at("n").get<std::size_t>(), pairs);
            if (!obj.at("label").is_null())
                g = g.with_graph_label(obj.at("label").get<Label>());
            if (obj.contains("node_labels"))
                g = g.with_node_labels(obj["node_labels"].get<std::vector<Label>>());
            if (obj.contains("node_attributes"))
                g = g.with_node_attributes(obj["node_attributes"].get<std::vector<std::vector<double>>>());
            graphs.push_back(std::move(g));
        } catch (const nlohmann::json::exception &e) {
            throw ParseError(path.string(), line_no, e.what());
        } catch (const StructureError &e) {
            throw ParseError(path.string(), line_no, e.what());
        }
    }
    return make_dataset(name, std::move(graphs), {{"source", path.string()}});
}

} // namespace graphcrop

#include <graphcrop/tu_format.hpp>

#include <graphcrop/error.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

namespace graphcrop {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("error reading " + path.string());
    return std::move(buffer).str();
}

std::string_view trim(std::string_view s) {
    constexpr std::string_view blank = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(blank);
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(blank);
    return s.substr(first, last - first + 1);
}

// Iterates the non-blank lines of a file, tracking 1-based line numbers.
class LineCursor {
public:
    LineCursor(std::string text, std::string file) : text_(std::move(text)), file_(std::move(file)) {}

    bool next(std::string_view &line) {
        while (pos_ < text_.size()) {
            auto end = text_.find('\n', pos_);
            if (end == std::string::npos)
                end = text_.size();
            line = trim(std::string_view(text_).substr(pos_, end - pos_));
            pos_ = end + 1;
            ++line_;
            if (!line.empty())
                return true;
        }
        return false;
    }

    std::size_t line() const noexcept { return line_; }
    const std::string &file() const noexcept { return file_; }

    [[noreturn]] void fail(const std::string &what) const { throw ParseError(file_, line_, what); }
    [[noreturn]] void fail_at(std::size_t line, const std::string &what) const {
        throw ParseError(file_, line, what);
    }

    template <class T>
    T number(std::string_view field) const {
        field = trim(field);
        T value{};
        const auto *first = field.data();
        const auto *last = field.data() + field.size();
        if (!field.empty() && *first == '+')
            ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (field.empty() || ec != std::errc{} || ptr != last)
            fail("expected a number, found '" + std::string(field) + "'");
        return value;
    }

    template <class T>
    std::vector<T> fields(std::string_view line) const {
        std::vector<T> out;
        while (true) {
            const auto comma = line.find(',');
            out.push_back(number<T>(line.substr(0, comma)));
            if (comma == std::string_view::npos)
                break;
            line.remove_prefix(comma + 1);
        }
        return out;
    }

private:
    std::string text_;
    std::string file_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

LineCursor open_lines(const fs::path &path) { return LineCursor(read_file(path), path.string()); }

template <class T>
std::vector<T> read_column(const fs::path &path) {
    auto cursor = open_lines(path);
    std::vector<T> values;
    std::string_view line;
    while (cursor.next(line))
        values.push_back(cursor.number<T>(line));
    return values;
}

std::string file_name(const std::string &name, const char *suffix) { return name + "_" + suffix + ".txt"; }

// Locale-independent shortest round-trip text for a double.
std::string format_real(double x) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    return std::string(buffer, ptr);
}

} // namespace

Dataset parse_tu(const fs::path &directory, const std::string &name, TuReport *report) {
    if (!fs::is_directory(directory))
        throw IoError("dataset directory " + directory.string() + " does not exist");

    const auto indicator_path = directory / file_name(name, "graph_indicator");
    const auto edges_path = directory / file_name(name, "A");
    const auto graph_labels_path = directory / file_name(name, "graph_labels");
    const auto node_labels_path = directory / file_name(name, "node_labels");
    const auto attributes_path = directory / file_name(name, "node_attributes");

    std::optional<std::vector<Label>> graph_labels;
    if (fs::exists(graph_labels_path))
        graph_labels = read_column<Label>(graph_labels_path);

    // Global node i (0-based) -> (graph index, local id).
    std::vector<std::size_t> graph_of;
    std::vector<NodeId> local_of;
    std::vector<std::size_t> nodes_per_graph;
    std::vector<std::size_t> indicator_lines;
    {
        auto cursor = open_lines(indicator_path);
        std::string_view line;
        std::vector<long long> ids;
        long long max_id = 0;
        while (cursor.next(line)) {
            const auto id = cursor.number<long long>(line);
            if (id < 1)
                cursor.fail("node " + std::to_string(ids.size() + 1) + " assigned to nonexistent graph "
                            + std::to_string(id));
            if (graph_labels && static_cast<std::size_t>(id) > graph_labels->size())
                cursor.fail("node " + std::to_string(ids.size() + 1) + " assigned to nonexistent graph "
                            + std::to_string(id) + " (" + std::to_string(graph_labels->size())
                            + " graph labels)");
            ids.push_back(id);
            indicator_lines.push_back(cursor.line());
            max_id = std::max(max_id, id);
        }
        const std::size_t graph_count = graph_labels ? graph_labels->size() : static_cast<std::size_t>(max_id);
        nodes_per_graph.assign(graph_count, 0);
        graph_of.reserve(ids.size());
        local_of.reserve(ids.size());
        for (const auto id : ids) {
            const auto k = static_cast<std::size_t>(id - 1);
            graph_of.push_back(k);
            local_of.push_back(static_cast<NodeId>(nodes_per_graph[k]++));
        }
    }
    const std::size_t node_total = graph_of.size();
    const std::size_t graph_count = nodes_per_graph.size();

    std::vector<std::vector<std::pair<NodeId, NodeId>>> pairs(graph_count);
    std::size_t edge_rows = 0;
    {
        auto cursor = open_lines(edges_path);
        std::string_view line;
        while (cursor.next(line)) {
            const auto row = cursor.fields<long long>(line);
            if (row.size() != 2)
                cursor.fail("expected 'u, v', found " + std::to_string(row.size()) + " fields");
            for (const auto id : row) {
                if (id < 1 || static_cast<std::size_t>(id) > node_total)
                    cursor.fail("node id " + std::to_string(id) + " outside [1, " + std::to_string(node_total)
                                + "]");
            }
            const auto a = static_cast<std::size_t>(row[0] - 1);
            const auto b = static_cast<std::size_t>(row[1] - 1);
            if (graph_of[a] != graph_of[b])
                cursor.fail("edge (" + std::to_string(row[0]) + ", " + std::to_string(row[1])
                            + ") crosses graphs " + std::to_string(graph_of[a] + 1) + " and "
                            + std::to_string(graph_of[b] + 1));
            pairs[graph_of[a]].emplace_back(local_of[a], local_of[b]);
            ++edge_rows;
        }
    }

    std::optional<std::vector<Label>> node_labels;
    if (fs::exists(node_labels_path)) {
        auto cursor = open_lines(node_labels_path);
        std::string_view line;
        node_labels.emplace();
        node_labels->reserve(node_total);
        while (cursor.next(line)) {
            if (node_labels->size() == node_total)
                cursor.fail("more node labels than nodes (" + std::to_string(node_total) + ")");
            // Some mirrors store several label columns; the first one is the label.
            node_labels->push_back(cursor.fields<Label>(line).front());
        }
        if (node_labels->size() != node_total)
            cursor.fail_at(cursor.line() + 1, "found " + std::to_string(node_labels->size())
                                                  + " node labels for " + std::to_string(node_total) + " nodes");
    }

    std::optional<std::vector<std::vector<double>>> attributes;
    if (fs::exists(attributes_path)) {
        auto cursor = open_lines(attributes_path);
        std::string_view line;
        attributes.emplace();
        attributes->reserve(node_total);
        while (cursor.next(line)) {
            if (attributes->size() == node_total)
                cursor.fail("more attribute rows than nodes (" + std::to_string(node_total) + ")");
            auto row = cursor.fields<double>(line);
            if (!attributes->empty() && row.size() != attributes->front().size())
                cursor.fail("attribute row has " + std::to_string(row.size()) + " values, expected "
                            + std::to_string(attributes->front().size()));
            attributes->push_back(std::move(row));
        }
        if (attributes->size() != node_total)
            cursor.fail_at(cursor.line() + 1, "found " + std::to_string(attributes->size())
                                                  + " attribute rows for " + std::to_string(node_total)
                                                  + " nodes");
    }

    // Bucket per-node data by graph in global order, which is local-id order.
    std::vector<std::vector<Label>> labels_by_graph(node_labels ? graph_count : 0);
    std::vector<std::vector<std::vector<double>>> attributes_by_graph(attributes ? graph_count : 0);
    for (std::size_t i = 0; i < node_total; ++i) {
        if (node_labels)
            labels_by_graph[graph_of[i]].push_back((*node_labels)[i]);
        if (attributes)
            attributes_by_graph[graph_of[i]].push_back(std::move((*attributes)[i]));
    }

    EdgeListReport edge_report;
    std::vector<Graph> graphs;
    graphs.reserve(graph_count);
    for (std::size_t k = 0; k < graph_count; ++k) {
        Graph g = Graph::from_edge_list(nodes_per_graph[k], pairs[k], &edge_report);
        if (node_labels)
            g = g.with_node_labels(std::move(labels_by_graph[k]));
        if (attributes)
            g = g.with_node_attributes(std::move(attributes_by_graph[k]));
        if (graph_labels)
            g = g.with_graph_label((*graph_labels)[k]);
        graphs.push_back(std::move(g));
    }

    if (report != nullptr) {
        report->edge_rows = edge_rows;
        report->self_loops_dropped = edge_report.self_loops_dropped;
        report->duplicate_rows = edge_report.duplicates_collapsed;
    }
    return make_dataset(name, std::move(graphs), {{"source", directory.string()}});
}

namespace {

class OutputFile {
public:
    explicit OutputFile(fs::path path) : path_(std::move(path)), out_(path_, std::ios::binary) {
        if (!out_)
            throw IoError("cannot open " + path_.string() + " for writing");
    }

    std::ostream &stream() { return out_; }

    void close() {
        out_.close();
        if (!out_)
            throw IoError("error writing " + path_.string());
    }

private:
    fs::path path_;
    std::ofstream out_;
};

template <class Field>
bool all_or_none(const Dataset &d, Field field, const char *what) {
    std::size_t present = 0;
    for (const auto &g : d.graphs)
        present += field(g) ? 1 : 0;
    if (present != 0 && present != d.graphs.size())
        throw UsageError(std::string(what) + " present on only some graphs; TU format cannot represent that");
    return present != 0;
}

} // namespace

void write_tu(const Dataset &d, const fs::path &directory) {
    if (d.graphs.empty())
        throw UsageError("dataset '" + d.name + "' has no graphs to write");
    if (d.name.empty())
        throw UsageError("dataset name is empty");

    const bool has_graph_labels = all_or_none(d, [](const Graph &g) { return g.graph_label().has_value(); },
                                              "graph labels");
    const bool has_node_labels = all_or_none(d, [](const Graph &g) { return g.node_labels().has_value(); },
                                             "node labels");
    const bool has_attributes = all_or_none(
        d, [](const Graph &g) { return g.node_attributes().has_value(); }, "node attributes");

    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec)
        throw IoError("cannot create " + directory.string() + ": " + ec.message());

    OutputFile edges(directory / file_name(d.name, "A"));
    OutputFile indicator(directory / file_name(d.name, "graph_indicator"));

    std::size_t offset = 1;
    for (std::size_t k = 0; k < d.graphs.size(); ++k) {
        const auto &g = d.graphs[k];
        // Rows sorted by (source, target), each undirected edge appearing twice.
        for (NodeId u = 0; u < g.node_count(); ++u) {
            for (const NodeId w : g.neighbors(u))
                edges.stream() << offset + u << ", " << offset + w << '\n';
        }
        for (std::size_t u = 0; u < g.node_count(); ++u)
            indicator.stream() << k + 1 << '\n';
        offset += g.node_count();
    }
    edges.close();
    indicator.close();

    if (has_graph_labels) {
        OutputFile out(directory / file_name(d.name, "graph_labels"));
        for (const auto &g : d.graphs)
            out.stream() << *g.graph_label() << '\n';
        out.close();
    }
    if (has_node_labels) {
        OutputFile out(directory / file_name(d.name, "node_labels"));
        for (const auto &g : d.graphs) {
            for (const auto label : *g.node_labels())
                out.stream() << label << '\n';
        }
        out.close();
    }
    if (has_attributes) {
        OutputFile out(directory / file_name(d.name, "node_attributes"));
        for (const auto &g : d.graphs) {
            for (const auto &row : *g.node_attributes()) {
                for (std::size_t j = 0; j < row.size(); ++j)
                    out.stream() << (j ? ", " : "") << format_real(row[j]);
                out.stream() << '\n';
            }
        }
        out.close();
    }
}

} // namespace graphcrop

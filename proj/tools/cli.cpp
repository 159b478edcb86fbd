#include "cli.hpp"

#include <graphcrop/augment.hpp>
#include <graphcrop/dataset.hpp>
#include <graphcrop/diffusion.hpp>
#include <graphcrop/error.hpp>
#include <graphcrop/jsonl.hpp>
#include <graphcrop/parallel.hpp>
#include <graphcrop/tu_format.hpp>
#include <graphcrop/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

namespace graphcrop::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct DataArgs {
    std::string data;
    std::string name;
    std::string degree_labels = "none";
    int verbosity = 0;
};

struct AugmentArgs {
    std::string method = "graphcrop";
    std::string metric = "ppr";
    std::string normalization;
    double p = 0.5;
    double rho = 0.7;
    double alpha = 0.15;
    double t = 5.0;
    double drop_rate = 0.3;
    int series_depth = 64;
    double residual_tol = 1e-6;
    bool enforce_component = true;
    std::uint64_t seed = 0;

    AugmentConfig config() const {
        AugmentConfig cfg;
        cfg.p = p;
        cfg.rho = rho;
        cfg.method = parse_method(method);
        cfg.drop_rate = drop_rate;
        cfg.enforce_component = enforce_component;
        cfg.seed = seed;
        cfg.diffusion.metric = parse_metric(metric);
        cfg.diffusion.alpha = alpha;
        cfg.diffusion.t = t;
        cfg.diffusion.series_depth = series_depth;
        cfg.diffusion.residual_tol = residual_tol;
        if (!normalization.empty())
            cfg.diffusion.normalization = parse_normalization(normalization);
        cfg.validate();
        return cfg;
    }
};

void add_data_flags(CLI::App &cmd, DataArgs &args) {
    cmd.add_option("--data", args.data, "TU dataset directory")->required();
    cmd.add_option("--name", args.name, "dataset name (file prefix inside --data)")->required();
    cmd.add_option("--degree-labels", args.degree_labels,
                   "replace node labels by node degrees: none, fill (unlabeled graphs only) or replace")
        ->check(CLI::IsMember({"none", "fill", "replace"}));
    cmd.add_flag("-v,--verbose", args.verbosity, "print parse diagnostics");
}

void add_augment_flags(CLI::App &cmd, AugmentArgs &args) {
    cmd.add_option("--method", args.method, "graphcrop, uninode or dropedge")
        ->check(CLI::IsMember({"graphcrop", "uninode", "dropedge"}))
        ->capture_default_str();
    cmd.add_option("--metric", args.metric, "connectivity metric: ppr, heat or sp")
        ->check(CLI::IsMember({"ppr", "heat", "sp"}))
        ->capture_default_str();
    cmd.add_option("--p", args.p, "augmentation probability")->capture_default_str();
    cmd.add_option("--rho", args.rho, "fraction of nodes kept, in (0, 1]")->capture_default_str();
    cmd.add_option("--alpha", args.alpha, "PPR teleport probability (not published; artifact default)")
        ->capture_default_str();
    cmd.add_option("--t", args.t, "heat diffusion time (not published; artifact default)")->capture_default_str();
    cmd.add_option("--drop-rate", args.drop_rate, "DropEdge drop probability (not published; artifact default)")
        ->capture_default_str();
    cmd.add_option("--normalization", args.normalization,
                   "sym or rw; default sym for ppr and rw for heat")
        ->check(CLI::IsMember({"sym", "rw"}));
    cmd.add_option("--series-depth", args.series_depth, "series truncation depth K")->capture_default_str();
    cmd.add_option("--residual-tol", args.residual_tol, "stopping threshold of the iterative PPR column")
        ->capture_default_str();
    cmd.add_option("--enforce-component", args.enforce_component,
                   "restrict crops to the initial node's component (true/false)")
        ->capture_default_str();
    cmd.add_option("--seed", args.seed, "random seed")->capture_default_str();
}

Dataset load(const DataArgs &args, std::ostream &err) {
    TuReport report;
    Dataset d = parse_tu(args.data, args.name, &report);
    if (report.self_loops_dropped > 0)
        err << "warning: dropped " << report.self_loops_dropped << " self-loop rows\n";
    if (args.verbosity > 0)
        err << "parsed " << d.graphs.size() << " graphs from " << report.edge_rows << " edge rows ("
            << report.duplicate_rows << " duplicate or reverse rows collapsed)\n";
    if (args.degree_labels == "fill")
        d = synthesize_degree_labels(d, DegreeLabelMode::FillMissing);
    else if (args.degree_labels == "replace")
        d = synthesize_degree_labels(d, DegreeLabelMode::Replace);
    return d;
}

const Graph &pick_graph(const Dataset &d, std::size_t index) {
    if (index >= d.graphs.size())
        throw UsageError("graph index " + std::to_string(index) + " out of range (dataset has "
                         + std::to_string(d.graphs.size()) + " graphs)");
    return d.graphs[index];
}

ordered_json edge_list(const Graph &g) {
    auto edges = ordered_json::array();
    for (const auto &e : g.edges())
        edges.push_back({e.u, e.v});
    return edges;
}

std::string fixed(double x, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, x);
    return buffer;
}

int cmd_stats(const DataArgs &args, std::ostream &out, std::ostream &err) {
    const auto stats = dataset_stats(load(args, err));
    out << format_stats(stats) << '\n';
    if (const auto published = published_stats(args.name)) {
        if (matches_published(stats, *published))
            out << "matches published statistics\n";
        else
            err << "warning: published statistics are " << format_stats(*published) << '\n';
    }
    return Success;
}

int cmd_augment(const DataArgs &data, const AugmentArgs &args, const std::string &out_dir,
                const std::string &format, std::size_t epochs, std::ostream &out, std::ostream &err) {
    const auto cfg = args.config();
    const Dataset d = load(data, err);

    AugmentOptions options;
    options.workers = default_worker_count();
    const auto result = augment_dataset(d, cfg, epochs, options);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create " + out_dir + ": " + ec.message());
    fs::path written;
    if (format == "jsonl") {
        written = fs::path(out_dir) / (d.name + ".jsonl");
        write_jsonl(result.dataset, written);
    } else {
        write_tu(result.dataset, out_dir);
        written = out_dir;
    }

    ordered_json meta(result.dataset.metadata);
    const auto meta_path = fs::path(out_dir) / (d.name + "_augment.json");
    std::ofstream meta_file(meta_path, std::ios::binary);
    meta_file << meta.dump(2) << '\n';
    meta_file.close();
    if (!meta_file)
        throw IoError("error writing " + meta_path.string());

    const auto &s = result.summary;
    out << "graphs in: " << s.graphs_in << ", graphs out: " << s.graphs_out << '\n'
        << "augmented fraction: " << fixed(s.augmented_fraction(), 4) << '\n'
        << "mean crop size ratio: " << fixed(s.mean_node_ratio, 4) << '\n'
        << "mean edge ratio: " << fixed(s.mean_edge_ratio, 4) << '\n'
        << "written: " << written.string() << '\n';
    return Success;
}

int cmd_crop(const DataArgs &data, const AugmentArgs &args, std::size_t graph_index,
             std::optional<std::int64_t> initial_node, std::ostream &out, std::ostream &err) {
    auto cfg = args.config();
    const Dataset d = load(data, err);
    const Graph &g = pick_graph(d, graph_index);
    if (g.node_count() == 0)
        throw UsageError("graph " + std::to_string(graph_index) + " has no nodes");

    NodeId v;
    if (initial_node) {
        if (*initial_node < 0 || static_cast<std::size_t>(*initial_node) >= g.node_count())
            throw UsageError("--initial-node " + std::to_string(*initial_node) + " out of range [0, "
                             + std::to_string(g.node_count()) + ")");
        v = static_cast<NodeId>(*initial_node);
    } else {
        RngStream rng(cfg.seed, graph_index, 0);
        v = static_cast<NodeId>(rng.below(g.node_count()));
    }

    const auto crop = crop_around(g, v, cfg);
    const auto scores = connectivity_scores(g, v, cfg.diffusion);

    ordered_json obj;
    obj["graph"] = graph_index;
    obj["initial_node"] = v;
    obj["metric"] = to_string(cfg.diffusion.metric);
    obj["n"] = g.node_count();
    obj["kept"] = crop.kept_original_ids;
    obj["scores"] = scores.scores;
    obj["edges"] = edge_list(crop.subgraph);
    out << obj.dump() << '\n';
    return Success;
}

int cmd_diffusion(const DataArgs &data, const AugmentArgs &args, std::size_t graph_index, std::int64_t v,
                  std::ostream &out, std::ostream &err) {
    const auto cfg = args.config();
    const Dataset d = load(data, err);
    const Graph &g = pick_graph(d, graph_index);
    if (v < 0 || static_cast<std::size_t>(v) >= g.node_count())
        throw UsageError("--initial-node " + std::to_string(v) + " out of range [0, "
                         + std::to_string(g.node_count()) + ")");
    const auto scores = connectivity_scores(g, static_cast<NodeId>(v), cfg.diffusion);

    ordered_json obj;
    obj["graph"] = graph_index;
    obj["v"] = v;
    obj["metric"] = to_string(cfg.diffusion.metric);
    obj["scores"] = scores.scores;
    out << obj.dump() << '\n';
    return Success;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"GraphCrop: diffusion-guided subgraph cropping for graph classification datasets"};
    app.require_subcommand(1);
    app.footer("Defaults: p = 0.5, rho = 0.7, metric = ppr. alpha = 0.15, t = 5 and drop rate = 0.3 are\n"
               "artifact choices. Heat weights are e^-t t^k / k!. GRAPHCROP_THREADS bounds the worker count.\n"
               "Exit codes: 0 success, 1 usage/config, 2 data/parse, 3 verification failure.");

    DataArgs data;
    AugmentArgs aug;
    std::string out_dir;
    std::string format = "tu";
    std::size_t epochs = 1;
    std::size_t graph_index = 0;
    std::optional<std::int64_t> initial_node;
    std::int64_t score_node = 0;
    VerifyOptions verify;
    std::string suite;

    auto *augment = app.add_subcommand("augment", "augment a dataset and write the result");
    add_data_flags(*augment, data);
    add_augment_flags(*augment, aug);
    augment->add_option("--out", out_dir, "output directory")->required();
    augment->add_option("--format", format, "tu or jsonl")->check(CLI::IsMember({"tu", "jsonl"}))->capture_default_str();
    augment->add_option("--epochs", epochs, "number of augmentation passes")->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto *stats = app.add_subcommand("stats", "print graph count and mean node/edge counts");
    add_data_flags(*stats, data);

    auto *crop = app.add_subcommand("crop", "crop one graph and print the result as JSON");
    add_data_flags(*crop, data);
    add_augment_flags(*crop, aug);
    crop->add_option("--graph", graph_index, "0-based graph index")->capture_default_str();
    crop->add_option("--initial-node", initial_node, "fix the initial node instead of drawing it");

    auto *diffusion = app.add_subcommand("diffusion", "print one connectivity score column as JSON");
    add_data_flags(*diffusion, data);
    add_augment_flags(*diffusion, aug);
    diffusion->add_option("--graph", graph_index, "0-based graph index")->capture_default_str();
    diffusion->add_option("--initial-node,--node", score_node, "node whose column is printed")->required();

    auto *verify_cmd = app.add_subcommand("verify", "run the oracle and property suites");
    verify_cmd->add_option("--suite", suite, "diffusion, crop, policy or io (default: all)");
    verify_cmd->add_flag("--inject-fault", verify.inject_fault, "perturb one comparison per suite");
    verify_cmd->add_option("--seed", verify.seed, "seed for the synthetic graphs")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : UsageFailure;
    }

    try {
        if (augment->parsed())
            return cmd_augment(data, aug, out_dir, format, epochs, out, err);
        if (stats->parsed())
            return cmd_stats(data, out, err);
        if (crop->parsed())
            return cmd_crop(data, aug, graph_index, initial_node, out, err);
        if (diffusion->parsed())
            return cmd_diffusion(data, aug, graph_index, score_node, out, err);
        if (!suite.empty())
            verify.suite = suite;
        return run_verification(verify, out) ? Success : VerificationFailure;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return UsageFailure;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return DataFailure;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return DataFailure;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"graphcrop"};
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace graphcrop::cli

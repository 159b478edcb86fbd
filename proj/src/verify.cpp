#include <graphcrop/verify.hpp>

#include <graphcrop/augment.hpp>
#include <graphcrop/diffusion.hpp>
#include <graphcrop/error.hpp>
#include <graphcrop/jsonl.hpp>
#include <graphcrop/random_graphs.hpp>
#include <graphcrop/tu_format.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <unistd.h>

namespace graphcrop {
namespace {

class Checker {
public:
    explicit Checker(std::string name) { report_.name = std::move(name); }

    void check(bool ok, const std::string &what) {
        report_.lines.push_back((ok ? "ok   " : "FAIL ") + what);
        report_.passed = report_.passed && ok;
    }
    void note(const std::string &what) { report_.lines.push_back("note " + what); }

    SuiteReport finish() { return std::move(report_); }

private:
    SuiteReport report_;
};

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(3);
    out << x;
    return out.str();
}

double max_abs(const Eigen::MatrixXd &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Smallest K with (1 - alpha)^(K + 1) / alpha < bound.
int series_depth_for(double alpha, double bound) {
    int k = 0;
    while (std::pow(1.0 - alpha, k + 1) / alpha >= bound)
        ++k;
    return k;
}

// A single edge 0-1.
Graph single_edge() {
    const std::pair<NodeId, NodeId> e{0, 1};
    return Graph::from_edge_list(2, std::span(&e, 1));
}

} // namespace

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"diffusion", "crop", "policy", "io"};
    return names;
}

SuiteReport verify_diffusion(const VerifyOptions &options) {
    Checker c("diffusion");
    c.note("heat weights are e^-t t^k / k! (the Poisson heat kernel); a constant e^-t weight diverges");

    const double alpha = 0.15;
    const int depth = series_depth_for(alpha, 1e-10);
    const double densities[] = {0.1, 0.3, 0.6};
    double worst_oracle = 0.0;
    double worst_symmetry = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        RngStream rng(options.seed, i, 0);
        const std::size_t n = 2 + rng.below(49);
        const Graph g = erdos_renyi(n, densities[i % 3], rng);
        for (const auto normalization : {Normalization::Symmetric, Normalization::RandomWalk}) {
            Eigen::MatrixXd closed = ppr_closed_form(g, alpha, normalization);
            if (options.inject_fault && i == 0)
                closed(0, 0) += 1e-6;
            const auto series = diffusion_series(g, ppr_coefficients(alpha, depth), normalization);
            worst_oracle = std::max(worst_oracle, max_abs(closed - series));
            if (normalization == Normalization::Symmetric)
                worst_symmetry = std::max(worst_symmetry, max_abs(closed - closed.transpose()));
        }
    }
    c.check(worst_oracle <= 1e-8, "closed-form PPR vs series oracle (K=" + std::to_string(depth)
                                      + ") over 100 random graphs: max error " + fmt(worst_oracle) + " <= 1e-8");
    c.check(worst_symmetry <= 1e-10, "symmetric-normalization PPR is symmetric: " + fmt(worst_symmetry));

    double worst_stochastic = 0.0;
    double worst_iterative = 0.0;
    double worst_heat_mass = 0.0;
    bool heat_within_tail = true;
    for (std::uint64_t i = 0; i < 50; ++i) {
        RngStream rng(options.seed, i, 1);
        const std::size_t n = 2 + rng.below(49);
        const Graph g = random_connected(n, 0.1, rng);
        const auto walk = ppr_closed_form(g, alpha, Normalization::RandomWalk);
        worst_stochastic = std::max(worst_stochastic, (walk.colwise().sum().array() - 1.0).abs().maxCoeff());

        const auto v = static_cast<NodeId>(rng.below(n));
        for (const auto normalization : {Normalization::Symmetric, Normalization::RandomWalk}) {
            const auto closed = ppr_closed_form_column(g, v, alpha, normalization);
            const auto iterative = ppr_column_iterative(g, v, alpha, normalization, 1e-12, 10000);
            for (std::size_t u = 0; u < n; ++u)
                worst_iterative = std::max(worst_iterative, std::abs(closed[u] - iterative.scores[u]));
        }

        const double t = 5.0;
        const int heat_depth = 64;
        const auto heat = heat_scores(g, v, t, heat_depth, Normalization::RandomWalk);
        double mass = 0.0;
        for (const double s : heat.scores)
            mass += s;
        // Poisson tail beyond the truncation depth.
        double tail = 0.0;
        for (const double w : heat_coefficients(t, heat_depth))
            tail += w;
        tail = std::max(0.0, 1.0 - tail) + 1e-12;
        heat_within_tail = heat_within_tail && std::abs(1.0 - mass) <= tail;
        worst_heat_mass = std::max(worst_heat_mass, std::abs(1.0 - mass));
    }
    c.check(worst_stochastic <= 1e-10, "random-walk PPR columns sum to 1: " + fmt(worst_stochastic));
    c.check(worst_iterative <= 1e-6, "iterative column vs closed-form column: " + fmt(worst_iterative) + " <= 1e-6");
    c.check(heat_within_tail, "random-walk heat columns sum to 1 within the Poisson tail: " + fmt(worst_heat_mass));

    {
        RngStream rng(options.seed, 0, 2);
        const Graph g = erdos_renyi(12, 0.4, rng);
        const auto n = static_cast<Eigen::Index>(g.node_count());
        const double err = max_abs(ppr_closed_form(g, 1.0, Normalization::Symmetric)
                                   - Eigen::MatrixXd::Identity(n, n));
        c.check(err == 0.0, "alpha = 1 gives the identity");
    }
    {
        Eigen::MatrixXd expected(2, 2);
        expected << 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0;
        const double err = max_abs(ppr_closed_form(single_edge(), 0.5, Normalization::Symmetric) - expected);
        c.check(err <= 1e-12, "single edge, alpha = 0.5: [[2/3,1/3],[1/3,2/3]] (" + fmt(err) + ")");

        const auto heat = heat_scores(single_edge(), 0, 1.0, 30, Normalization::RandomWalk);
        const double herr = std::max(std::abs(heat.scores[0] - std::cosh(1.0) * std::exp(-1.0)),
                                     std::abs(heat.scores[1] - std::sinh(1.0) * std::exp(-1.0)));
        c.check(herr <= 1e-8, "single edge heat, t = 1: [cosh 1, sinh 1] e^-1 (" + fmt(herr) + ")");
    }
    return c.finish();
}

SuiteReport verify_crop(const VerifyOptions &options) {
    Checker c("crop");

    std::size_t size_ok = 0;
    std::size_t inclusion_ok = 0;
    std::size_t induced_ok = 0;
    std::size_t induced_checked = 0;
    const Metric metrics[] = {Metric::PPR, Metric::Heat, Metric::SP};
    const std::size_t crops = 1000;
    for (std::uint64_t i = 0; i < crops; ++i) {
        RngStream rng(options.seed, i, 10);
        const std::size_t n = 1 + rng.below(50);
        const Graph g = random_connected(n, rng.uniform01() * 0.3, rng);
        AugmentConfig cfg;
        cfg.rho = i % 2 == 0 ? 0.7 : 1.0 - rng.uniform01();
        cfg.diffusion.metric = metrics[i % 3];
        const auto crop = graph_crop(g, cfg, rng);

        std::size_t expected = crop_size(cfg.rho, n);
        if (options.inject_fault && i == 0)
            ++expected;
        size_ok += crop.kept_original_ids.size() == expected ? 1 : 0;
        inclusion_ok += std::binary_search(crop.kept_original_ids.begin(), crop.kept_original_ids.end(),
                                           crop.initial_node_original_id)
                            ? 1
                            : 0;
        if (n <= 20) {
            ++induced_checked;
            const auto &kept = crop.kept_original_ids;
            bool ok = true;
            for (std::size_t a = 0; a < kept.size(); ++a) {
                for (std::size_t b = 0; b < kept.size(); ++b) {
                    if (a != b && g.has_edge(kept[a], kept[b])
                                      != crop.subgraph.has_edge(static_cast<NodeId>(a), static_cast<NodeId>(b)))
                        ok = false;
                }
            }
            induced_ok += ok ? 1 : 0;
        }
    }
    c.check(size_ok == crops, "size law |kept| = ceil(rho n): " + std::to_string(size_ok) + "/" + std::to_string(crops));
    c.check(inclusion_ok == crops, "initial node kept: " + std::to_string(inclusion_ok) + "/" + std::to_string(crops));
    c.check(induced_ok == induced_checked,
            "induced edges match brute force (n <= 20): " + std::to_string(induced_ok) + "/"
                + std::to_string(induced_checked));

    // Disconnected graphs: crops stay inside the initial node's component.
    std::size_t contained = 0;
    std::size_t capped = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
        RngStream rng(options.seed, i, 11);
        const std::size_t n = 2 + rng.below(40);
        const Graph g = erdos_renyi(n, 0.05, rng);
        AugmentConfig cfg;
        cfg.diffusion.metric = i % 2 == 0 ? Metric::PPR : Metric::Heat;
        const auto crop = graph_crop(g, cfg, rng);
        const auto component = connected_component_of(g, crop.initial_node_original_id);
        contained += std::includes(component.begin(), component.end(), crop.kept_original_ids.begin(),
                                   crop.kept_original_ids.end())
                         ? 1
                         : 0;
        capped += crop.kept_original_ids.size() == std::min(crop_size(cfg.rho, n), component.size()) ? 1 : 0;
    }
    c.check(contained == 300, "component containment on disconnected graphs: " + std::to_string(contained) + "/300");
    c.check(capped == 300, "size capped at component size: " + std::to_string(capped) + "/300");

    std::size_t connected = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        RngStream rng(options.seed, i, 12);
        const std::size_t n = 2 + rng.below(49);
        const Graph g = random_connected(n, 0.05, rng);
        AugmentConfig cfg;
        connected += is_connected(graph_crop(g, cfg, rng).subgraph) ? 1 : 0;
    }
    c.note("connected induced crops (PPR, rho = 0.7, 1000 random connected graphs): "
           + fmt(static_cast<double>(connected) / 1000.0));

    bool monotone = true;
    for (std::uint64_t i = 0; i < 100; ++i) {
        RngStream rng(options.seed, i, 13);
        const std::size_t n = 2 + rng.below(30);
        const Graph g = random_connected(n, 0.05, rng);
        const auto v = static_cast<NodeId>(rng.below(n));
        const auto sp = shortest_path_scores(g, v);
        // Along every edge, scores differ by at most one BFS layer and v is the unique maximum.
        for (const auto &e : g.edges())
            monotone = monotone && std::abs(sp.scores[e.u] - sp.scores[e.v]) <= 1.0;
        for (NodeId u = 0; u < n; ++u)
            monotone = monotone && (u == v ? sp.scores[u] == 0.0 : sp.scores[u] < 0.0);
    }
    c.check(monotone, "shortest-path scores decrease with BFS distance");
    return c.finish();
}

SuiteReport verify_policy(const VerifyOptions &options) {
    Checker c("policy");
    const double draws = 10000.0;

    {
        AugmentConfig cfg;
        cfg.seed = options.seed;
        cfg.method = Method::DropEdge; // cheapest method; only the Bernoulli draw matters
        const std::pair<NodeId, NodeId> e{0, 1};
        const Graph g = Graph::from_edge_list(2, std::span(&e, 1));
        std::size_t augmented = 0;
        for (std::uint64_t index = 0; index < 100; ++index) {
            for (std::uint64_t epoch = 0; epoch < 100; ++epoch)
                augmented += apply_policy(g, index, epoch, cfg).augmented ? 1 : 0;
        }
        const double fraction = static_cast<double>(augmented) / draws;
        const double sigma = std::sqrt(0.25 / draws);
        const double shift = options.inject_fault ? 1.0 : 0.0;
        c.check(std::abs(fraction + shift - 0.5) <= 3.0 * sigma,
                "p = 0.5 augmented fraction " + fmt(fraction) + " within 0.5 +- " + fmt(3.0 * sigma));
    }
    {
        std::vector<std::pair<NodeId, NodeId>> pairs;
        for (NodeId u = 0; u < 100; ++u)
            pairs.emplace_back(u, u + 1);
        const Graph g = Graph::from_edge_list(101, pairs);
        double total = 0.0;
        bool nodes_kept = true;
        for (std::uint64_t trial = 0; trial < 10000; ++trial) {
            RngStream rng(options.seed, trial, 20);
            const Graph dropped = drop_edge(g, 0.3, rng);
            total += static_cast<double>(dropped.edge_count());
            nodes_kept = nodes_kept && dropped.node_count() == g.node_count();
        }
        const double mean = total / draws;
        const double sigma = std::sqrt(100.0 * 0.3 * 0.7 / draws);
        c.check(std::abs(mean - 70.0) <= 3.0 * sigma,
                "drop rate 0.3 on 100 edges: mean survivors " + fmt(mean) + " within 70 +- " + fmt(3.0 * sigma));
        c.check(nodes_kept, "drop_edge keeps every node");
    }
    {
        std::vector<std::pair<NodeId, NodeId>> pairs;
        for (NodeId u = 0; u < 4; ++u) {
            for (NodeId v = u + 1; v < 4; ++v)
                pairs.emplace_back(u, v);
        }
        const Graph k4 = Graph::from_edge_list(4, pairs);
        std::size_t hits[4] = {};
        for (std::uint64_t trial = 0; trial < 10000; ++trial) {
            RngStream rng(options.seed, trial, 21);
            for (const NodeId u : uni_node(k4, 0.5, rng).kept_original_ids)
                ++hits[u];
        }
        const double sigma = std::sqrt(0.25 / draws);
        bool ok = true;
        for (const auto h : hits)
            ok = ok && std::abs(static_cast<double>(h) / draws - 0.5) <= 3.0 * sigma;
        c.check(ok, "UniNode on K4 at rho = 0.5 keeps each node with frequency 0.5 +- " + fmt(3.0 * sigma));
    }
    {
        RngStream graph_rng(options.seed, 0, 22);
        const Graph g = random_connected(10, 0.2, graph_rng);
        AugmentConfig cfg;
        cfg.seed = options.seed;
        std::vector<bool> node_seen(10, false);
        std::vector<bool> edge_seen(g.edge_count(), false);
        for (std::uint64_t epoch = 0; epoch < 500; ++epoch) {
            RngStream rng(cfg.seed, 0, epoch);
            if (!rng.bernoulli(cfg.p))
                continue;
            const auto crop = graph_crop(g, cfg, rng);
            for (const NodeId u : crop.kept_original_ids)
                node_seen[u] = true;
            for (const auto &e : crop.subgraph.edges()) {
                const Edge original{crop.kept_original_ids[e.u], crop.kept_original_ids[e.v]};
                const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), original);
                edge_seen[static_cast<std::size_t>(it - g.edges().begin())] = true;
            }
        }
        c.check(std::all_of(node_seen.begin(), node_seen.end(), [](bool b) { return b; })
                    && std::all_of(edge_seen.begin(), edge_seen.end(), [](bool b) { return b; }),
                "every node and edge of a 10-node graph survives some crop in 500 epochs");
    }
    return c.finish();
}

SuiteReport verify_io(const VerifyOptions &options) {
    Checker c("io");
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / ("graphcrop-verify-" + std::to_string(::getpid()));

    std::size_t tu_ok = 0;
    std::size_t jsonl_ok = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        RngStream rng(options.seed, i, 30);
        std::vector<Graph> graphs;
        const std::size_t count = 1 + rng.below(50);
        const bool with_attributes = i % 2 == 0;
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t n = 1 + rng.below(30);
            Graph g = erdos_renyi(n, rng.uniform01() * 0.5, rng);
            std::vector<Label> labels(n);
            for (auto &l : labels)
                l = static_cast<Label>(rng.below(5));
            g = g.with_node_labels(labels).with_graph_label(static_cast<Label>(rng.below(3)) - 1);
            if (with_attributes) {
                std::vector<std::vector<double>> attributes(n, std::vector<double>(3));
                for (auto &row : attributes) {
                    for (auto &x : row)
                        x = rng.uniform01() * 100.0 - 50.0;
                }
                g = g.with_node_attributes(std::move(attributes));
            }
            graphs.push_back(std::move(g));
        }
        const Dataset d = make_dataset("SYN", std::move(graphs));
        const fs::path dir = root / std::to_string(i);
        write_tu(d, dir);
        Dataset back = parse_tu(dir, "SYN");
        if (options.inject_fault && i == 0)
            back.graphs[0] = back.graphs[0].with_graph_label(99);
        tu_ok += same_structure(d, back) ? 1 : 0;

        write_jsonl(d, dir / "SYN.jsonl");
        jsonl_ok += same_structure(d, read_jsonl(dir / "SYN.jsonl", "SYN")) ? 1 : 0;
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    c.check(tu_ok == 50, "TU write/parse round trip: " + std::to_string(tu_ok) + "/50 datasets");
    c.check(jsonl_ok == 50, "JSONL write/read round trip: " + std::to_string(jsonl_ok) + "/50 datasets");
    return c.finish();
}

bool run_verification(const VerifyOptions &options, std::ostream &out) {
    if (options.suite
        && std::find(suite_names().begin(), suite_names().end(), *options.suite) == suite_names().end())
        throw UsageError("unknown suite '" + *options.suite + "' (expected diffusion, crop, policy or io)");

    bool all = true;
    for (const auto &name : suite_names()) {
        if (options.suite && *options.suite != name)
            continue;
        SuiteReport report;
        if (name == "diffusion")
            report = verify_diffusion(options);
        else if (name == "crop")
            report = verify_crop(options);
        else if (name == "policy")
            report = verify_policy(options);
        else
            report = verify_io(options);
        out << (report.passed ? "PASS " : "FAIL ") << report.name << '\n';
        for (const auto &line : report.lines)
            out << "  " << line << '\n';
        all = all && report.passed;
    }
    return all;
}

} // namespace graphcrop

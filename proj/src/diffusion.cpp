#include <graphcrop/diffusion.hpp>

#include <graphcrop/error.hpp>

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>

namespace graphcrop {

std::string to_string(Metric m) {
    switch (m) {
    case Metric::PPR: return "ppr";
    case Metric::Heat: return "heat";
    case Metric::SP: return "sp";
    }
    return "?";
}

std::string to_string(Normalization n) { return n == Normalization::Symmetric ? "sym" : "rw"; }

Metric parse_metric(const std::string &s) {
    if (s == "ppr")
        return Metric::PPR;
    if (s == "heat")
        return Metric::Heat;
    if (s == "sp")
        return Metric::SP;
    throw UsageError("unknown metric '" + s + "' (expected ppr, heat or sp)");
}

Normalization parse_normalization(const std::string &s) {
    if (s == "sym" || s == "symmetric")
        return Normalization::Symmetric;
    if (s == "rw" || s == "randomwalk")
        return Normalization::RandomWalk;
    throw UsageError("unknown normalization '" + s + "' (expected sym or rw)");
}

Normalization DiffusionConfig::effective_normalization() const {
    if (normalization)
        return *normalization;
    return metric == Metric::Heat ? Normalization::RandomWalk : Normalization::Symmetric;
}

void DiffusionConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw UsageError("alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (!(t > 0.0) || !std::isfinite(t))
        throw UsageError("diffusion time t must be positive, got " + std::to_string(t));
    if (series_depth < 1)
        throw UsageError("series depth must be at least 1, got " + std::to_string(series_depth));
    if (!(residual_tol > 0.0))
        throw UsageError("residual tolerance must be positive, got " + std::to_string(residual_tol));
}

Eigen::SparseMatrix<double> normalized_operator(const Graph &g, Normalization normalization) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(2 * g.edge_count());
    for (const auto &e : g.edges()) {
        const auto du = static_cast<double>(g.degree(e.u));
        const auto dv = static_cast<double>(g.degree(e.v));
        if (normalization == Normalization::Symmetric) {
            const double w = 1.0 / std::sqrt(du * dv);
            entries.emplace_back(e.u, e.v, w);
            entries.emplace_back(e.v, e.u, w);
        } else {
            // Column j holds the outgoing probabilities of node j.
            entries.emplace_back(e.v, e.u, 1.0 / du);
            entries.emplace_back(e.u, e.v, 1.0 / dv);
        }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

namespace {

Eigen::PartialPivLU<Eigen::MatrixXd> ppr_factorization(const Graph &g, double alpha,
                                                       Normalization normalization) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const Eigen::MatrixXd m(normalized_operator(g, normalization));
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - (1.0 - alpha) * m;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(system);
}

Eigen::VectorXd ppr_solve(const Eigen::PartialPivLU<Eigen::MatrixXd> &lu, Eigen::Index n, NodeId v,
                          double alpha) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[v] = alpha;
    return lu.solve(rhs);
}

void check_node(const Graph &g, NodeId v) {
    if (v >= g.node_count())
        throw UsageError("node " + std::to_string(v) + " out of range for a graph with "
                         + std::to_string(g.node_count()) + " nodes");
}

std::vector<double> to_vector(const Eigen::VectorXd &x) { return {x.data(), x.data() + x.size()}; }

} // namespace

Eigen::MatrixXd ppr_closed_form(const Graph &g, double alpha, Normalization normalization) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw UsageError("alpha must lie in (0, 1]");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto lu = ppr_factorization(g, alpha, normalization);
    Eigen::MatrixXd s(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        s.col(j) = ppr_solve(lu, n, static_cast<NodeId>(j), alpha);
    return s;
}

std::vector<double> ppr_closed_form_column(const Graph &g, NodeId v, double alpha,
                                           Normalization normalization) {
    check_node(g, v);
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw UsageError("alpha must lie in (0, 1]");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    return to_vector(ppr_solve(ppr_factorization(g, alpha, normalization), n, v, alpha));
}

Eigen::MatrixXd diffusion_series(const Graph &g, std::span<const double> coefficients,
                                 Normalization normalization) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const Eigen::MatrixXd m(normalized_operator(g, normalization));
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (k > 0)
            power = m * power;
        sum += coefficients[k] * power;
    }
    return sum;
}

std::vector<double> ppr_coefficients(double alpha, int depth) {
    std::vector<double> c(static_cast<std::size_t>(depth) + 1);
    double decay = 1.0;
    for (auto &ck : c) {
        ck = alpha * decay;
        decay *= 1.0 - alpha;
    }
    return c;
}

std::vector<double> heat_coefficients(double t, int depth) {
    std::vector<double> c(static_cast<std::size_t>(depth) + 1);
    const double log_t = std::log(t);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto kd = static_cast<double>(k);
        c[k] = std::exp(-t + kd * log_t - std::lgamma(kd + 1.0));
    }
    return c;
}

ConnectivityScores ppr_column_iterative(const Graph &g, NodeId v, double alpha,
                                        Normalization normalization, double residual_tol, int depth) {
    check_node(g, v);
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto m = normalized_operator(g, normalization);
    Eigen::VectorXd walk = Eigen::VectorXd::Zero(n); // M^k e_v
    walk[v] = 1.0;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    double weight = alpha;
    for (int k = 0; k <= depth; ++k) {
        if (k > 0) {
            walk = m * walk;
            weight *= 1.0 - alpha;
        }
        sum += weight * walk;
        if (weight * walk.cwiseAbs().maxCoeff() < residual_tol)
            break;
    }
    return {v, Metric::PPR, to_vector(sum)};
}

ConnectivityScores heat_scores(const Graph &g, NodeId v, double t, int depth, Normalization normalization) {
    check_node(g, v);
    if (!(t > 0.0))
        throw UsageError("diffusion time t must be positive");
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const auto m = normalized_operator(g, normalization);
    const auto coefficients = heat_coefficients(t, depth);
    Eigen::VectorXd walk = Eigen::VectorXd::Zero(n);
    walk[v] = 1.0;
    Eigen::VectorXd sum = coefficients[0] * walk;
    for (std::size_t k = 1; k < coefficients.size(); ++k) {
        walk = m * walk;
        sum += coefficients[k] * walk;
    }
    return {v, Metric::Heat, to_vector(sum)};
}

double unreachable_score(const Graph &g) { return -static_cast<double>(g.node_count()); }

ConnectivityScores shortest_path_scores(const Graph &g, NodeId v) {
    check_node(g, v);
    std::vector<double> scores(g.node_count(), unreachable_score(g));
    std::vector<std::size_t> dist(g.node_count(), std::numeric_limits<std::size_t>::max());
    std::deque<NodeId> queue{v};
    dist[v] = 0;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        scores[u] = -static_cast<double>(dist[u]);
        for (const NodeId w : g.neighbors(u)) {
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return {v, Metric::SP, std::move(scores)};
}

std::shared_ptr<const Eigen::MatrixXd> DiffusionCache::find(const Key &key) const {
    std::shared_lock lock(mutex_);
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : it->second;
}

std::shared_ptr<const Eigen::MatrixXd> DiffusionCache::insert(const Key &key, Eigen::MatrixXd matrix) {
    auto entry = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
    std::unique_lock lock(mutex_);
    return entries_.try_emplace(key, std::move(entry)).first->second;
}

std::size_t DiffusionCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

ConnectivityScores connectivity_scores(const Graph &g, NodeId v, const DiffusionConfig &cfg,
                                       DiffusionCache *cache, std::size_t graph_key) {
    check_node(g, v);
    if (cfg.metric == Metric::SP)
        return shortest_path_scores(g, v);

    cfg.validate();
    const auto normalization = cfg.effective_normalization();
    const bool dense = g.node_count() <= cfg.dense_threshold;

    if (cache == nullptr || !dense) {
        if (cfg.metric == Metric::Heat)
            return heat_scores(g, v, cfg.t, cfg.series_depth, normalization);
        if (dense)
            return {v, Metric::PPR, ppr_closed_form_column(g, v, cfg.alpha, normalization)};
        return ppr_column_iterative(g, v, cfg.alpha, normalization, cfg.residual_tol, cfg.series_depth);
    }

    // Parameters the metric ignores are zeroed so they do not split the cache.
    const DiffusionCache::Key key{graph_key,
                                  cfg.metric,
                                  normalization,
                                  cfg.metric == Metric::PPR ? cfg.alpha : 0.0,
                                  cfg.metric == Metric::Heat ? cfg.t : 0.0,
                                  cfg.metric == Metric::Heat ? cfg.series_depth : 0};
    auto matrix = cache->find(key);
    if (!matrix) {
        if (cfg.metric == Metric::PPR) {
            matrix = cache->insert(key, ppr_closed_form(g, cfg.alpha, normalization));
        } else {
            const auto n = static_cast<Eigen::Index>(g.node_count());
            Eigen::MatrixXd heat(n, n);
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto column = heat_scores(g, static_cast<NodeId>(j), cfg.t, cfg.series_depth, normalization);
                heat.col(j) = Eigen::Map<const Eigen::VectorXd>(column.scores.data(), n);
            }
            matrix = cache->insert(key, std::move(heat));
        }
    }
    const auto column = matrix->col(v);
    return {v, cfg.metric, std::vector<double>(column.data(), column.data() + column.size())};
}

} // namespace graphcrop

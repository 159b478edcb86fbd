#pragma once

#include <graphcrop/graph.hpp>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

namespace graphcrop {

enum class Metric { PPR, Heat, SP };
enum class Normalization { Symmetric, RandomWalk };

std::string to_string(Metric m);
std::string to_string(Normalization n);
Metric parse_metric(const std::string &s);             // "ppr" | "heat" | "sp"
Normalization parse_normalization(const std::string &s); // "sym" | "rw"

struct DiffusionConfig {
    Metric metric = Metric::PPR;
    double alpha = 0.15; // teleport probability, PPR only
    double t = 5.0;      // diffusion time, heat only
    int series_depth = 64;
    // Unset: symmetric for PPR, random walk for heat.
    std::optional<Normalization> normalization;
    double residual_tol = 1e-6;
    // Graphs up to this many nodes use the dense closed form and may be cached.
    std::size_t dense_threshold = 1024;

    Normalization effective_normalization() const;

    /// Throws UsageError when a parameter is outside its domain.
    void validate() const;
};

struct ConnectivityScores {
    NodeId initial_node = 0;
    Metric metric = Metric::PPR;
    std::vector<double> scores; // scores[u]: connectivity of u to initial_node
};

/// RandomWalk: A D^-1. Symmetric: D^-1/2 A D^-1/2. Degree-zero nodes get zero
/// rows and columns.
Eigen::SparseMatrix<double> normalized_operator(const Graph &g, Normalization normalization);

/// alpha (I - (1 - alpha) M)^-1, assembled column by column from one LU
/// factorization.
Eigen::MatrixXd ppr_closed_form(const Graph &g, double alpha, Normalization normalization);

/// Column v of ppr_closed_form, bit-identical to it, without forming the rest.
std::vector<double> ppr_closed_form_column(const Graph &g, NodeId v, double alpha,
                                           Normalization normalization);

/// Dense truncated series sum_k coefficients[k] * M^k.
Eigen::MatrixXd diffusion_series(const Graph &g, std::span<const double> coefficients,
                                 Normalization normalization);

/// alpha (1 - alpha)^k for k = 0..depth.
std::vector<double> ppr_coefficients(double alpha, int depth);
/// e^-t t^k / k! for k = 0..depth.
std::vector<double> heat_coefficients(double t, int depth);

/// Accumulates alpha (1 - alpha)^k M^k e_v until the term's max-norm drops
/// below residual_tol or k reaches depth.
ConnectivityScores ppr_column_iterative(const Graph &g, NodeId v, double alpha,
                                        Normalization normalization, double residual_tol, int depth);

/// sum_{k=0..depth} e^-t t^k / k! M^k e_v.
ConnectivityScores heat_scores(const Graph &g, NodeId v, double t, int depth, Normalization normalization);

/// scores[u] = -dist(u, v); unreachable nodes get unreachable_score(g).
ConnectivityScores shortest_path_scores(const Graph &g, NodeId v);

/// Below every reachable shortest-path score.
double unreachable_score(const Graph &g);

/**
 * Full diffusion matrices keyed by (graph key, metric, parameters).
 *
 * Readers share the lock; population takes it exclusively. A matrix is
 * computed outside the lock, and when two workers race on the same key the
 * first insertion wins. Both computed the same bits, so the winner does not
 * matter.
 */
class DiffusionCache {
public:
    struct Key {
        std::size_t graph_key;
        Metric metric;
        Normalization normalization;
        double alpha;
        double t;
        int depth;

        friend auto operator<=>(const Key &, const Key &) = default;
    };

    std::shared_ptr<const Eigen::MatrixXd> find(const Key &key) const;
    std::shared_ptr<const Eigen::MatrixXd> insert(const Key &key, Eigen::MatrixXd matrix);
    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const Eigen::MatrixXd>> entries_;
};

/**
 * Scores every node's connectivity to v under cfg.metric.
 *
 * PPR on graphs within cfg.dense_threshold uses the closed form; larger graphs
 * use the iterative column. Heat always sums the truncated series. When
 * `cache` is given and the graph is within the threshold, the whole matrix
 * for `graph_key` is computed once and later calls read column v from it;
 * results are identical with and without the cache.
 */
ConnectivityScores connectivity_scores(const Graph &g, NodeId v, const DiffusionConfig &cfg,
                                       DiffusionCache *cache = nullptr, std::size_t graph_key = 0);

} // namespace graphcrop

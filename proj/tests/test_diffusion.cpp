#include <graphcrop/diffusion.hpp>
#include <graphcrop/error.hpp>

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace graphcrop;

namespace {

const Graph single_edge = oracle::path(2);

double max_diff(const Eigen::MatrixXd &a, const oracle::Matrix &b) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    return worst;
}

double max_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<double> column(const oracle::Matrix &m, std::size_t j) {
    std::vector<double> c;
    for (const auto &row : m)
        c.push_back(row[j]);
    return c;
}

} // namespace

TEST_CASE("normalized_operator examples") {
    for (const auto norm : {Normalization::Symmetric, Normalization::RandomWalk}) {
        const Eigen::MatrixXd m(normalized_operator(single_edge, norm));
        CHECK(m(0, 0) == 0.0);
        CHECK(m(0, 1) == 1.0);
        CHECK(m(1, 0) == 1.0);
        CHECK(m(1, 1) == 0.0);
    }

    const Eigen::MatrixXd rw(normalized_operator(oracle::path(3), Normalization::RandomWalk));
    CHECK(rw(0, 1) == 0.5);
    CHECK(rw(1, 1) == 0.0);
    CHECK(rw(2, 1) == 0.5);
    CHECK(rw(1, 0) == 1.0);

    const std::vector<std::pair<NodeId, NodeId>> pairs{{0, 1}, {1, 3}};
    const auto isolated = Graph::from_edge_list(4, pairs);
    for (const auto norm : {Normalization::Symmetric, Normalization::RandomWalk}) {
        const Eigen::MatrixXd m(normalized_operator(isolated, norm));
        CHECK(m.row(2).cwiseAbs().sum() == 0.0);
        CHECK(m.col(2).cwiseAbs().sum() == 0.0);
    }
}

TEST_CASE("normalized_operator matches the dense oracle") {
    RngStream rng(8, 0, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_graph(2 + rng.below(20), 0.3, rng);
        CHECK(max_diff(Eigen::MatrixXd(normalized_operator(g, Normalization::Symmetric)), oracle::transition(g, true))
              <= 1e-15);
        CHECK(max_diff(Eigen::MatrixXd(normalized_operator(g, Normalization::RandomWalk)), oracle::transition(g, false))
              == 0.0);
    }
}

TEST_CASE("ppr_closed_form: alpha = 1 is the identity") {
    RngStream rng(9, 0, 0);
    const auto g = oracle::random_graph(10, 0.4, rng);
    const auto s = ppr_closed_form(g, 1.0, Normalization::Symmetric);
    CHECK(s == Eigen::MatrixXd::Identity(10, 10));
}

TEST_CASE("ppr_closed_form: single edge at alpha = 0.5") {
    const auto s = ppr_closed_form(single_edge, 0.5, Normalization::Symmetric);
    CHECK(s(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(s(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(s(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(s(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("ppr_closed_form: frozen values for a graph with an isolated node") {
    // alpha = 0.15, symmetric; computed with numpy.linalg.inv.
    const std::vector<std::pair<NodeId, NodeId>> pairs{{0, 1}, {1, 3}};
    const auto s = ppr_closed_form(Graph::from_edge_list(4, pairs), 0.15, Normalization::Symmetric);
    CHECK(s(0, 0) == doctest::Approx(0.34527027027027035).epsilon(1e-12));
    CHECK(s(1, 0) == doctest::Approx(0.32488689946408955).epsilon(1e-12));
    CHECK(s(3, 0) == doctest::Approx(0.19527027027027033).epsilon(1e-12));
    CHECK(s(1, 1) == doctest::Approx(0.5405405405405407).epsilon(1e-12));
    CHECK(s(2, 2) == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(s(2, 0) == 0.0);
    CHECK(s(0, 2) == 0.0);
}

TEST_CASE("ppr_closed_form equals the Gauss-Jordan and series oracles") {
    RngStream rng(10, 0, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_graph(2 + rng.below(11), 0.35, rng);
        const double alpha = 0.05 + 0.9 * rng.uniform01();
        for (const bool sym : {true, false}) {
            const auto norm = sym ? Normalization::Symmetric : Normalization::RandomWalk;
            const auto s = ppr_closed_form(g, alpha, norm);
            CHECK(max_diff(s, oracle::ppr_inverse(g, alpha, sym)) <= 1e-12);
            CHECK(max_diff(s, oracle::series(g, oracle::ppr_series_coefficients(alpha, 200), sym)) <= 1e-8);
        }
    }
}

TEST_CASE("diffusion_series matches the naive series") {
    RngStream rng(13, 0, 0);
    const auto g = oracle::random_graph(9, 0.4, rng);
    const auto coeffs = heat_coefficients(2.0, 40);
    const auto expected = oracle::series(g, oracle::heat_series_coefficients(2.0, 40), false);
    CHECK(max_diff(diffusion_series(g, coeffs, Normalization::RandomWalk), expected) <= 1e-13);
}

TEST_CASE("coefficients") {
    const auto ppr = ppr_coefficients(0.2, 3);
    REQUIRE(ppr.size() == 4);
    CHECK(ppr[0] == doctest::Approx(0.2));
    CHECK(ppr[3] == doctest::Approx(0.2 * 0.512));
    const auto heat = heat_coefficients(3.0, 4);
    CHECK(heat[0] == doctest::Approx(std::exp(-3.0)));
    CHECK(heat[4] == doctest::Approx(std::exp(-3.0) * 81.0 / 24.0));
}

TEST_CASE("ppr_column_iterative") {
    SUBCASE("alpha = 1 returns e_v exactly") {
        RngStream rng(14, 0, 0);
        const auto g = oracle::random_graph(8, 0.5, rng);
        const auto s = ppr_column_iterative(g, 3, 1.0, Normalization::Symmetric, 1e-6, 64);
        for (NodeId u = 0; u < 8; ++u)
            CHECK(s.scores[u] == (u == 3 ? 1.0 : 0.0));
    }
    SUBCASE("single edge") {
        const auto s = ppr_column_iterative(single_edge, 0, 0.5, Normalization::Symmetric, 1e-12, 1000);
        CHECK(std::abs(s.scores[0] - 2.0 / 3.0) <= 1e-11);
        CHECK(std::abs(s.scores[1] - 1.0 / 3.0) <= 1e-11);
    }
    SUBCASE("agrees with the closed-form column on random connected graphs") {
        RngStream rng(15, 0, 0);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n = 2 + rng.below(49);
            auto g = oracle::random_graph(n, 0.15, rng);
            // Chain consecutive ids to guarantee connectivity.
            std::vector<std::pair<NodeId, NodeId>> pairs;
            for (const auto &e : g.edges())
                pairs.emplace_back(e.u, e.v);
            for (NodeId u = 0; u + 1 < n; ++u)
                pairs.emplace_back(u, u + 1);
            g = Graph::from_edge_list(n, pairs);
            const auto v = static_cast<NodeId>(rng.below(n));
            for (const bool sym : {true, false}) {
                const auto norm = sym ? Normalization::Symmetric : Normalization::RandomWalk;
                const auto it = ppr_column_iterative(g, v, 0.15, norm, 1e-12, 5000);
                CHECK(max_diff(it.scores, column(oracle::ppr_inverse(g, 0.15, sym), v)) <= 1e-6);
            }
        }
    }
    SUBCASE("stops within residual_tol / alpha of the closed form") {
        const auto g = oracle::cycle(7);
        const double tol = 1e-4;
        const auto it = ppr_column_iterative(g, 0, 0.3, Normalization::RandomWalk, tol, 100000);
        CHECK(max_diff(it.scores, ppr_closed_form_column(g, 0, 0.3, Normalization::RandomWalk)) <= tol / 0.3);
    }
}

TEST_CASE("ppr_closed_form_column is bit-identical to the matrix column") {
    RngStream rng(16, 0, 0);
    const auto g = oracle::random_graph(30, 0.2, rng);
    const auto s = ppr_closed_form(g, 0.15, Normalization::Symmetric);
    for (NodeId v : {0u, 7u, 29u}) {
        const auto c = ppr_closed_form_column(g, v, 0.15, Normalization::Symmetric);
        for (NodeId u = 0; u < 30; ++u)
            CHECK(c[u] == s(u, v));
    }
}

TEST_CASE("heat_scores") {
    SUBCASE("single edge, t = 1, matches the matrix exponential") {
        const auto s = heat_scores(single_edge, 0, 1.0, 30, Normalization::RandomWalk);
        CHECK(std::abs(s.scores[0] - 0.5676676416183063) <= 1e-12);
        CHECK(std::abs(s.scores[1] - 0.43233235838169365) <= 1e-12);
    }
    SUBCASE("t -> 0 concentrates on v") {
        const auto s = heat_scores(oracle::path(5), 2, 1e-9, 64, Normalization::RandomWalk);
        CHECK(s.scores[2] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(s.scores[0] <= 1e-15);
    }
    SUBCASE("frozen path column, t = 5 (scipy.linalg.expm)") {
        const auto s = heat_scores(oracle::path(5), 2, 5.0, 64, Normalization::RandomWalk);
        const std::vector<double> expected{0.12332119, 0.24998865, 0.25338032, 0.24998865, 0.12332119};
        CHECK(max_diff(s.scores, expected) <= 1e-8);
    }
    SUBCASE("random-walk column mass within the Poisson tail") {
        RngStream rng(17, 0, 0);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 2 + rng.below(30);
            const auto g = oracle::random_graph(n, 0.5, rng);
            bool isolated = false;
            for (NodeId u = 0; u < n; ++u)
                isolated = isolated || g.degree(u) == 0;
            if (isolated)
                continue;
            const int depth = 8;
            const double t = 3.0;
            const auto s = heat_scores(g, 0, t, depth, Normalization::RandomWalk);
            double mass = 0.0;
            for (const double x : s.scores)
                mass += x;
            double head = 0.0;
            for (const double c : oracle::heat_series_coefficients(t, depth))
                head += c;
            CHECK(mass == doctest::Approx(head).epsilon(1e-12));
            CHECK(1.0 - mass <= 1.0 - head + 1e-12);
        }
    }
}

TEST_CASE("shortest_path_scores") {
    const auto s = shortest_path_scores(oracle::path(4), 0);
    CHECK(s.scores == std::vector<double>{0.0, -1.0, -2.0, -3.0});

    const std::vector<std::pair<NodeId, NodeId>> pairs{{0, 1}, {1, 2}, {3, 4}};
    const auto g = Graph::from_edge_list(5, pairs);
    const auto d = shortest_path_scores(g, 1);
    CHECK(d.scores[1] == 0.0);
    CHECK(d.scores[3] == unreachable_score(g));
    CHECK(d.scores[4] < d.scores[0]);
    CHECK(*std::max_element(d.scores.begin(), d.scores.end()) == d.scores[1]);
}

TEST_CASE("connectivity_scores dispatch and cache transparency") {
    DiffusionConfig cfg;
    cfg.alpha = 0.5;
    const auto ppr = connectivity_scores(single_edge, 0, cfg);
    CHECK(ppr.scores[0] == doctest::Approx(2.0 / 3.0));
    CHECK(ppr.scores[1] == doctest::Approx(1.0 / 3.0));

    cfg.metric = Metric::SP;
    CHECK(connectivity_scores(oracle::path(4), 0, cfg).scores == std::vector<double>{0.0, -1.0, -2.0, -3.0});

    RngStream rng(18, 0, 0);
    const auto g = oracle::random_graph(40, 0.1, rng);
    for (const auto metric : {Metric::PPR, Metric::Heat, Metric::SP}) {
        DiffusionConfig c;
        c.metric = metric;
        DiffusionCache cache;
        for (NodeId v : {0u, 13u, 39u, 13u}) {
            const auto cold = connectivity_scores(g, v, c);
            const auto warm = connectivity_scores(g, v, c, &cache, 5);
            CHECK(cold.scores == warm.scores);
        }
        CHECK(cache.size() == (metric == Metric::SP ? 0u : 1u));
    }
}

TEST_CASE("large graphs use the iterative column") {
    DiffusionConfig cfg;
    cfg.dense_threshold = 10;
    cfg.series_depth = 2000;
    cfg.residual_tol = 1e-13;
    const auto g = oracle::cycle(30);
    const auto it = connectivity_scores(g, 4, cfg);
    CHECK(max_diff(it.scores, ppr_closed_form_column(g, 4, cfg.alpha, Normalization::Symmetric)) <= 1e-10);
}

TEST_CASE("property: symmetric PPR is symmetric, random-walk PPR is column-stochastic") {
    RngStream rng(19, 0, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.below(40);
        const auto g = oracle::random_graph(n, 0.3, rng);
        const auto s = ppr_closed_form(g, 0.15, Normalization::Symmetric);
        CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-10);

        const auto w = ppr_closed_form(g, 0.15, Normalization::RandomWalk);
        for (NodeId j = 0; j < n; ++j) {
            if (g.degree(j) > 0 && connected_component_of(g, j).size() == n)
                CHECK(std::abs(w.col(j).sum() - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("DiffusionConfig validation") {
    DiffusionConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.alpha = 0.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.alpha = 1.0;
    cfg.t = 0.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.t = 1.0;
    cfg.series_depth = 0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.series_depth = 1;
    cfg.residual_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);

    CHECK(DiffusionConfig{}.effective_normalization() == Normalization::Symmetric);
    DiffusionConfig heat;
    heat.metric = Metric::Heat;
    CHECK(heat.effective_normalization() == Normalization::RandomWalk);
    CHECK(parse_metric("heat") == Metric::Heat);
    CHECK_THROWS_AS(parse_metric("katz"), UsageError);
}

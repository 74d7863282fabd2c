#include "doctest.h"
#include "oracles.hpp"

#include "fsgl/errors.hpp"
#include "fsgl/graph.hpp"

#include <random>

using namespace fsgl;

TEST_CASE("two-node Laplacian") {
    WeightedGraph g(2);
    g.set_weight({0, 1}, 2.0);
    Eigen::MatrixXd expected(2, 2);
    expected << 2, -2, -2, 2;
    CHECK(build_laplacian(g).to_dense().isApprox(expected));
}

TEST_CASE("empty graph has zero Laplacian") {
    WeightedGraph g(3);
    CHECK(build_laplacian(g).to_dense().isZero(0.0));
}

TEST_CASE("Laplacian rows sum to zero and match the dense oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_graph(8, 0.5, rng);
        const Eigen::MatrixXd l = build_laplacian(g).to_dense();
        const double tol = 1e-12 * (1.0 + g.adjacency().norm());
        for (int i = 0; i < 8; ++i) CHECK(std::abs(l.row(i).sum()) <= tol);
        CHECK((l - oracle::laplacian(g.adjacency())).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK(oracle::spectrum(l)(0) >= -1e-9);
    }
}

TEST_CASE("sparse Laplacian above the dense threshold") {
    std::mt19937_64 rng(3);
    const auto g = oracle::random_graph(kDenseThreshold + 6, 0.1, rng);
    const auto view = build_laplacian(g);
    CHECK_FALSE(view.is_dense());
    CHECK((view.to_dense() - oracle::laplacian(g.adjacency())).cwiseAbs().maxCoeff() <= 1e-14);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(g.num_nodes(), -1.0, 2.0);
    CHECK((view.apply(x) - oracle::laplacian(g.adjacency()) * x).norm() <= 1e-12);
}

TEST_CASE("edge keys are canonical") {
    EdgeKey a(4, 1);
    CHECK(a.m == 1);
    CHECK(a.n == 4);
    CHECK(a == EdgeKey(1, 4));
    WeightedGraph g(5);
    CHECK_THROWS_AS(g.set_weight({2, 2}, 1.0), DataError);
    CHECK_THROWS_AS(g.set_weight({0, 5}, 1.0), DataError);
    CHECK_THROWS_AS(g.set_weight({0, 1}, -1.0), DataError);
}

TEST_CASE("weaken_edge subtracts and clamps") {
    WeightedGraph g(3);
    g.set_weight({0, 1}, 0.5);
    g.set_weight({1, 2}, 0.005);

    const auto a = weaken_edge(g, {0, 1}, 0.01);
    CHECK(a.weight({0, 1}) == doctest::Approx(0.49).epsilon(1e-15));
    CHECK(g.weight({0, 1}) == 0.5);

    const auto b = weaken_edge(g, {1, 2}, 0.01);
    CHECK_FALSE(b.has_edge({1, 2}));
    CHECK(b.num_edges() == 1);

    CHECK_THROWS_AS(weaken_edge(g, {0, 2}, 0.01), MissingEdge);
}

TEST_CASE("weakening perturbs L by min(eps, w) E^{m,n}") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> eps_dist(0.001, 0.8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = oracle::random_connected_graph(7, 0.6, rng, 0.01, 1.0);
        const auto& edges = g.edges();
        auto it = edges.begin();
        std::advance(it, static_cast<long>(rng() % edges.size()));
        const EdgeKey e = it->first;
        const double eps = eps_dist(rng);
        const double removed = std::min(eps, it->second);
        const Eigen::MatrixXd expected = dense_laplacian(g) - removed * edge_incidence_outer(7, e);
        const auto weakened = weaken_edge(g, e, eps);
        CHECK((dense_laplacian(weakened) - expected).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(oracle::spectrum(dense_laplacian(weakened))(0) >= -1e-9);
    }
}

TEST_CASE("PSD survives long weakening sequences") {
    std::mt19937_64 rng(9);
    auto g = oracle::random_connected_graph(9, 0.7, rng);
    while (g.num_edges() > 0) {
        auto it = g.edges().begin();
        std::advance(it, static_cast<long>(rng() % g.num_edges()));
        g.weaken(it->first, 0.3);
        CHECK(oracle::spectrum(dense_laplacian(g))(0) >= -1e-9);
    }
}

TEST_CASE("gram matrix") {
    Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(2, 1);
    e1(0, 0) = 1.0;
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 2);
    expected(0, 0) = 1.0;
    CHECK(gram(e1).isApprox(expected));

    std::mt19937_64 rng(2);
    Eigen::MatrixXd same(6, 3);
    const Eigen::VectorXd col = oracle::random_matrix(6, 1, rng);
    same << col, col, col;
    const Eigen::VectorXd ev = oracle::spectrum(gram(same));
    CHECK((ev.array() > 1e-9 * ev.maxCoeff()).count() == 1);

    const Eigen::MatrixXd x = oracle::random_matrix(10, 4, rng);
    const ObservationSet obs(x);
    const Eigen::MatrixXd& y = obs.gram();
    CHECK((y - x * x.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((y - y.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::VectorXd spec = oracle::spectrum(y);
    CHECK(spec(0) >= -1e-9);
    CHECK((spec.array() > 1e-9 * spec.maxCoeff()).count() <= 4);
    for (int m = 0; m < 10; ++m)
        for (int n = 0; n < 10; ++n) CHECK(2 * y(m, n) <= y(m, m) + y(n, n) + 1e-12);

    CHECK_THROWS_AS(gram(Eigen::MatrixXd(3, 0)), DataError);
}

TEST_CASE("connectivity") {
    WeightedGraph path(4);
    path.set_weight({0, 1}, 1);
    path.set_weight({1, 2}, 1);
    path.set_weight({2, 3}, 1);
    CHECK(is_connected(path));

    WeightedGraph pairs(4);
    pairs.set_weight({0, 1}, 1);
    pairs.set_weight({2, 3}, 1);
    CHECK_FALSE(is_connected(pairs));
    CHECK(connected_components(pairs) == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
}

TEST_CASE("is_connected agrees with lambda_2 > 0") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> size(2, 12);
    std::uniform_real_distribution<double> density(0.05, 0.6);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = oracle::random_graph(size(rng), density(rng), rng);
        CHECK(is_connected(g) == (oracle::lambda2(g.adjacency()) > 1e-8));
    }
}

#include "doctest.h"
#include "oracles.hpp"

#include "fsgl/errors.hpp"
#include "fsgl/spectral.hpp"

#include <random>

using namespace fsgl;

namespace {

SpectralState full_state(const WeightedGraph& g, double alpha = 1.0) {
    return smallest_eigenpairs(build_laplacian(g), g.num_nodes(), alpha);
}

void check_state_invariants(const SpectralState& s, const Eigen::MatrixXd& l, double tol) {
    const int k = s.num_pairs();
    CHECK(s.eigvals(0) >= -1e-9);
    for (int i = 1; i < k; ++i) CHECK(s.eigvals(i) >= s.eigvals(i - 1));
    CHECK((s.eigvecs.transpose() * s.eigvecs - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-8);
    for (int i = 0; i < k; ++i) {
        const double res = (l * s.eigvecs.col(i) - s.eigvals(i) * s.eigvecs.col(i)).norm();
        CHECK(res <= tol * (1.0 + s.eigvals(i)));
    }
}

} // namespace

TEST_CASE("complete graph K4 has lambda_2 = 4") {
    const auto s = full_state(WeightedGraph::complete(4));
    CHECK(s.fiedler_value == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(s.eigvals(0) <= 1e-8);
}

TEST_CASE("disconnected graph has lambda_2 = 0") {
    WeightedGraph g(4);
    g.set_weight({0, 1}, 1.0);
    g.set_weight({2, 3}, 1.0);
    CHECK(std::abs(full_state(g).fiedler_value) <= 1e-12);
}

TEST_CASE("path P3 spectrum") {
    WeightedGraph g(3);
    g.set_weight({0, 1}, 1.0);
    g.set_weight({1, 2}, 1.0);
    const auto s = full_state(g);
    const Eigen::VectorXd expected = oracle::spectrum(oracle::laplacian(g.adjacency()));
    CHECK((s.eigvals - expected).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(expected(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(expected(1) == doctest::Approx(1.0));
    CHECK(expected(2) == doctest::Approx(3.0));
    CHECK(eigen_gap2(s) == doctest::Approx(1.0));
}

TEST_CASE("eigen_gap2 from explicit spectra") {
    SpectralState s;
    s.eigvals = Eigen::Vector3d(0.0, 1.0, 3.0);
    s.gap2 = std::min(s.eigvals(1) - s.eigvals(0), s.eigvals(2) - s.eigvals(1));
    CHECK(eigen_gap2(s) == 1.0);
    s.eigvals = Eigen::Vector3d(0.0, 2.0, 2.0);
    s.gap2 = 0.0;
    CHECK(eigen_gap2(s) == 0.0);
}

TEST_CASE("eigen_gap2 matches brute force over the full spectrum") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = oracle::random_connected_graph(10, 0.4, rng);
        const Eigen::VectorXd all = oracle::spectrum(oracle::laplacian(g.adjacency()));
        double brute = std::numeric_limits<double>::infinity();
        for (int j = 0; j < all.size(); ++j)
            if (j != 1) brute = std::min(brute, std::abs(all(1) - all(j)));
        const auto s = smallest_eigenpairs(build_laplacian(g), 4, 0.5);
        CHECK(eigen_gap2(s) == doctest::Approx(brute).epsilon(1e-9));
    }
}

TEST_CASE("eigen_gap2 needs three eigenvalues") {
    WeightedGraph g = WeightedGraph::complete(5);
    const auto s = smallest_eigenpairs(build_laplacian(g), 2, 0.5);
    CHECK_THROWS_AS(eigen_gap2(s), InsufficientEigenpairs);
    CHECK_THROWS_AS(smallest_eigenpairs(build_laplacian(g), 1, 0.5), InsufficientEigenpairs);
    CHECK_THROWS_AS(smallest_eigenpairs(build_laplacian(g), 6, 0.5), InsufficientEigenpairs);
}

TEST_CASE("majorizer is exact on the empty graph and with the full spectrum") {
    const double alpha = 0.7;
    const auto empty = full_state(WeightedGraph(5), alpha);
    CHECK(majorizer_quadform(empty, 1, 3) == doctest::Approx(2.0 / alpha).epsilon(1e-14));

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = oracle::random_connected_graph(9, 0.5, rng);
        const auto s = full_state(g, alpha);
        const Eigen::MatrixXd inv =
            (oracle::laplacian(g.adjacency()) + alpha * Eigen::MatrixXd::Identity(9, 9)).inverse();
        for (int m = 0; m < 9; ++m)
            for (int n = m + 1; n < 9; ++n) {
                const Eigen::VectorXd u = oracle::diff_vector(9, m, n);
                CHECK(std::abs(majorizer_quadform(s, m, n) - u.dot(inv * u)) <= 1e-10);
            }
    }
}

TEST_CASE("truncated majorizer upper-bounds the exact quadratic form") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> size(4, 12);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = size(rng);
        const auto g = oracle::random_connected_graph(n, 0.5, rng);
        const double alpha = trial % 2 ? 0.5 : 1.0;
        const int k = 2 + static_cast<int>(rng() % static_cast<unsigned>(n - 2));
        const auto s = smallest_eigenpairs(build_laplacian(g), k, alpha);
        const Eigen::MatrixXd inv =
            (oracle::laplacian(g.adjacency()) + alpha * Eigen::MatrixXd::Identity(n, n)).inverse();
        for (int m = 0; m < n; ++m)
            for (int p = m + 1; p < n; ++p) {
                const Eigen::VectorXd u = oracle::diff_vector(n, m, p);
                CHECK(majorizer_quadform(s, m, p) - u.dot(inv * u) >= -1e-12);
            }
    }
}

TEST_CASE("dense path invariants") {
    std::mt19937_64 rng(4);
    const auto g = oracle::random_connected_graph(20, 0.3, rng);
    const auto s = smallest_eigenpairs(build_laplacian(g), 6, 0.5);
    CHECK(s.dense);
    check_state_invariants(s, oracle::laplacian(g.adjacency()), 1e-8);
}

TEST_CASE("iterative solver matches the dense oracle") {
    std::mt19937_64 rng(31);
    for (int n : {90, 150}) {
        const auto g = oracle::random_connected_graph(n, 6.0 / n, rng);
        const Eigen::MatrixXd l = oracle::laplacian(g.adjacency());
        const Eigen::VectorXd all = oracle::spectrum(l);
        const auto s = smallest_eigenpairs(build_laplacian(g), 5, 0.5, EigenOptions{.tol = 1e-8, .seed = 3});
        CHECK_FALSE(s.dense);
        CHECK(s.iterations > 0);
        MESSAGE("n=" << n << " block iterations=" << s.iterations);
        check_state_invariants(s, l, 1e-8);
        CHECK((s.eigvals - all.head(5)).cwiseAbs().maxCoeff() <= 1e-7);
    }
}

TEST_CASE("iterative solver can be forced at desk scale and warm-started") {
    std::mt19937_64 rng(32);
    const auto g = oracle::random_connected_graph(40, 0.2, rng);
    const Eigen::MatrixXd l = oracle::laplacian(g.adjacency());
    EigenOptions opts;
    opts.force_iterative = true;
    const auto cold = smallest_eigenpairs(build_laplacian(g), 4, 0.5, opts);
    CHECK_FALSE(cold.dense);
    CHECK((cold.eigvals - oracle::spectrum(l).head(4)).cwiseAbs().maxCoeff() <= 1e-7);
    opts.initial = &cold.eigvecs;
    const auto warm = smallest_eigenpairs(build_laplacian(g), 4, 0.5, opts);
    CHECK(warm.iterations <= cold.iterations);
}

TEST_CASE("iterative solver reports non-convergence") {
    std::mt19937_64 rng(33);
    const auto g = oracle::random_connected_graph(120, 0.05, rng);
    EigenOptions opts;
    opts.max_iters = 1;
    opts.tol = 1e-14;
    CHECK_THROWS_AS(smallest_eigenpairs(build_laplacian(g), 4, 0.5, opts), ConvergenceFailure);
}

TEST_CASE("adding an edge never decreases lambda_2") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> size(3, 10);
    int checked = 0;
    while (checked < 200) {
        const int n = size(rng);
        auto g = oracle::random_graph(n, 0.4, rng);
        const int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a == b || g.has_edge({a, b})) continue;
        const double before = full_state(g).fiedler_value;
        g.set_weight({a, b}, 0.5 + static_cast<double>(rng() % 100) / 100.0);
        CHECK(full_state(g).fiedler_value >= before - 1e-10);
        ++checked;
    }
}

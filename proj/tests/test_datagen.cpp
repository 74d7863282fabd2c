#include "doctest.h"

#include "fsgl/datagen.hpp"
#include "fsgl/errors.hpp"

#include <algorithm>
#include <cmath>

using namespace fsgl;

namespace {

double rel_cov_error(const ObservationSet& obs, const Eigen::MatrixXd& cov) {
    const Eigen::MatrixXd s = obs.gram() / static_cast<double>(obs.samples());
    return (s - cov).norm() / cov.norm();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Sample excess kurtosis of one row.
double excess_kurtosis(const Eigen::RowVectorXd& r) {
    const double mean = r.mean();
    const Eigen::ArrayXd c = r.array() - mean;
    const double m2 = c.square().mean();
    const double m4 = c.square().square().mean();
    return m4 / (m2 * m2) - 3.0;
}

double mean_abs_kurtosis(const Eigen::MatrixXd& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) s += std::abs(excess_kurtosis(x.row(i)));
    return s / static_cast<double>(x.rows());
}

constexpr int kSeeds = 20;
constexpr int kN = 30;

} // namespace

TEST_CASE("two-node ground truth") {
    const auto gt = gen_ground_truth(2, 1.0, 0.5, 4);
    REQUIRE(gt.w_star.num_edges() == 1);
    const double w = gt.w_star.weight({0, 1});
    CHECK(w >= 0.5);
    CHECK(w <= 1.5);
    CHECK(gt.theta(0, 0) == doctest::Approx(w + 0.5));
    CHECK(gt.theta(1, 1) == doctest::Approx(w + 0.5));
    CHECK(gt.theta(0, 1) == doctest::Approx(-w));
}

TEST_CASE("precision is positive definite and inverts the covariance") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto gt = gen_ground_truth(5 + static_cast<int>(seed), 0.3, 0.5, seed);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gt.theta);
        CHECK(es.eigenvalues().minCoeff() >= 0.5 - 1e-10);
        const Eigen::Index n = gt.theta.rows();
        CHECK((gt.cov * gt.theta - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((gt.cov_sqrt * gt.cov_sqrt - gt.cov).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(is_connected(gt.w_star));
        CHECK(gt.theta.llt().info() == Eigen::Success);
        for (const auto& [e, w] : gt.w_star.edges()) {
            CHECK(w >= 0.5);
            CHECK(w <= 1.5);
        }
    }
}

TEST_CASE("average edge count tracks the density") {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) total += static_cast<double>(gen_ground_truth(30, 0.2, 0.5, seed).w_star.num_edges());
    const double expected = 0.2 * 30 * 29 / 2;
    CHECK(std::abs(total / 100.0 - expected) <= 0.15 * expected);
}

TEST_CASE("sparse densities still yield connected graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(is_connected(gen_ground_truth(40, 0.01, 0.5, seed).w_star));
    CHECK(is_connected(random_connected_unit_graph(25, 0.02, 3)));
}

TEST_CASE("degenerate mixture is a plain Gaussian") {
    std::vector<double> errs, kurt;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
        const auto gt = gen_ground_truth(kN, 0.2, 0.5, s);
        const auto obs = sample_gmm(gt, 50 * kN, 1, 0.0, 100 + s);
        errs.push_back(rel_cov_error(obs, gt.cov));
        kurt.push_back(mean_abs_kurtosis(obs.x()));
    }
    CHECK(median(errs) < 0.10);
    CHECK(median(kurt) < 0.2);
}

TEST_CASE("mixture covariance within components approaches the truth") {
    // Equal means collapse the mixture onto one component, so the pooled sample
    // covariance is the within-component covariance.
    std::vector<double> errs;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
        const auto gt = gen_ground_truth(kN, 0.2, 0.5, s);
        errs.push_back(rel_cov_error(sample_gmm(gt, 50 * kN, 3, 0.0, 200 + s), gt.cov));
    }
    CHECK(median(errs) < 0.10);
}

TEST_CASE("mixture covariance exceeds the truth by a low-rank term") {
    const auto gt = gen_ground_truth(kN, 0.2, 0.5, 8);
    const auto obs = sample_gmm(gt, 200 * kN, 3, 1.0, 9);
    const Eigen::MatrixXd& x = obs.x();
    const Eigen::VectorXd mean = x.rowwise().mean();
    const Eigen::MatrixXd centered = x.colwise() - mean;
    const Eigen::MatrixXd s = centered * centered.transpose() / static_cast<double>(x.cols());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s - gt.cov);
    const Eigen::VectorXd ev = es.eigenvalues();
    // Three means around their average span at most two directions.
    const double bulk = ev.head(ev.size() - 2).cwiseAbs().maxCoeff();
    CHECK(ev(ev.size() - 1) > 5.0 * bulk);
    CHECK(bulk < 0.1 * gt.cov.norm());
}

TEST_CASE("separated means make the marginals non-Gaussian") {
    const auto gt = gen_ground_truth(kN, 0.2, 0.5, 1);
    const double gauss = mean_abs_kurtosis(sample_gmm(gt, 20000, 1, 0.0, 2).x());
    const double mix = mean_abs_kurtosis(sample_gmm(gt, 20000, 3, 3.0, 2).x());
    CHECK(mix > 0.2);
    CHECK(mix > 5.0 * gauss);
}

TEST_CASE("t with huge dof matches the Gaussian covariance") {
    std::vector<double> t_err, g_err;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
        const auto gt = gen_ground_truth(kN, 0.2, 0.5, s);
        t_err.push_back(rel_cov_error(sample_mvt(gt, 50 * kN, 1e6, 300 + s), gt.cov));
        g_err.push_back(rel_cov_error(sample_gmm(gt, 50 * kN, 1, 0.0, 300 + s), gt.cov));
    }
    CHECK(median(t_err) < 0.10);
    CHECK(std::abs(median(t_err) - median(g_err)) < 0.02);
}

TEST_CASE("t with three dof: sample covariance within 15% at k = 100N") {
    std::vector<double> errs;
    for (std::uint64_t s = 0; s < kSeeds; ++s) {
        const auto gt = gen_ground_truth(kN, 0.2, 0.5, s);
        errs.push_back(rel_cov_error(sample_mvt(gt, 100 * kN, 3.0, 400 + s), gt.cov));
    }
    CHECK(median(errs) < 0.15);
}

TEST_CASE("t with three dof has heavy tails") {
    const auto gt = gen_ground_truth(kN, 0.2, 0.5, 6);
    const auto obs = sample_mvt(gt, 20000, 3.0, 7);
    for (Eigen::Index i = 0; i < obs.x().rows(); ++i) CHECK(excess_kurtosis(obs.x().row(i)) > 0.0);
}

TEST_CASE("t needs more than two degrees of freedom") {
    const auto gt = gen_ground_truth(5, 0.5, 0.5, 0);
    CHECK_THROWS_AS(sample_mvt(gt, 10, 2.0, 0), InvalidDof);
    CHECK_THROWS_AS(sample_mvt(gt, 10, 1.5, 0), InvalidDof);
    CHECK_NOTHROW(sample_mvt(gt, 10, 2.01, 0));
}

TEST_CASE("samplers are deterministic in the seed") {
    const auto a = gen_ground_truth(12, 0.3, 0.5, 42);
    const auto b = gen_ground_truth(12, 0.3, 0.5, 42);
    CHECK(a.w_star.edges() == b.w_star.edges());
    CHECK(sample_gmm(a, 8, 3, 1.0, 5).x() == sample_gmm(b, 8, 3, 1.0, 5).x());
    CHECK(sample_mvt(a, 8, 3.0, 5).x() == sample_mvt(b, 8, 3.0, 5).x());
    CHECK(sample_mvt(a, 8, 3.0, 5).x() != sample_mvt(a, 8, 3.0, 6).x());
    const auto obs = sample_gmm(a, 8, 3, 1.0, 5);
    CHECK(obs.dims() == 12);
    CHECK(obs.samples() == 8);
}

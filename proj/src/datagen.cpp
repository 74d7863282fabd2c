#include "fsgl/datagen.hpp"

#include "fsgl/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace fsgl {
namespace {

constexpr int kMaxResamples = 1000;

WeightedGraph erdos_renyi(int n, double density, bool unit, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(density);
    std::uniform_real_distribution<double> weight(0.5, 1.5);
    WeightedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.set_weight({i, j}, unit ? 1.0 : weight(rng));
    return g;
}

WeightedGraph connected_erdos_renyi(int n, double density, bool unit, std::mt19937_64& rng) {
    if (n < 2) throw Error("random graph needs at least two nodes");
    if (!(density > 0.0 && density <= 1.0)) throw Error("density must lie in (0, 1]");
    WeightedGraph g;
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        g = erdos_renyi(n, density, unit, rng);
        if (is_connected(g)) return g;
    }
    std::uniform_real_distribution<double> weight(0.5, 1.5);
    const auto comps = connected_components(g);
    for (std::size_t c = 1; c < comps.size(); ++c) {
        std::uniform_int_distribution<std::size_t> pick_a(0, comps[c - 1].size() - 1);
        std::uniform_int_distribution<std::size_t> pick_b(0, comps[c].size() - 1);
        g.set_weight({comps[c - 1][pick_a(rng)], comps[c][pick_b(rng)]}, unit ? 1.0 : weight(rng));
    }
    return g;
}

} // namespace

GroundTruth ground_truth_from_graph(WeightedGraph g, double rho) {
    if (!(rho > 0.0)) throw Error("rho must be positive");
    GroundTruth gt;
    const int n = g.num_nodes();
    gt.rho = rho;
    gt.theta = dense_laplacian(g) + rho * Eigen::MatrixXd::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gt.theta);
    const Eigen::VectorXd inv = es.eigenvalues().cwiseInverse();
    const Eigen::MatrixXd& u = es.eigenvectors();
    gt.cov = u * inv.asDiagonal() * u.transpose();
    gt.cov_sqrt = u * inv.cwiseSqrt().asDiagonal() * u.transpose();
    gt.w_star = std::move(g);
    return gt;
}

GroundTruth gen_ground_truth(int n, double density, double rho, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return ground_truth_from_graph(connected_erdos_renyi(n, density, false, rng), rho);
}

WeightedGraph random_connected_unit_graph(int n, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return connected_erdos_renyi(n, density, true, rng);
}

ObservationSet sample_gmm(const GroundTruth& gt, int k, int n_comp, double mean_scale, std::uint64_t seed) {
    if (k < 1) throw Error("need at least one sample");
    if (n_comp < 1) throw Error("need at least one mixture component");
    if (mean_scale < 0.0) throw Error("mean scale must be nonnegative");
    const Eigen::Index n = gt.cov.rows();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;

    Eigen::MatrixXd means(n, n_comp);
    Eigen::VectorXd z(n);
    for (Eigen::Index c = 0; c < n_comp; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
        means.col(c) = mean_scale * (gt.cov_sqrt * z);
    }

    std::uniform_int_distribution<int> pick(0, n_comp - 1);
    Eigen::MatrixXd x(n, k);
    for (int s = 0; s < k; ++s) {
        const int c = pick(rng);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
        x.col(s) = means.col(c) + gt.cov_sqrt * z;
    }
    return ObservationSet(std::move(x));
}

ObservationSet sample_mvt(const GroundTruth& gt, int k, double dof, std::uint64_t seed) {
    if (!(dof > 2.0)) throw InvalidDof("multivariate t needs dof > 2 for a finite covariance");
    if (k < 1) throw Error("need at least one sample");
    const Eigen::Index n = gt.cov.rows();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::chi_squared_distribution<double> chi2(dof);
    const double shrink = std::sqrt((dof - 2.0) / dof);

    Eigen::MatrixXd x(n, k);
    Eigen::VectorXd z(n);
    for (int s = 0; s < k; ++s) {
        for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
        const double u = chi2(rng);
        x.col(s) = (shrink / std::sqrt(u / dof)) * (gt.cov_sqrt * z);
    }
    return ObservationSet(std::move(x));
}

} // namespace fsgl

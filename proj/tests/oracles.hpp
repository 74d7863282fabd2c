#pragma once

// Independent dense reference computations for tests. Nothing here calls into
// the library's scoring or spectral code.

#include "fsgl/graph.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace oracle {

inline Eigen::MatrixXd laplacian(const Eigen::MatrixXd& w) {
    Eigen::MatrixXd l = -w;
    for (Eigen::Index i = 0; i < w.rows(); ++i) l(i, i) = w.row(i).sum() - w(i, i);
    return l;
}

inline Eigen::VectorXd spectrum(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    return es.eigenvalues();
}

inline double lambda2(const Eigen::MatrixXd& w) { return spectrum(laplacian(w))(1); }

inline double trace_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a * b).trace(); }

inline double log_det(const Eigen::MatrixXd& a) { return std::log(a.fullPivLu().determinant()); }

inline Eigen::VectorXd diff_vector(Eigen::Index n, int m, int k) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    u(m) = 1.0;
    u(k) = -1.0;
    return u;
}

/// tr(L Y) - log det(L + alpha I) - gamma lambda2 + mu * nnz_offdiag(W)
inline double objective(const Eigen::MatrixXd& w, const Eigen::MatrixXd& y, double alpha, double gamma, double mu) {
    const Eigen::Index n = w.rows();
    const Eigen::MatrixXd l = laplacian(w);
    int nnz = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && w(i, j) != 0.0) ++nnz;
    return trace_product(l, y) - log_det(l + alpha * Eigen::MatrixXd::Identity(n, n)) - gamma * spectrum(l)(1) +
           mu * nnz;
}

inline fsgl::WeightedGraph random_graph(int n, double p, std::mt19937_64& rng, double lo = 0.5, double hi = 1.5) {
    std::bernoulli_distribution coin(p);
    std::uniform_real_distribution<double> weight(lo, hi);
    fsgl::WeightedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.set_weight({i, j}, weight(rng));
    return g;
}

inline fsgl::WeightedGraph random_connected_graph(int n, double p, std::mt19937_64& rng, double lo = 0.5,
                                                  double hi = 1.5) {
    for (;;) {
        auto g = random_graph(n, p, rng, lo, hi);
        if (fsgl::is_connected(g)) return g;
    }
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd x(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) x(i, j) = normal(rng);
    return x;
}

} // namespace oracle

#include "fsgl/spectral.hpp"

#include "fsgl/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace fsgl {
namespace {

// Two-pass modified Gram-Schmidt; columns whose norm collapses below drop_tol
// (relative to their original norm) are discarded. Leading columns that are
// already orthonormal pass through unchanged.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& m, double drop_tol = 1e-10) {
    Eigen::MatrixXd q(m.rows(), m.cols());
    Eigen::Index r = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::VectorXd v = m.col(j);
        const double original = v.norm();
        if (original == 0.0) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index i = 0; i < r; ++i) v -= q.col(i).dot(v) * q.col(i);
        const double nv = v.norm();
        if (nv <= drop_tol * original || nv < 1e-300) continue;
        q.col(r++) = v / nv;
    }
    return q.leftCols(r);
}

void finalize(SpectralState& s) {
    const int k = s.num_pairs();
    s.fiedler_value = k >= 2 ? s.eigvals(1) : 0.0;
    s.fiedler_vector = k >= 2 ? Eigen::VectorXd(s.eigvecs.col(1)) : Eigen::VectorXd::Zero(s.num_nodes());
    if (k >= 3)
        s.gap2 = std::min(s.eigvals(1) - s.eigvals(0), s.eigvals(2) - s.eigvals(1));
    else if (k == 2 && s.full_spectrum())
        s.gap2 = s.eigvals(1) - s.eigvals(0);
}

} // namespace

Eigen::VectorXd dense_spectrum(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

BlockEigenResult lobpcg_smallest(const LaplacianView& l, int k, const EigenOptions& opts) {
    const int n = l.n;
    const int block = std::min(n, k + std::max(2, k / 4));
    if (k < 1 || 3 * block > n) throw ConvergenceFailure("block too large for iterative eigensolver");

    Eigen::MatrixXd x(n, block);
    {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> normal;
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = normal(rng);
        if (opts.initial && opts.initial->rows() == n) {
            const Eigen::Index c = std::min<Eigen::Index>(opts.initial->cols(), block);
            x.leftCols(c) = opts.initial->leftCols(c);
        }
    }
    // Jacobi preconditioner.
    Eigen::VectorXd inv_diag = l.diagonal();
    for (Eigen::Index i = 0; i < inv_diag.size(); ++i) inv_diag(i) = 1.0 / std::max(inv_diag(i), 1e-3);

    auto rayleigh_ritz = [&](const Eigen::MatrixXd& basis, Eigen::VectorXd& values, Eigen::MatrixXd& coeffs) {
        Eigen::MatrixXd h = basis.transpose() * l.apply(basis);
        h = 0.5 * (h + h.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        values = es.eigenvalues().head(block);
        coeffs = es.eigenvectors().leftCols(block);
    };

    x = orthonormal_basis(x);
    if (x.cols() < block) throw ConvergenceFailure("degenerate initial block");
    Eigen::VectorXd theta;
    Eigen::MatrixXd coeffs;
    rayleigh_ritz(x, theta, coeffs);
    x = x * coeffs;
    Eigen::MatrixXd p;

    BlockEigenResult result;
    for (int it = 1; it <= opts.max_iters; ++it) {
        Eigen::MatrixXd lx = l.apply(x);
        Eigen::MatrixXd r = lx - x * theta.asDiagonal();

        double worst = 0.0;
        bool converged = true;
        for (int i = 0; i < k; ++i) {
            const double res = r.col(i).norm();
            const double bound = opts.tol * (1.0 + std::abs(theta(i)));
            worst = std::max(worst, res / (1.0 + std::abs(theta(i))));
            if (res > bound) converged = false;
        }
        result.iterations = it;
        result.max_residual = worst;
        if (converged) {
            result.values = theta.head(k);
            result.vectors = x.leftCols(k);
            return result;
        }

        Eigen::MatrixXd w = inv_diag.asDiagonal() * r;
        w -= x * (x.transpose() * w);
        Eigen::MatrixXd stacked(n, x.cols() + w.cols() + p.cols());
        stacked << x, w, p;
        const Eigen::MatrixXd basis = orthonormal_basis(stacked);
        if (basis.cols() < block) throw ConvergenceFailure("iterative eigensolver basis collapsed");
        rayleigh_ritz(basis, theta, coeffs);
        const Eigen::MatrixXd x_new = basis * coeffs;
        // Search direction: the part of the update outside the previous block.
        p = basis.rightCols(basis.cols() - block) * coeffs.bottomRows(basis.cols() - block);
        x = x_new;
    }
    throw ConvergenceFailure("iterative eigensolver did not reach tol " + std::to_string(opts.tol) + " in " +
                             std::to_string(opts.max_iters) + " iterations (residual " +
                             std::to_string(result.max_residual) + ")");
}

SpectralState smallest_eigenpairs(const LaplacianView& l, int k, double alpha, const EigenOptions& opts) {
    const int n = l.n;
    if (k < 2 || k > n) throw InsufficientEigenpairs("need 2 <= k <= n eigenpairs, got k=" + std::to_string(k));
    if (!(opts.tol > 0.0)) throw Error("eigensolver tolerance must be positive");
    if (!(alpha > 0.0)) throw Error("alpha must be positive");

    SpectralState s;
    s.alpha = alpha;
    const int block = std::min(n, k + std::max(2, k / 4));
    const bool iterative = (opts.force_iterative || n > kDenseThreshold) && 3 * block <= n;
    if (!iterative) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.to_dense());
        if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigendecomposition failed");
        s.eigvals = es.eigenvalues().head(k);
        s.eigvecs = es.eigenvectors().leftCols(k);
        s.dense = true;
    } else {
        auto r = lobpcg_smallest(l, k, opts);
        s.eigvals = std::move(r.values);
        s.eigvecs = std::move(r.vectors);
        s.iterations = r.iterations;
        s.dense = false;
    }
    finalize(s);
    return s;
}

double eigen_gap2(const SpectralState& state) {
    if (std::isnan(state.gap2))
        throw InsufficientEigenpairs("Gap_2 needs lambda_1..lambda_3 (or the full spectrum)");
    return std::max(0.0, state.gap2);
}

double majorizer_quadform(const SpectralState& state, int m, int n) {
    const double inv_alpha = 1.0 / state.alpha;
    double q = 2.0 * inv_alpha;
    for (int k = 0; k < state.num_pairs(); ++k) {
        const double d = state.eigvecs(m, k) - state.eigvecs(n, k);
        q += d * d * (1.0 / (state.eigvals(k) + state.alpha) - inv_alpha);
    }
    return q;
}

} // namespace fsgl

#pragma once

#include "fsgl/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <limits>

namespace fsgl {

/// Immutable snapshot of the smallest Laplacian eigenpairs.
struct SpectralState {
    Eigen::VectorXd eigvals;  // ascending, size k
    Eigen::MatrixXd eigvecs;  // n x k, orthonormal columns
    double fiedler_value = 0.0;
    Eigen::VectorXd fiedler_vector;
    /// min(l2 - l1, l3 - l2); NaN when fewer than three eigenvalues are known.
    double gap2 = std::numeric_limits<double>::quiet_NaN();
    double alpha = 0.5;
    /// Number of block iterations used (0 for the dense path).
    int iterations = 0;
    bool dense = true;

    int num_nodes() const { return static_cast<int>(eigvecs.rows()); }
    int num_pairs() const { return static_cast<int>(eigvals.size()); }
    bool full_spectrum() const { return num_pairs() == num_nodes(); }
};

struct EigenOptions {
    double tol = 1e-8;
    int max_iters = 500;
    std::uint64_t seed = 0;
    /// Use the block iterative solver even when the dense path would apply.
    bool force_iterative = false;
    /// Optional warm start for the iterative solver (n x k or wider).
    const Eigen::MatrixXd* initial = nullptr;
};

/// The k smallest eigenpairs of L. Dense eigendecomposition for n <= kDenseThreshold,
/// LOBPCG otherwise. Throws ConvergenceFailure if the iteration cap is hit.
SpectralState smallest_eigenpairs(const LaplacianView& l, int k, double alpha, const EigenOptions& opts = {});

/// Gap_2 = min_{j != 2} |l2 - lj| from the retained spectrum.
/// Throws InsufficientEigenpairs when it cannot be determined.
double eigen_gap2(const SpectralState& state);

/// (e_m - e_n)^T M (e_m - e_n) with M = V (Lambda + alpha I)^{-1} V^T + (I - V V^T) / alpha,
/// an upper bound on the same form with (L + alpha I)^{-1}. O(k).
double majorizer_quadform(const SpectralState& state, int m, int n);

/// Result of the block solver, exposed for testing.
struct BlockEigenResult {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    int iterations = 0;
    double max_residual = 0.0;
};

BlockEigenResult lobpcg_smallest(const LaplacianView& l, int k, const EigenOptions& opts);

/// All eigenvalues of a dense symmetric matrix, ascending.
Eigen::VectorXd dense_spectrum(const Eigen::MatrixXd& a);

} // namespace fsgl

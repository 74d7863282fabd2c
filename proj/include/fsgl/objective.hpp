#pragma once

#include "fsgl/config.hpp"
#include "fsgl/graph.hpp"
#include "fsgl/spectral.hpp"

#include <Eigen/Dense>

#include <optional>

namespace fsgl {

/// Scored quantities for weakening one edge.
struct EdgeDelta {
    EdgeKey edge;
    double step = 0.0;          // min(epsilon, w): the weight actually removed
    double z = 0.0;             // trace slope, <= 0
    double eta = 1.0;           // determinant factor in (0, 1]
    double logdet_penalty = 0;  // -log eta
    double rho = 0.0;           // Fiedler loss bound
    double sparsity_gain = 0.0; // 0 or -mu
    double grad_h = 0.0;
};

/// Z_{m,n} = 2 Y_mn - Y_mm - Y_nn. Weakening by eps changes tr(LY) by exactly eps * Z.
double trace_delta(const Eigen::MatrixXd& y, int m, int n);

/// (e_m - e_n)^T A (e_m - e_n) for a dense symmetric A.
double exact_quadform(const Eigen::MatrixXd& a, int m, int n);

/// -log(1 - step * q); throws StepTooLarge when step * q >= 1.
double logdet_penalty(double q, double step);

/// -log of the majorized determinant factor 1 - step * majorizer_quadform(m, n).
double logdet_delta(const SpectralState& state, int m, int n, double step);

/// Upper bound on the decrease of lambda_2 when step * E^{m,n} is subtracted from L:
///   sqrt(2) step |v2m - v2n|   if Gap2 > 4 step
///   2 step |v2m - v2n|         if Gap2 > 2 step
///   2 step                     otherwise (also when Gap2 is unknown)
double fiedler_delta(const SpectralState& state, int m, int n, double step);

/// -mu when w < eps (the step removes the edge), else 0.
double sparsity_delta(double w, double eps, double mu);

/// Read-only inputs for scoring every edge of one solver iteration.
struct ScoringSnapshot {
    SpectralState spectral;
    /// (L + alpha I)^{-1}, present only in exact log-det mode.
    std::optional<Eigen::MatrixXd> exact_inverse;
};

ScoringSnapshot make_snapshot(const WeightedGraph& g, const SolverConfig& cfg, int num_eigenpairs,
                              const Eigen::MatrixXd* warm_start = nullptr);

/// grad_h = step Z - log eta + gamma rho - mu I(w < eps) for edge `e` of `g`.
/// Throws MissingEdge or StepTooLarge.
EdgeDelta edge_gradient(const ScoringSnapshot& snap, const Eigen::MatrixXd& y, const WeightedGraph& g, EdgeKey e,
                        const SolverConfig& cfg);

struct ObjectiveTerms {
    double trace = 0.0;     // tr(L Y)
    double logdet = 0.0;    // log det(L + alpha I)
    double lambda2 = 0.0;
    double l0 = 0.0;        // off-diagonal nonzeros of W (2 per edge)
    double smooth = 0.0;    // trace - logdet - gamma lambda2
    double total = 0.0;     // smooth + mu l0
};

/// Exact objective, evaluated densely for n <= kDenseThreshold.
ObjectiveTerms objective_terms(const WeightedGraph& g, const Eigen::MatrixXd& y, const SolverConfig& cfg);
double objective_value(const WeightedGraph& g, const Eigen::MatrixXd& y, const SolverConfig& cfg);

/// Gram matrix the solvers actually score against (see SolverConfig::scale_gram).
Eigen::MatrixXd scoring_gram(const ObservationSet& obs, const SolverConfig& cfg);

/// Second-smallest Laplacian eigenvalue, computed exactly (dense) for small graphs.
double fiedler_value(const WeightedGraph& g, double tol = 1e-10);

} // namespace fsgl

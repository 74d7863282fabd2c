#include "fsgl/objective.hpp"

#include "fsgl/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <string>

namespace fsgl {

void SolverConfig::validate() const {
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
    if (!(alpha > 0.0)) throw Error("alpha must be positive");
    if (gamma < 0.0 || mu < 0.0) throw Error("gamma and mu must be nonnegative");
    if (refresh_interval < 1) throw Error("refresh interval must be at least 1");
    if (max_iters < 0) throw Error("max_iters must be nonnegative");
    if (v_min < 2) throw Error("v_min must be at least 2");
    if (!(eig_tol > 0.0)) throw Error("eigensolver tolerance must be positive");
    if (threads < 1) throw Error("threads must be at least 1");
}

std::string to_string(SolverKind kind) { return kind == SolverKind::greedy ? "greedy" : "recursive"; }

SolverKind parse_solver_kind(const std::string& s) {
    if (s == "greedy") return SolverKind::greedy;
    if (s == "recursive") return SolverKind::recursive;
    throw Error("unknown solver '" + s + "'");
}

double trace_delta(const Eigen::MatrixXd& y, int m, int n) { return 2.0 * y(m, n) - y(m, m) - y(n, n); }

double exact_quadform(const Eigen::MatrixXd& a, int m, int n) { return a(m, m) + a(n, n) - a(m, n) - a(n, m); }

double logdet_penalty(double q, double step) {
    const double eta = 1.0 - step * q;
    if (!(eta > 0.0))
        throw StepTooLarge("step * quadratic form = " + std::to_string(step * q) + " >= 1");
    return -std::log(eta);
}

double logdet_delta(const SpectralState& state, int m, int n, double step) {
    return logdet_penalty(majorizer_quadform(state, m, n), step);
}

double fiedler_delta(const SpectralState& state, int m, int n, double step) {
    const double gap = state.gap2;
    const double diff = std::abs(state.fiedler_vector(m) - state.fiedler_vector(n));
    if (!std::isnan(gap)) {
        if (gap > 4.0 * step) return std::sqrt(2.0) * step * diff;
        if (gap > 2.0 * step) return 2.0 * step * diff;
    }
    return 2.0 * step;
}

double sparsity_delta(double w, double eps, double mu) { return w < eps ? -mu : 0.0; }

ScoringSnapshot make_snapshot(const WeightedGraph& g, const SolverConfig& cfg, int num_eigenpairs,
                              const Eigen::MatrixXd* warm_start) {
    ScoringSnapshot snap;
    const LaplacianView l = build_laplacian(g);
    EigenOptions opts;
    opts.tol = cfg.eig_tol;
    opts.max_iters = cfg.eig_max_iters;
    opts.seed = cfg.seed;
    opts.initial = warm_start;
    snap.spectral = smallest_eigenpairs(l, num_eigenpairs, cfg.alpha, opts);
    if (cfg.exact_logdet) {
        const int n = g.num_nodes();
        Eigen::MatrixXd a = l.to_dense() + cfg.alpha * Eigen::MatrixXd::Identity(n, n);
        snap.exact_inverse = a.llt().solve(Eigen::MatrixXd::Identity(n, n));
    }
    return snap;
}

EdgeDelta edge_gradient(const ScoringSnapshot& snap, const Eigen::MatrixXd& y, const WeightedGraph& g, EdgeKey e,
                        const SolverConfig& cfg) {
    const double w = g.weight(e);
    if (w <= 0.0)
        throw MissingEdge("edge (" + std::to_string(e.m) + "," + std::to_string(e.n) + ") not present");
    EdgeDelta d;
    d.edge = e;
    d.step = std::min(cfg.epsilon, w);
    d.z = trace_delta(y, e.m, e.n);
    const double q = snap.exact_inverse ? exact_quadform(*snap.exact_inverse, e.m, e.n)
                                        : majorizer_quadform(snap.spectral, e.m, e.n);
    d.logdet_penalty = logdet_penalty(q, d.step);
    d.eta = 1.0 - d.step * q;
    d.rho = fiedler_delta(snap.spectral, e.m, e.n, d.step);
    d.sparsity_gain = sparsity_delta(w, cfg.epsilon, cfg.mu);
    d.grad_h = d.step * d.z + d.logdet_penalty + cfg.gamma * d.rho + d.sparsity_gain;
    return d;
}

double fiedler_value(const WeightedGraph& g, double tol) {
    const int n = g.num_nodes();
    if (n < 2) return 0.0;
    const LaplacianView l = build_laplacian(g);
    if (l.is_dense()) return dense_spectrum(*l.dense)(1);
    EigenOptions opts;
    opts.tol = tol;
    opts.max_iters = 2000;
    return smallest_eigenpairs(l, 2, 1.0, opts).fiedler_value;
}

ObjectiveTerms objective_terms(const WeightedGraph& g, const Eigen::MatrixXd& y, const SolverConfig& cfg) {
    const int n = g.num_nodes();
    ObjectiveTerms t;
    for (const auto& [e, w] : g.edges()) t.trace -= w * trace_delta(y, e.m, e.n);
    if (n <= kDenseThreshold) {
        const Eigen::MatrixXd a = dense_laplacian(g) + cfg.alpha * Eigen::MatrixXd::Identity(n, n);
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() != Eigen::Success) throw Error("L + alpha I is not positive definite");
        t.logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    } else {
        Eigen::SparseMatrix<double> a = sparse_laplacian(g);
        for (int i = 0; i < n; ++i) a.coeffRef(i, i) += cfg.alpha;
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
        if (ldlt.info() != Eigen::Success) throw Error("L + alpha I factorization failed");
        t.logdet = ldlt.vectorD().array().log().sum();
    }
    t.lambda2 = fiedler_value(g, cfg.eig_tol);
    t.l0 = 2.0 * static_cast<double>(g.num_edges());
    t.smooth = t.trace - t.logdet - cfg.gamma * t.lambda2;
    t.total = t.smooth + cfg.mu * t.l0;
    return t;
}

double objective_value(const WeightedGraph& g, const Eigen::MatrixXd& y, const SolverConfig& cfg) {
    return objective_terms(g, y, cfg).total;
}

Eigen::MatrixXd scoring_gram(const ObservationSet& obs, const SolverConfig& cfg) {
    if (!cfg.scale_gram || obs.samples() == 0) return obs.gram();
    return obs.gram() / static_cast<double>(obs.samples());
}

} // namespace fsgl

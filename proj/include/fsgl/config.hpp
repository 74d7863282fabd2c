#pragma once

#include <cstdint>
#include <string>

namespace fsgl {

enum class SolverKind { greedy, recursive };

/// Parameters shared by the scoring, greedy and recursive solvers.
struct SolverConfig {
    double epsilon = 0.01;
    double alpha = 0.5;
    double gamma = 0.5;
    double mu = 0.2;
    /// Extra edges for the sparse initializer; negative means 3N.
    int budget_b = -1;
    int v_min = 8;
    double eig_tol = 1e-8;
    int eig_max_iters = 500;
    int refresh_interval = 1;
    int max_iters = 20000;
    std::uint64_t seed = 0;
    SolverKind solver_kind = SolverKind::greedy;
    /// Score log-det terms with the exact inverse instead of the spectral majorizer.
    bool exact_logdet = false;
    /// Score against XXᵀ/K instead of the raw Gram matrix.
    bool scale_gram = true;
    /// Retained eigenpairs; 0 means "number of observations". Floored at 3, capped at N.
    int num_eigenpairs = 0;
    /// Exact objective is recorded every this many accepted steps (0 = never).
    int objective_interval = 0;
    /// Worker threads for edge scoring and recursive selection.
    int threads = 1;
    /// Minimum edge count of a sub-problem before it is handed to another thread.
    int parallel_grain = 512;

    /// Throws fsgl::Error on invalid combinations.
    void validate() const;
};

std::string to_string(SolverKind kind);
SolverKind parse_solver_kind(const std::string& s);

} // namespace fsgl

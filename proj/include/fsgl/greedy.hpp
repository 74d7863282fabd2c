#pragma once

#include "fsgl/config.hpp"
#include "fsgl/graph.hpp"
#include "fsgl/objective.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace fsgl {

/// Strict ordering used for every argmin: smaller grad_h, then lexicographic edge.
bool better_delta(const EdgeDelta& a, const EdgeDelta& b);

struct ScanResult {
    std::optional<EdgeDelta> best;
    std::size_t scored = 0;
    /// Edges skipped because step * q >= 1.
    std::size_t ineligible = 0;

    void merge(const ScanResult& other);
};

/// Scores `edges` (all must exist in g) and returns the best one, using up to
/// cfg.threads workers when the list is longer than cfg.parallel_grain.
ScanResult scan_edges(const ScoringSnapshot& snap, const Eigen::MatrixXd& y, const WeightedGraph& g,
                      std::span<const EdgeKey> edges, const SolverConfig& cfg);

/// Exhaustive scan over every edge of g.
ScanResult scan_all_edges(const ScoringSnapshot& snap, const Eigen::MatrixXd& y, const WeightedGraph& g,
                          const SolverConfig& cfg);

std::vector<EdgeKey> edge_list(const WeightedGraph& g);

/// Best edge if its grad_h < 0; std::nullopt means converged.
std::optional<EdgeDelta> greedy_step(const WeightedGraph& g, const Eigen::MatrixXd& y, const ScoringSnapshot& snap,
                                     const SolverConfig& cfg);

/// Eigenpairs retained for the majorizer: cfg.num_eigenpairs or K, floored at 3, capped at n.
int retained_pairs(const SolverConfig& cfg, int n, int samples);

struct TraceRecord {
    int iter = 0;
    EdgeKey edge;
    double grad_h = 0.0;
    double objective = 0.0;  // NaN unless recorded on this step
    double lambda2 = 0.0;    // from the snapshot used to score the step
    std::size_t edges = 0;   // edge count after the step
    double ms = 0.0;         // elapsed since the solve started
};

struct SolveTrace {
    std::vector<TraceRecord> records;
    bool converged = false;
    int refreshes = 0;
    long eig_iterations = 0;
    std::size_t ineligible = 0;
    double initial_objective = 0.0;  // NaN unless objective_interval > 0

    /// CSV with header `iter,m,n,grad_h,objective,lambda2,edges,ms`.
    void write_csv(std::ostream& os) const;
};

struct SolveResult {
    WeightedGraph graph;
    SolveTrace trace;
};

/// Greedy weakening loop; the selection rule follows cfg.solver_kind.
/// Throws Disconnected if g0 is not connected.
SolveResult run_solver(const WeightedGraph& g0, const ObservationSet& obs, const SolverConfig& cfg);

/// run_solver with the exhaustive selection rule.
SolveResult run_greedy(const WeightedGraph& g0, const ObservationSet& obs, SolverConfig cfg);

} // namespace fsgl

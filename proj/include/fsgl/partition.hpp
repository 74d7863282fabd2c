#pragma once

#include "fsgl/config.hpp"
#include "fsgl/graph.hpp"
#include "fsgl/greedy.hpp"
#include "fsgl/objective.hpp"
#include "fsgl/spectral.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace fsgl {

/// Node subset S with 0 < |S| <= |V|/2 and its boundary edges.
struct CheegerCut {
    std::vector<int> s;  // sorted
    std::vector<EdgeKey> cut_edges;
    double ratio = 0.0;  // |cut_edges| / |s|
};

/// Exact Cheeger constant by enumerating every admissible subset (|V| <= 16).
/// Ties: smaller |S|, then lexicographically smaller membership list.
CheegerCut brute_force_cheeger(const WeightedGraph& g);

/// Fiedler sweep cut: order nodes by `values`, keep the best of the n-1 prefix
/// splits (scored on the side with at most |V|/2 nodes). Ties keep the earliest prefix.
CheegerCut sweep_cut(const WeightedGraph& g, std::span<const double> values);

/// Sweep cut on the Fiedler vector in `state`. Throws Disconnected when lambda_2 <= 1e-8.
CheegerCut approx_cheeger_cut(const WeightedGraph& g, const SpectralState& state);

struct PartitionStats {
    int max_depth = 0;          // longest chain of Cheeger splits
    double worst_split = 0.0;   // largest |larger side| / |V| over all splits
    int splits = 0;
    int component_splits = 0;
    int leaves = 0;
    /// Splits where |E1| + |E2| + |dS| != |E|; always zero unless something is broken.
    int edge_partition_violations = 0;
};

struct PartitionResult {
    ScanResult scan;
    PartitionStats stats;
};

/// Recursive edge selection. Every edge of g is scored exactly once against the
/// global snapshot, so the result equals the exhaustive argmin (same tie-breaking).
/// Cuts are sweeps over the Fiedler order of `state`; sub-graphs inherit that order.
PartitionResult partition_select(const WeightedGraph& g, const SpectralState& state, const ScoringSnapshot& snap,
                                 const Eigen::MatrixXd& y, const SolverConfig& cfg);

} // namespace fsgl

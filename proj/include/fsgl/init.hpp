#pragma once

#include "fsgl/graph.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fsgl {

/// One attachment of the spanning-tree phase: `node` joined the tree through `edge`.
struct TreeAttachment {
    EdgeKey edge;
    int node = 0;
    double value = 0.0;  // Y entry of `edge`
};

struct InitTrace {
    std::vector<int> seed_pair;                // nodes of the first edge
    std::vector<TreeAttachment> attachments;   // N - 2 entries after the seed edge
    std::vector<EdgeKey> extra_edges;          // the B additional edges, in selection order
};

/// Unit-weight graph with N - 1 + b edges: a spanning tree grown Prim-style by
/// always taking the largest Y entry crossing the frontier, then the b largest
/// remaining off-diagonal entries. Ties go to the lexicographically smaller pair.
/// Throws InvalidBudget when b is negative or exceeds the pairs left after the tree.
WeightedGraph init_sparse_graph(const Eigen::MatrixXd& y, int b, InitTrace* trace = nullptr);

/// Default extra-edge budget (3N), clamped to the pairs available.
int default_budget(int n);

} // namespace fsgl

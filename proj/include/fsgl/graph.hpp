#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace fsgl {

/// Unordered node pair stored canonically with m < n.
struct EdgeKey {
    int m = 0;
    int n = 0;

    EdgeKey() = default;
    EdgeKey(int a, int b) : m(a < b ? a : b), n(a < b ? b : a) {}

    auto operator<=>(const EdgeKey&) const = default;
};

/// Weights at or below this value are treated as zero and the edge entry is dropped.
inline constexpr double kZeroWeight = 1e-12;

/// Below this node count Laplacians and eigensolvers use dense storage.
inline constexpr int kDenseThreshold = 64;

/// Undirected graph with positive weights, keyed by canonical node pairs.
/// Iteration order is lexicographic in (m, n).
class WeightedGraph {
public:
    using EdgeMap = std::map<EdgeKey, double>;

    WeightedGraph() = default;
    explicit WeightedGraph(int n);

    static WeightedGraph complete(int n, double weight = 1.0);
    static WeightedGraph from_dense(const Eigen::MatrixXd& w);

    int num_nodes() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const EdgeMap& edges() const { return edges_; }

    bool has_edge(EdgeKey e) const { return edges_.contains(e); }
    /// Weight of `e`, or 0 when absent.
    double weight(EdgeKey e) const;

    /// Inserts or overwrites; a weight <= kZeroWeight removes the entry.
    void set_weight(EdgeKey e, double w);

    /// Subtracts min(eps, w) from the edge weight; returns the amount removed.
    /// Throws MissingEdge when the edge is absent.
    double weaken(EdgeKey e, double eps);

    /// Incremented on every mutation.
    std::size_t version() const { return version_; }

    Eigen::MatrixXd adjacency() const;
    Eigen::VectorXd degrees() const;
    double max_degree_count() const;

private:
    void check_key(EdgeKey e) const;

    int n_ = 0;
    EdgeMap edges_;
    std::size_t version_ = 0;
};

/// L = diag(W1) - W, dense below kDenseThreshold nodes, sparse otherwise.
struct LaplacianView {
    int n = 0;
    std::optional<Eigen::MatrixXd> dense;
    std::optional<Eigen::SparseMatrix<double>> sparse;

    bool is_dense() const { return dense.has_value(); }
    Eigen::MatrixXd to_dense() const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
    Eigen::VectorXd diagonal() const;
};

LaplacianView build_laplacian(const WeightedGraph& g);
Eigen::MatrixXd dense_laplacian(const WeightedGraph& g);
Eigen::SparseMatrix<double> sparse_laplacian(const WeightedGraph& g);

/// Copy of `g` with edge weakened by eps (removed when the weight reaches zero).
WeightedGraph weaken_edge(const WeightedGraph& g, EdgeKey edge, double eps);

/// Observation matrix X (N x K) with cached Gram matrix Y = X X^T.
class ObservationSet {
public:
    ObservationSet() = default;
    explicit ObservationSet(Eigen::MatrixXd x);

    int dims() const { return static_cast<int>(x_.rows()); }
    int samples() const { return static_cast<int>(x_.cols()); }
    const Eigen::MatrixXd& x() const { return x_; }
    const Eigen::MatrixXd& gram() const { return gram_; }

private:
    Eigen::MatrixXd x_;
    Eigen::MatrixXd gram_;
};

Eigen::MatrixXd gram(const Eigen::MatrixXd& x);

bool is_connected(const WeightedGraph& g);

/// Connected components as sorted node lists, ordered by smallest member.
std::vector<std::vector<int>> connected_components(const WeightedGraph& g);

/// (e_m - e_n)(e_m - e_n)^T as a dense n x n matrix.
Eigen::MatrixXd edge_incidence_outer(int n, EdgeKey e);

} // namespace fsgl

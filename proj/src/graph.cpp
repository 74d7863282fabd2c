#include "fsgl/graph.hpp"

#include "fsgl/errors.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace fsgl {

WeightedGraph::WeightedGraph(int n) : n_(n) {
    if (n < 0) throw DataError("node count must be nonnegative");
}

WeightedGraph WeightedGraph::complete(int n, double weight) {
    WeightedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.set_weight({i, j}, weight);
    return g;
}

WeightedGraph WeightedGraph::from_dense(const Eigen::MatrixXd& w) {
    if (w.rows() != w.cols()) throw DataError("adjacency matrix must be square");
    WeightedGraph g(static_cast<int>(w.rows()));
    for (int i = 0; i < w.rows(); ++i) {
        for (int j = i + 1; j < w.cols(); ++j) {
            const double v = 0.5 * (w(i, j) + w(j, i));
            if (v < 0.0) throw DataError("negative edge weight");
            g.set_weight({i, j}, v);
        }
    }
    return g;
}

void WeightedGraph::check_key(EdgeKey e) const {
    if (e.m == e.n) throw DataError("self-loops are not allowed");
    if (e.m < 0 || e.n >= n_)
        throw DataError("edge (" + std::to_string(e.m) + "," + std::to_string(e.n) + ") out of range");
}

double WeightedGraph::weight(EdgeKey e) const {
    auto it = edges_.find(e);
    return it == edges_.end() ? 0.0 : it->second;
}

void WeightedGraph::set_weight(EdgeKey e, double w) {
    check_key(e);
    if (w < 0.0) throw DataError("negative edge weight");
    if (w <= kZeroWeight)
        edges_.erase(e);
    else
        edges_[e] = w;
    ++version_;
}

double WeightedGraph::weaken(EdgeKey e, double eps) {
    auto it = edges_.find(e);
    if (it == edges_.end())
        throw MissingEdge("edge (" + std::to_string(e.m) + "," + std::to_string(e.n) + ") not present");
    const double removed = std::min(eps, it->second);
    const double left = std::max(0.0, it->second - eps);
    if (left <= kZeroWeight)
        edges_.erase(it);
    else
        it->second = left;
    ++version_;
    return removed;
}

Eigen::MatrixXd WeightedGraph::adjacency() const {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& [e, v] : edges_) {
        w(e.m, e.n) = v;
        w(e.n, e.m) = v;
    }
    return w;
}

Eigen::VectorXd WeightedGraph::degrees() const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
    for (const auto& [e, v] : edges_) {
        d(e.m) += v;
        d(e.n) += v;
    }
    return d;
}

double WeightedGraph::max_degree_count() const {
    std::vector<int> count(static_cast<std::size_t>(n_), 0);
    for (const auto& [e, v] : edges_) {
        ++count[static_cast<std::size_t>(e.m)];
        ++count[static_cast<std::size_t>(e.n)];
    }
    return count.empty() ? 0.0 : *std::max_element(count.begin(), count.end());
}

Eigen::MatrixXd LaplacianView::to_dense() const {
    if (dense) return *dense;
    return Eigen::MatrixXd(*sparse);
}

Eigen::VectorXd LaplacianView::apply(const Eigen::VectorXd& x) const {
    if (dense) return *dense * x;
    return *sparse * x;
}

Eigen::MatrixXd LaplacianView::apply(const Eigen::MatrixXd& x) const {
    if (dense) return *dense * x;
    return *sparse * x;
}

Eigen::VectorXd LaplacianView::diagonal() const {
    if (dense) return dense->diagonal();
    return sparse->diagonal();
}

Eigen::MatrixXd dense_laplacian(const WeightedGraph& g) {
    const int n = g.num_nodes();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [e, w] : g.edges()) {
        l(e.m, e.m) += w;
        l(e.n, e.n) += w;
        l(e.m, e.n) -= w;
        l(e.n, e.m) -= w;
    }
    return l;
}

Eigen::SparseMatrix<double> sparse_laplacian(const WeightedGraph& g) {
    const int n = g.num_nodes();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(4 * g.num_edges());
    for (const auto& [e, w] : g.edges()) {
        triplets.emplace_back(e.m, e.m, w);
        triplets.emplace_back(e.n, e.n, w);
        triplets.emplace_back(e.m, e.n, -w);
        triplets.emplace_back(e.n, e.m, -w);
    }
    Eigen::SparseMatrix<double> l(n, n);
    l.setFromTriplets(triplets.begin(), triplets.end());
    l.makeCompressed();
    return l;
}

LaplacianView build_laplacian(const WeightedGraph& g) {
    LaplacianView view;
    view.n = g.num_nodes();
    if (g.num_nodes() <= kDenseThreshold)
        view.dense = dense_laplacian(g);
    else
        view.sparse = sparse_laplacian(g);
    return view;
}

WeightedGraph weaken_edge(const WeightedGraph& g, EdgeKey edge, double eps) {
    if (!(eps > 0.0)) throw DataError("weakening step must be positive");
    WeightedGraph out = g;
    out.weaken(edge, eps);
    return out;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& x) {
    if (x.cols() < 1) throw DataError("observation matrix needs at least one column");
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(x.rows(), x.rows());
    y.selfadjointView<Eigen::Lower>().rankUpdate(x);
    return y.selfadjointView<Eigen::Lower>();
}

ObservationSet::ObservationSet(Eigen::MatrixXd x) : x_(std::move(x)), gram_(fsgl::gram(x_)) {}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
    const int n = g.num_nodes();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [e, w] : g.edges()) {
        adj[static_cast<std::size_t>(e.m)].push_back(e.n);
        adj[static_cast<std::size_t>(e.n)].push_back(e.m);
    }
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (label[static_cast<std::size_t>(s)] >= 0) continue;
        const int id = static_cast<int>(comps.size());
        comps.emplace_back();
        std::queue<int> q;
        q.push(s);
        label[static_cast<std::size_t>(s)] = id;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            comps.back().push_back(u);
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (label[static_cast<std::size_t>(v)] < 0) {
                    label[static_cast<std::size_t>(v)] = id;
                    q.push(v);
                }
            }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

bool is_connected(const WeightedGraph& g) {
    if (g.num_nodes() <= 1) return true;
    return connected_components(g).size() == 1;
}

Eigen::MatrixXd edge_incidence_outer(int n, EdgeKey e) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    out(e.m, e.m) = 1.0;
    out(e.n, e.n) = 1.0;
    out(e.m, e.n) = -1.0;
    out(e.n, e.m) = -1.0;
    return out;
}

} // namespace fsgl

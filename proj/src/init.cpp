#include "fsgl/init.hpp"

#include "fsgl/errors.hpp"

#include <algorithm>
#include <string>

namespace fsgl {
namespace {

struct Candidate {
    EdgeKey edge;
    double value = 0.0;
    bool valid = false;
};

// Larger value wins; equal values go to the smaller pair.
bool preferred(double v, EdgeKey e, const Candidate& c) {
    if (!c.valid) return true;
    if (v != c.value) return v > c.value;
    return e < c.edge;
}

} // namespace

int default_budget(int n) {
    const long pairs = static_cast<long>(n) * (n - 1) / 2 - (n - 1);
    return static_cast<int>(std::clamp<long>(3L * n, 0, std::max(0L, pairs)));
}

WeightedGraph init_sparse_graph(const Eigen::MatrixXd& y, int b, InitTrace* trace) {
    const int n = static_cast<int>(y.rows());
    if (y.cols() != n) throw DataError("Gram matrix must be square");
    if (n < 2) throw DataError("sparse initialization needs at least two nodes");
    const long available = static_cast<long>(n) * (n - 1) / 2 - (n - 1);
    if (b < 0 || b > available)
        throw InvalidBudget("budget " + std::to_string(b) + " outside [0, " + std::to_string(available) + "]");

    WeightedGraph g(n);
    InitTrace local;

    Candidate first;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (preferred(y(i, j), {i, j}, first)) first = {{i, j}, y(i, j), true};
    g.set_weight(first.edge, 1.0);
    local.seed_pair = {first.edge.m, first.edge.n};

    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    std::vector<Candidate> frontier(static_cast<std::size_t>(n));
    auto attach = [&](int u) {
        in_tree[static_cast<std::size_t>(u)] = 1;
        for (int j = 0; j < n; ++j) {
            if (in_tree[static_cast<std::size_t>(j)]) continue;
            const EdgeKey e{u, j};
            auto& c = frontier[static_cast<std::size_t>(j)];
            if (preferred(y(u, j), e, c)) c = {e, y(u, j), true};
        }
    };
    attach(first.edge.m);
    attach(first.edge.n);

    for (int added = 2; added < n; ++added) {
        Candidate best;
        int node = -1;
        for (int j = 0; j < n; ++j) {
            const auto& c = frontier[static_cast<std::size_t>(j)];
            if (in_tree[static_cast<std::size_t>(j)] || !c.valid) continue;
            if (preferred(c.value, c.edge, best)) {
                best = c;
                node = j;
            }
        }
        g.set_weight(best.edge, 1.0);
        local.attachments.push_back({best.edge, node, best.value});
        attach(node);
    }

    if (b > 0) {
        std::vector<Candidate> rest;
        rest.reserve(static_cast<std::size_t>(available));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!g.has_edge({i, j})) rest.push_back({{i, j}, y(i, j), true});
        auto order = [](const Candidate& a, const Candidate& c) {
            if (a.value != c.value) return a.value > c.value;
            return a.edge < c.edge;
        };
        std::partial_sort(rest.begin(), rest.begin() + b, rest.end(), order);
        for (int i = 0; i < b; ++i) {
            g.set_weight(rest[static_cast<std::size_t>(i)].edge, 1.0);
            local.extra_edges.push_back(rest[static_cast<std::size_t>(i)].edge);
        }
    }
    if (trace) *trace = std::move(local);
    return g;
}

} // namespace fsgl

#include "fsgl/partition.hpp"

#include "fsgl/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>

namespace fsgl {
namespace {

constexpr double kDisconnectedTol = 1e-8;

// a/b < c/d for nonnegative integers with positive denominators.
bool ratio_less(std::size_t a, std::size_t b, std::size_t c, std::size_t d) { return a * d < c * b; }

CheegerCut make_cut(const WeightedGraph& g, std::vector<int> s) {
    std::sort(s.begin(), s.end());
    std::vector<char> in(static_cast<std::size_t>(g.num_nodes()), 0);
    for (int v : s) in[static_cast<std::size_t>(v)] = 1;
    CheegerCut cut;
    for (const auto& [e, w] : g.edges())
        if (in[static_cast<std::size_t>(e.m)] != in[static_cast<std::size_t>(e.n)]) cut.cut_edges.push_back(e);
    cut.ratio = static_cast<double>(cut.cut_edges.size()) / static_cast<double>(s.size());
    cut.s = std::move(s);
    return cut;
}

// Adjacency in compressed form: neighbours of v are targets[offsets[v] .. offsets[v+1]).
struct Adjacency {
    std::vector<int> offsets;
    std::vector<int> targets;
};

template <class Edges, class Index>
Adjacency compress(std::size_t n, const Edges& edges, Index idx) {
    Adjacency a;
    a.offsets.assign(n + 1, 0);
    for (const auto& e : edges) {
        ++a.offsets[static_cast<std::size_t>(idx(e.m)) + 1];
        ++a.offsets[static_cast<std::size_t>(idx(e.n)) + 1];
    }
    for (std::size_t v = 0; v < n; ++v) a.offsets[v + 1] += a.offsets[v];
    a.targets.resize(static_cast<std::size_t>(a.offsets[n]));
    std::vector<int> fill(a.offsets.begin(), a.offsets.end() - 1);
    for (const auto& e : edges) {
        const int u = idx(e.m), v = idx(e.n);
        a.targets[static_cast<std::size_t>(fill[static_cast<std::size_t>(u)]++)] = v;
        a.targets[static_cast<std::size_t>(fill[static_cast<std::size_t>(v)]++)] = u;
    }
    return a;
}

// Best prefix split of `order` (earliest on ties); returns its length.
std::size_t best_prefix(const std::vector<int>& order, const Adjacency& adj) {
    const std::size_t n = order.size();
    std::vector<char> in_prefix(n, 0);
    long cut = 0;
    std::size_t best_i = 0, best_cut = 0, best_size = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const auto u = static_cast<std::size_t>(order[i - 1]);
        for (int j = adj.offsets[u]; j < adj.offsets[u + 1]; ++j)
            cut += in_prefix[static_cast<std::size_t>(adj.targets[static_cast<std::size_t>(j)])] ? -1 : 1;
        in_prefix[u] = 1;
        const std::size_t small = std::min(i, n - i);
        if (best_i == 0 || ratio_less(static_cast<std::size_t>(cut), small, best_cut, best_size)) {
            best_i = i;
            best_cut = static_cast<std::size_t>(cut);
            best_size = small;
        }
    }
    return best_i;
}

std::vector<int> stable_order(std::span<const double> values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    });
    return order;
}

// Induced sub-problem: global node ids in sweep order plus the global keys of its edges.
struct SubGraph {
    std::vector<int> nodes;
    std::vector<EdgeKey> edges;
};

int find_root(std::vector<int>& parent, int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
        parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        v = parent[static_cast<std::size_t>(v)];
    }
    return v;
}

class Partitioner {
public:
    Partitioner(const WeightedGraph& g, const ScoringSnapshot& snap, const Eigen::MatrixXd& y,
                const SolverConfig& cfg)
        : g_(g), snap_(snap), y_(y), cfg_(cfg) {
        single_ = cfg;
        single_.threads = 1;
    }

    PartitionResult run(const SubGraph& sub, int depth) const {
        PartitionResult out;
        if (sub.edges.empty()) return out;
        const std::size_t size = sub.nodes.size();
        if (static_cast<int>(size) <= cfg_.v_min) {
            out.scan = scan_edges(snap_, y_, g_, sub.edges, single_);
            out.stats.leaves = 1;
            out.stats.max_depth = depth;
            return out;
        }

        std::vector<int> local(static_cast<std::size_t>(g_.num_nodes()), -1);
        for (std::size_t i = 0; i < size; ++i) local[static_cast<std::size_t>(sub.nodes[i])] = static_cast<int>(i);
        auto idx = [&](int v) { return local[static_cast<std::size_t>(v)]; };

        std::vector<int> parent(size);
        std::iota(parent.begin(), parent.end(), 0);
        std::size_t groups = size;
        for (const EdgeKey e : sub.edges) {
            const int a = find_root(parent, idx(e.m)), b = find_root(parent, idx(e.n));
            if (a != b) {
                parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
                --groups;
            }
        }
        if (groups > 1) {
            // Components in order of their first node in the sweep sequence.
            std::vector<int> label(size, -1), root_label(size, -1);
            std::vector<SubGraph> parts;
            for (std::size_t i = 0; i < size; ++i) {
                const int r = find_root(parent, static_cast<int>(i));
                if (root_label[static_cast<std::size_t>(r)] < 0) {
                    root_label[static_cast<std::size_t>(r)] = static_cast<int>(parts.size());
                    parts.emplace_back();
                }
                label[i] = root_label[static_cast<std::size_t>(r)];
                parts[static_cast<std::size_t>(label[i])].nodes.push_back(sub.nodes[i]);
            }
            for (const EdgeKey e : sub.edges) parts[static_cast<std::size_t>(label[static_cast<std::size_t>(idx(e.m))])].edges.push_back(e);
            out.stats.component_splits = 1;
            out.stats.max_depth = depth;
            for (const auto& part : parts) absorb(out, run(part, depth));
            return out;
        }

        const Adjacency adj = compress(size, sub.edges, idx);
        std::vector<int> order(size);
        std::iota(order.begin(), order.end(), 0);
        const std::size_t cut_at = best_prefix(order, adj);

        SubGraph first, second;
        first.edges.reserve(sub.edges.size());
        second.edges.reserve(sub.edges.size());
        first.nodes.assign(sub.nodes.begin(), sub.nodes.begin() + static_cast<std::ptrdiff_t>(cut_at));
        second.nodes.assign(sub.nodes.begin() + static_cast<std::ptrdiff_t>(cut_at), sub.nodes.end());
        std::vector<EdgeKey> crossing;
        for (const EdgeKey e : sub.edges) {
            const bool a = static_cast<std::size_t>(idx(e.m)) < cut_at;
            const bool b = static_cast<std::size_t>(idx(e.n)) < cut_at;
            if (a != b)
                crossing.push_back(e);
            else
                (a ? first : second).edges.push_back(e);
        }

        out.stats.splits = 1;
        out.stats.max_depth = depth + 1;
        out.stats.worst_split = static_cast<double>(std::max(first.nodes.size(), second.nodes.size())) /
                                static_cast<double>(size);
        if (first.edges.size() + second.edges.size() + crossing.size() != sub.edges.size())
            out.stats.edge_partition_violations = 1;

        PartitionResult left, right;
        const bool spawn = cfg_.threads > 1 && sub.edges.size() >= static_cast<std::size_t>(cfg_.parallel_grain);
        if (spawn) {
            auto fut = std::async(std::launch::async, [&] { return run(first, depth + 1); });
            right = run(second, depth + 1);
            left = fut.get();
        } else {
            left = run(first, depth + 1);
            right = run(second, depth + 1);
        }
        absorb(out, left);
        absorb(out, right);
        out.scan.merge(scan_edges(snap_, y_, g_, crossing, single_));
        return out;
    }

private:
    static void absorb(PartitionResult& into, const PartitionResult& from) {
        into.scan.merge(from.scan);
        auto& a = into.stats;
        const auto& b = from.stats;
        a.max_depth = std::max(a.max_depth, b.max_depth);
        a.worst_split = std::max(a.worst_split, b.worst_split);
        a.splits += b.splits;
        a.component_splits += b.component_splits;
        a.leaves += b.leaves;
        a.edge_partition_violations += b.edge_partition_violations;
    }

    const WeightedGraph& g_;
    const ScoringSnapshot& snap_;
    const Eigen::MatrixXd& y_;
    const SolverConfig& cfg_;
    SolverConfig single_;
};

} // namespace

CheegerCut brute_force_cheeger(const WeightedGraph& g) {
    const int n = g.num_nodes();
    if (n > 16) throw TooLarge("brute-force Cheeger constant limited to 16 nodes");
    if (n < 2) throw Error("Cheeger constant needs at least two nodes");

    std::vector<std::uint32_t> edge_masks;
    for (const auto& [e, w] : g.edges()) edge_masks.push_back((1u << e.m) | (1u << e.n));

    auto members = [n](std::uint32_t mask) {
        std::vector<int> s;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) s.push_back(v);
        return s;
    };

    std::uint32_t best_mask = 0;
    std::size_t best_cut = 0, best_size = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (2 * size > static_cast<std::size_t>(n)) continue;
        std::size_t cut = 0;
        for (auto em : edge_masks) cut += std::popcount(em & mask) == 1;
        bool take = best_mask == 0 || ratio_less(cut, size, best_cut, best_size);
        if (!take && !ratio_less(best_cut, best_size, cut, size)) {
            take = size < best_size || (size == best_size && members(mask) < members(best_mask));
        }
        if (take) {
            best_mask = mask;
            best_cut = cut;
            best_size = size;
        }
    }
    return make_cut(g, members(best_mask));
}

CheegerCut sweep_cut(const WeightedGraph& g, std::span<const double> values) {
    const int n = g.num_nodes();
    if (n < 2) throw Error("sweep cut needs at least two nodes");
    if (static_cast<int>(values.size()) != n) throw Error("sweep values do not match node count");

    const std::vector<int> order = stable_order(values);
    const auto edges = edge_list(g);
    const std::size_t best_i = best_prefix(order, compress(static_cast<std::size_t>(n), edges, [](int v) { return v; }));

    std::vector<int> s;
    if (best_i <= static_cast<std::size_t>(n) - best_i)
        s.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_i));
    else
        s.assign(order.begin() + static_cast<std::ptrdiff_t>(best_i), order.end());
    return make_cut(g, std::move(s));
}

CheegerCut approx_cheeger_cut(const WeightedGraph& g, const SpectralState& state) {
    if (!(state.fiedler_value > kDisconnectedTol)) throw Disconnected("lambda_2 <= tol: graph is disconnected");
    const auto& v = state.fiedler_vector;
    return sweep_cut(g, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

PartitionResult partition_select(const WeightedGraph& g, const SpectralState& state, const ScoringSnapshot& snap,
                                 const Eigen::MatrixXd& y, const SolverConfig& cfg) {
    Eigen::VectorXd v2 = state.fiedler_vector;
    if (v2.size() != g.num_nodes()) {
        EigenOptions opts;
        opts.tol = cfg.eig_tol;
        opts.max_iters = cfg.eig_max_iters;
        opts.seed = cfg.seed;
        v2 = smallest_eigenpairs(build_laplacian(g), std::min(2, g.num_nodes()), cfg.alpha, opts).fiedler_vector;
    }
    SubGraph all;
    all.nodes = stable_order(std::span<const double>(v2.data(), static_cast<std::size_t>(v2.size())));
    all.edges = edge_list(g);
    return Partitioner(g, snap, y, cfg).run(all, 0);
}

} // namespace fsgl

#include "fsgl/greedy.hpp"

#include "fsgl/errors.hpp"
#include "fsgl/partition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>

namespace fsgl {

bool better_delta(const EdgeDelta& a, const EdgeDelta& b) {
    if (a.grad_h != b.grad_h) return a.grad_h < b.grad_h;
    return a.edge < b.edge;
}

void ScanResult::merge(const ScanResult& other) {
    scored += other.scored;
    ineligible += other.ineligible;
    if (other.best && (!best || better_delta(*other.best, *best))) best = other.best;
}

namespace {

ScanResult scan_range(const ScoringSnapshot& snap, const Eigen::MatrixXd& y, const WeightedGraph& g,
                      std::span<const EdgeKey> edges, const SolverConfig& cfg) {
    ScanResult out;
    for (const EdgeKey e : edges) {
        try {
            EdgeDelta d = edge_gradient(snap, y, g, e, cfg);
            ++out.scored;
            if (!out.best || better_delta(d, *out.best)) out.best = d;
        } catch (const StepTooLarge&) {
            ++out.ineligible;
        }
    }
    return out;
}

} // namespace

ScanResult scan_edges(const ScoringSnapshot& snap, const Eigen::MatrixXd& y, const WeightedGraph& g,
                      std::span<const EdgeKey> edges, const SolverConfig& cfg) {
    const std::size_t workers = static_cast<std::size_t>(std::max(1, cfg.threads));
    if (workers == 1 || edges.size() <= static_cast<std::size_t>(std::max(0, cfg.parallel_grain)))
        return scan_range(snap, y, g, edges, cfg);

    const std::size_t chunk = (edges.size() + workers - 1) / workers;
    std::vector<std::future<ScanResult>> parts;
    for (std::size_t begin = chunk; begin < edges.size(); begin += chunk) {
        const auto sub = edges.subspan(begin, std::min(chunk, edges.size() - begin));
        parts.push_back(std::async(std::launch::async, [&, sub] { return scan_range(snap, y, g, sub, cfg); }));
    }
    ScanResult out = scan_range(snap, y, g, edges.first(std::min(chunk, edges.size())), cfg);
    for (auto& f : parts) out.merge(f.get());
    return out;
}

std::vector<EdgeKey> edge_list(const WeightedGraph& g) {
    std::vector<EdgeKey> out;
    out.reserve(g.num_edges());
    for (const auto& [e, w] : g.edges()) out.push_back(e);
    return out;
}

ScanResult scan_all_edges(const ScoringSnapshot& snap, const Eigen::MatrixXd& y, const WeightedGraph& g,
                          const SolverConfig& cfg) {
    const auto edges = edge_list(g);
    return scan_edges(snap, y, g, edges, cfg);
}

std::optional<EdgeDelta> greedy_step(const WeightedGraph& g, const Eigen::MatrixXd& y, const ScoringSnapshot& snap,
                                     const SolverConfig& cfg) {
    auto scan = scan_all_edges(snap, y, g, cfg);
    if (scan.best && scan.best->grad_h < 0.0) return scan.best;
    return std::nullopt;
}

int retained_pairs(const SolverConfig& cfg, int n, int samples) {
    const int wanted = cfg.num_eigenpairs > 0 ? cfg.num_eigenpairs : samples;
    return std::min(n, std::max(3, wanted));
}

void SolveTrace::write_csv(std::ostream& os) const {
    const auto old = os.precision(17);
    os << "iter,m,n,grad_h,objective,lambda2,edges,ms\n";
    for (const auto& r : records)
        os << r.iter << ',' << r.edge.m << ',' << r.edge.n << ',' << r.grad_h << ',' << r.objective << ','
           << r.lambda2 << ',' << r.edges << ',' << r.ms << '\n';
    os.precision(old);
}

SolveResult run_solver(const WeightedGraph& g0, const ObservationSet& obs, const SolverConfig& cfg) {
    cfg.validate();
    if (obs.dims() != g0.num_nodes()) throw DataError("observation dimension does not match node count");
    if (g0.num_nodes() < 2) throw DataError("need at least two nodes");
    if (!is_connected(g0)) throw Disconnected("initial graph is not connected");

    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const Eigen::MatrixXd y = scoring_gram(obs, cfg);
    const int k = retained_pairs(cfg, g0.num_nodes(), obs.samples());

    SolveResult result{g0, {}};
    WeightedGraph& g = result.graph;
    SolveTrace& trace = result.trace;
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    trace.initial_objective = cfg.objective_interval > 0 ? objective_value(g, y, cfg) : nan;

    std::optional<ScoringSnapshot> snap;
    int since_refresh = 0;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        if (!snap || since_refresh >= cfg.refresh_interval || g.num_edges() == 0) {
            const Eigen::MatrixXd* warm = snap ? &snap->spectral.eigvecs : nullptr;
            ScoringSnapshot fresh = make_snapshot(g, cfg, k, warm);
            snap = std::move(fresh);
            since_refresh = 0;
            ++trace.refreshes;
            trace.eig_iterations += snap->spectral.iterations;
        }
        if (g.num_edges() == 0) {
            trace.converged = true;
            break;
        }

        std::optional<EdgeDelta> chosen;
        if (cfg.solver_kind == SolverKind::recursive) {
            auto sel = partition_select(g, snap->spectral, *snap, y, cfg);
            trace.ineligible += sel.scan.ineligible;
            if (sel.scan.best && sel.scan.best->grad_h < 0.0) chosen = sel.scan.best;
        } else {
            auto scan = scan_all_edges(*snap, y, g, cfg);
            trace.ineligible += scan.ineligible;
            if (scan.best && scan.best->grad_h < 0.0) chosen = scan.best;
        }
        if (!chosen) {
            trace.converged = true;
            break;
        }

        g.weaken(chosen->edge, cfg.epsilon);
        ++since_refresh;

        TraceRecord rec;
        rec.iter = iter;
        rec.edge = chosen->edge;
        rec.grad_h = chosen->grad_h;
        rec.lambda2 = snap->spectral.fiedler_value;
        rec.edges = g.num_edges();
        rec.objective = (cfg.objective_interval > 0 && (iter + 1) % cfg.objective_interval == 0)
                            ? objective_value(g, y, cfg)
                            : nan;
        rec.ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
        trace.records.push_back(rec);
    }
    return result;
}

SolveResult run_greedy(const WeightedGraph& g0, const ObservationSet& obs, SolverConfig cfg) {
    cfg.solver_kind = SolverKind::greedy;
    return run_solver(g0, obs, cfg);
}

} // namespace fsgl

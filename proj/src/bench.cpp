#include "fsgl/bench.hpp"

#include "fsgl/errors.hpp"
#include "fsgl/init.hpp"
#include "fsgl/objective.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace fsgl {

double relative_error(const WeightedGraph& w_hat, const WeightedGraph& w_star) {
    if (w_hat.num_nodes() != w_star.num_nodes()) throw DataError("graphs have different node counts");
    const Eigen::MatrixXd ref = w_star.adjacency();
    const double denom = ref.norm();
    if (denom == 0.0) throw ZeroReference("reference graph has no edges");
    return (w_hat.adjacency() - ref).norm() / denom;
}

std::string to_string(StartKind kind) { return kind == StartKind::dense ? "dense" : "sparse"; }

StartKind parse_start_kind(const std::string& s) {
    if (s == "dense") return StartKind::dense;
    if (s == "sparse") return StartKind::sparse;
    throw Error("unknown start '" + s + "'");
}

StartKind default_start(SolverKind kind) { return kind == SolverKind::greedy ? StartKind::dense : StartKind::sparse; }

WeightedGraph initial_graph(const ObservationSet& obs, const SolverConfig& cfg, StartKind start) {
    const int n = obs.dims();
    if (start == StartKind::dense) return WeightedGraph::complete(n);
    const int b = cfg.budget_b < 0 ? default_budget(n) : cfg.budget_b;
    return init_sparse_graph(obs.gram(), b);
}

std::string to_string(Generator g) { return g == Generator::gmm ? "gmm" : "mvt"; }

Generator parse_generator(const std::string& s) {
    if (s == "gmm") return Generator::gmm;
    if (s == "mvt") return Generator::mvt;
    throw Error("unknown generator '" + s + "'");
}

ObservationSet sample_observations(const GroundTruth& gt, int k, const SamplerOptions& opts, std::uint64_t seed) {
    if (opts.generator == Generator::gmm) return sample_gmm(gt, k, opts.components, opts.mean_scale, seed);
    return sample_mvt(gt, k, opts.dof, seed);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

int worker_limit(int requested) {
    int limit = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("FSGL_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) limit = std::min(limit, cap);
    }
    return std::max(1, limit);
}

namespace {

struct Cell {
    std::size_t gen_index = 0;
    std::size_t ratio_index = 0;
    int trial = 0;
    SolverKind solver = SolverKind::greedy;
};

BenchRow run_cell(const BenchOptions& opts, const Cell& cell) {
    BenchRow row;
    row.generator = opts.generators[cell.gen_index];
    row.solver = cell.solver;
    row.ratio = opts.ratios[cell.ratio_index];
    row.trial = cell.trial;
    try {
        // Ground truth is shared by every ratio and generator of one trial.
        const auto gt = gen_ground_truth(opts.n, opts.density, opts.rho,
                                         derive_seed(opts.seed, 1, static_cast<std::uint64_t>(cell.trial)));
        const int k = std::max(1, static_cast<int>(std::lround(row.ratio * opts.n)));
        SamplerOptions sampler = opts.sampler;
        sampler.generator = row.generator;
        const auto obs = sample_observations(
            gt, k, sampler,
            derive_seed(opts.seed, 2 + cell.gen_index, cell.ratio_index, static_cast<std::uint64_t>(cell.trial)));

        SolverConfig cfg = opts.solver;
        cfg.solver_kind = cell.solver;
        cfg.seed = derive_seed(opts.seed, 9, cell.ratio_index, static_cast<std::uint64_t>(cell.trial));
        const WeightedGraph g0 = initial_graph(obs, cfg, default_start(cell.solver));
        row.init_edges = g0.num_edges();

        const auto start = std::chrono::steady_clock::now();
        const SolveResult res = run_solver(g0, obs, cfg);
        row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        row.re = relative_error(res.graph, gt.w_star);
        row.lambda2 = fiedler_value(res.graph);
        row.edges = res.graph.num_edges();
        row.iterations = static_cast<int>(res.trace.records.size());
        row.converged = res.trace.converged;
    } catch (const std::exception& e) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        row.ok = false;
        row.error = e.what();
        row.re = row.lambda2 = row.ms = nan;
    }
    return row;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace

BenchReport run_benchmark(const BenchOptions& opts) {
    if (opts.n < 2) throw Error("benchmark needs n >= 2");
    if (opts.trials < 1) throw Error("benchmark needs at least one trial");
    opts.solver.validate();

    std::vector<Cell> cells;
    for (std::size_t gi = 0; gi < opts.generators.size(); ++gi)
        for (SolverKind s : opts.solvers)
            for (std::size_t ri = 0; ri < opts.ratios.size(); ++ri)
                for (int t = 0; t < opts.trials; ++t) cells.push_back({gi, ri, t, s});

    BenchReport report;
    report.n = opts.n;
    report.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) report.rows[i] = run_cell(opts, cells[i]);
    };
    const int workers = std::min<int>(worker_limit(opts.workers), static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return report;
}

std::vector<BenchSummary> BenchReport::summarize() const {
    using Key = std::tuple<int, int, double>;
    std::map<Key, std::vector<const BenchRow*>> groups;
    std::vector<Key> order;
    for (const auto& r : rows) {
        const Key key{static_cast<int>(r.generator), static_cast<int>(r.solver), r.ratio};
        if (!groups.contains(key)) order.push_back(key);
        groups[key].push_back(&r);
    }
    std::vector<BenchSummary> out;
    for (const auto& key : order) {
        const auto& members = groups[key];
        BenchSummary s;
        s.generator = members.front()->generator;
        s.solver = members.front()->solver;
        s.ratio = members.front()->ratio;
        s.trials = static_cast<int>(members.size());
        std::vector<double> re, l2, edges, ms;
        for (const auto* r : members) {
            if (!r->ok) {
                ++s.failed;
                continue;
            }
            re.push_back(r->re);
            l2.push_back(r->lambda2);
            edges.push_back(static_cast<double>(r->edges));
            ms.push_back(r->ms);
        }
        s.re_mean = mean_of(re);
        s.re_std = std_of(re);
        s.lambda2_mean = mean_of(l2);
        s.edges_mean = mean_of(edges);
        s.ms_mean = mean_of(ms);
        s.ms_std = std_of(ms);
        out.push_back(s);
    }
    return out;
}

void BenchReport::write_rows_csv(std::ostream& os) const {
    const auto old = os.precision(10);
    os << "generator,solver,ratio,trial,re,lambda2,edges,ms\n";
    for (const auto& r : rows)
        os << to_string(r.generator) << ',' << to_string(r.solver) << ',' << r.ratio << ',' << r.trial << ','
           << r.re << ',' << r.lambda2 << ',' << r.edges << ',' << r.ms << '\n';
    os.precision(old);
}

void BenchReport::write_summary_csv(std::ostream& os) const {
    const auto old = os.precision(10);
    os << "generator,solver,ratio,trials,failed,re_mean,re_std,lambda2_mean,edges_mean,ms_mean,ms_std\n";
    for (const auto& s : summarize())
        os << to_string(s.generator) << ',' << to_string(s.solver) << ',' << s.ratio << ',' << s.trials << ','
           << s.failed << ',' << s.re_mean << ',' << s.re_std << ',' << s.lambda2_mean << ',' << s.edges_mean
           << ',' << s.ms_mean << ',' << s.ms_std << '\n';
    os.precision(old);
}

void BenchReport::write_table(std::ostream& os) const {
    const auto flags = os.flags();
    os << std::left << std::setw(10) << "generator" << std::setw(11) << "solver" << std::right << std::setw(6)
       << "K/N" << std::setw(18) << "RE" << std::setw(12) << "lambda2" << std::setw(9) << "edges" << std::setw(20)
       << "time (ms)" << std::setw(8) << "failed" << '\n';
    os << std::fixed;
    for (const auto& s : summarize()) {
        std::ostringstream re, ms;
        re << std::fixed << std::setprecision(4) << s.re_mean << " +- " << s.re_std;
        ms << std::fixed << std::setprecision(1) << s.ms_mean << " +- " << s.ms_std;
        os << std::left << std::setw(10) << to_string(s.generator) << std::setw(11) << to_string(s.solver)
           << std::right << std::setprecision(2) << std::setw(6) << s.ratio << std::setw(18) << re.str()
           << std::setprecision(4) << std::setw(12) << s.lambda2_mean << std::setprecision(1) << std::setw(9)
           << s.edges_mean << std::setw(20) << ms.str() << std::setw(8) << s.failed << '\n';
    }
    os.flags(flags);
}

void BenchReport::write_runtime_table(std::ostream& os) const {
    std::vector<double> greedy, recursive;
    for (const auto& r : rows) {
        if (!r.ok) continue;
        (r.solver == SolverKind::greedy ? greedy : recursive).push_back(r.ms / 1000.0);
    }
    auto cell = [](const std::vector<double>& v) {
        std::ostringstream s;
        if (v.empty())
            s << "-";
        else
            s << std::fixed << std::setprecision(3) << mean_of(v);
        return s.str();
    };
    const auto flags = os.flags();
    os << "Average runtime in seconds\n";
    os << std::left << std::setw(6) << "N" << std::right << std::setw(14) << "Greedy (s)" << std::setw(32)
       << "Sparse init. + recursion (s)" << '\n';
    os << std::left << std::setw(6) << n << std::right << std::setw(14) << cell(greedy) << std::setw(32)
       << cell(recursive) << '\n';
    os.flags(flags);
}

} // namespace fsgl

#pragma once

#include "fsgl/config.hpp"
#include "fsgl/datagen.hpp"
#include "fsgl/graph.hpp"
#include "fsgl/greedy.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fsgl {

/// ||W_hat - W_star||_F / ||W_star||_F over the dense adjacency matrices.
/// Throws ZeroReference when W_star has no edges, DataError on size mismatch.
double relative_error(const WeightedGraph& w_hat, const WeightedGraph& w_star);

enum class StartKind { dense, sparse };

std::string to_string(StartKind kind);
StartKind parse_start_kind(const std::string& s);

/// Greedy starts from the complete unit-weight graph, recursive from the sparse initializer.
StartKind default_start(SolverKind kind);

/// Complete unit graph, or init_sparse_graph(Y, B) with B from cfg (3N when negative).
WeightedGraph initial_graph(const ObservationSet& obs, const SolverConfig& cfg, StartKind start);

enum class Generator { gmm, mvt };

std::string to_string(Generator g);
Generator parse_generator(const std::string& s);

struct SamplerOptions {
    Generator generator = Generator::gmm;
    int components = 3;
    double mean_scale = 1.0;
    double dof = 3.0;
};

ObservationSet sample_observations(const GroundTruth& gt, int k, const SamplerOptions& opts, std::uint64_t seed);

/// Deterministic 64-bit stream derivation (splitmix64 over the inputs).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

struct BenchOptions {
    int n = 30;
    std::vector<double> ratios{0.2, 0.4, 0.6, 0.8, 1.0};
    int trials = 10;
    std::vector<Generator> generators{Generator::gmm, Generator::mvt};
    std::vector<SolverKind> solvers{SolverKind::greedy, SolverKind::recursive};
    double density = kDefaultDensity;
    double rho = kDefaultRho;
    SamplerOptions sampler;
    std::uint64_t seed = 0;
    int workers = 1;
    SolverConfig solver;
};

struct BenchRow {
    Generator generator = Generator::gmm;
    SolverKind solver = SolverKind::greedy;
    double ratio = 0.0;
    int trial = 0;
    double re = 0.0;
    double lambda2 = 0.0;
    std::size_t edges = 0;
    std::size_t init_edges = 0;
    double ms = 0.0;
    int iterations = 0;
    bool converged = false;
    bool ok = true;
    std::string error;
};

struct BenchSummary {
    Generator generator = Generator::gmm;
    SolverKind solver = SolverKind::greedy;
    double ratio = 0.0;
    int trials = 0;
    int failed = 0;
    double re_mean = 0.0, re_std = 0.0;
    double lambda2_mean = 0.0;
    double edges_mean = 0.0;
    double ms_mean = 0.0, ms_std = 0.0;
};

struct BenchReport {
    int n = 0;
    std::vector<BenchRow> rows;

    std::vector<BenchSummary> summarize() const;
    /// Per-run rows: `generator,solver,ratio,trial,re,lambda2,edges,ms`.
    void write_rows_csv(std::ostream& os) const;
    /// One row per (generator, solver, ratio) with mean and std.
    void write_summary_csv(std::ostream& os) const;
    void write_table(std::ostream& os) const;
    /// Mean runtime in seconds per solver, laid out as N | Greedy | Sparse init + recursion.
    void write_runtime_table(std::ostream& os) const;
};

/// Runs every (ratio, trial, generator, solver) cell; failures are recorded, not thrown.
BenchReport run_benchmark(const BenchOptions& opts);

/// Worker count from FSGL_THREADS (if set) capped by hardware concurrency, at least 1.
int worker_limit(int requested);

} // namespace fsgl

#include "fsgl/cli.hpp"

#include "fsgl/bench.hpp"
#include "fsgl/datagen.hpp"
#include "fsgl/errors.hpp"
#include "fsgl/io.hpp"
#include "fsgl/objective.hpp"
#include "fsgl/partition.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace fsgl {
namespace {

struct SolverFlags {
    SolverConfig cfg;
    std::string solver = "greedy";
    std::string start;
    int budget = -1;
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
    app->add_option("--epsilon", f.cfg.epsilon, "Weakening step size")->capture_default_str();
    app->add_option("--alpha", f.cfg.alpha, "Log-det shift alpha")->capture_default_str();
    app->add_option("--gamma", f.cfg.gamma, "Fiedler weight")->capture_default_str();
    app->add_option("--mu", f.cfg.mu, "Sparsity weight")->capture_default_str();
    app->add_option("--budget", f.budget, "Extra initialization edges B (default 3N)");
    app->add_option("--vmin", f.cfg.v_min, "Leaf size of the recursive partition")->capture_default_str();
    app->add_option("--solver", f.solver, "Edge selection: greedy | recursive")
        ->check(CLI::IsMember({"greedy", "recursive"}))
        ->capture_default_str();
    app->add_option("--refresh", f.cfg.refresh_interval, "Spectral refresh interval (accepted steps)")
        ->capture_default_str();
    app->add_option("--max-iters", f.cfg.max_iters, "Iteration cap")->capture_default_str();
    app->add_option("--eigenpairs", f.cfg.num_eigenpairs, "Retained eigenpairs (0 = number of samples)");
    app->add_option("--eig-tol", f.cfg.eig_tol, "Eigensolver tolerance")->capture_default_str();
    app->add_flag("--exact-logdet", f.cfg.exact_logdet, "Score log-det with the exact inverse");
    app->add_option("--scale-gram", f.cfg.scale_gram, "Divide the Gram matrix by the sample count (true/false)");
}

void finish_solver_flags(SolverFlags& f) {
    f.cfg.solver_kind = parse_solver_kind(f.solver);
    f.cfg.budget_b = f.budget;
}

// `--config FILE` lines become `--key=value` tokens appended after the user's
// arguments, so with take-last semantics the file wins over flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) throw DataError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        if (key.empty()) throw DataError("config line " + std::to_string(line_no) + ": empty key");
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

int run_gen(const std::string& output, const std::string& truth, int n, int k, const SamplerOptions& sampler,
            double density, double rho, std::uint64_t seed, std::ostream& out) {
    const auto gt = gen_ground_truth(n, density, rho, derive_seed(seed, 1));
    const auto obs = sample_observations(gt, k, sampler, derive_seed(seed, 2));
    io::write_matrix_csv(output, obs.x());
    if (!truth.empty()) io::write_edge_list(truth, gt.w_star);
    out << "wrote X (" << n << " x " << k << ") to " << output;
    if (!truth.empty()) out << ", ground truth (" << gt.w_star.num_edges() << " edges) to " << truth;
    out << '\n';
    return kExitOk;
}

int run_solve(const std::string& input, const std::string& output, const std::string& trace_path,
              const std::string& truth, const std::string& init_graph, SolverFlags& flags, std::ostream& out) {
    finish_solver_flags(flags);
    const ObservationSet obs(io::read_matrix(input));
    WeightedGraph g0;
    std::string start_desc;
    if (!init_graph.empty()) {
        g0 = io::read_graph(init_graph, obs.dims());
        if (g0.num_nodes() != obs.dims()) throw DataError("initial graph size does not match observations");
        start_desc = init_graph;
    } else {
        const StartKind start = flags.start.empty() ? default_start(flags.cfg.solver_kind) : parse_start_kind(flags.start);
        g0 = initial_graph(obs, flags.cfg, start);
        start_desc = to_string(start);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = run_solver(g0, obs, flags.cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (!output.empty()) io::write_edge_list(output, res.graph);
    if (!trace_path.empty()) {
        std::ofstream tf(trace_path);
        if (!tf) throw DataError("cannot write '" + trace_path + "'");
        res.trace.write_csv(tf);
    }
    out << "solver=" << to_string(flags.cfg.solver_kind) << " start=" << start_desc << " n=" << obs.dims()
        << " k=" << obs.samples() << '\n';
    out << "iterations=" << res.trace.records.size() << " converged=" << (res.trace.converged ? "yes" : "no")
        << " edges=" << g0.num_edges() << "->" << res.graph.num_edges() << " time_ms=" << std::fixed
        << std::setprecision(2) << ms << '\n';
    out.unsetf(std::ios::fixed);
    out << std::setprecision(8) << "lambda2=" << fiedler_value(res.graph)
        << " objective=" << objective_value(res.graph, scoring_gram(obs, flags.cfg), flags.cfg) << '\n';
    if (!truth.empty()) {
        const auto w_star = io::read_graph(truth, obs.dims());
        out << "relative_error=" << relative_error(res.graph, w_star) << '\n';
    }
    if (output.empty()) io::write_edge_list(out, res.graph);
    return kExitOk;
}

int run_cheeger_check(int max_n, int trials, double density, std::uint64_t seed, std::ostream& out) {
    if (max_n < 2 || max_n > 16) throw Error("--n must lie in [2, 16] for brute-force enumeration");
    int violations = 0;
    out << "trial,n,edges,lambda2,phi,upper,sweep_ratio,ok\n";
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + static_cast<int>(derive_seed(seed, 3, static_cast<std::uint64_t>(t)) % static_cast<std::uint64_t>(max_n - 1));
        const auto g = random_connected_unit_graph(n, density, derive_seed(seed, 4, static_cast<std::uint64_t>(t)));
        const LaplacianView l = build_laplacian(g);
        const SpectralState s = smallest_eigenpairs(l, n, 1.0);
        const double lambda2 = s.fiedler_value;
        const double phi = brute_force_cheeger(g).ratio;
        const double upper = std::sqrt(2.0 * lambda2 * g.max_degree_count());
        const double sweep = approx_cheeger_cut(g, s).ratio;
        constexpr double slack = 1e-9;
        const bool ok = lambda2 / 2.0 <= phi + slack && phi <= upper + slack && sweep >= lambda2 / 2.0 - slack;
        if (!ok) ++violations;
        out << t << ',' << n << ',' << g.num_edges() << ',' << lambda2 << ',' << phi << ',' << upper << ','
            << sweep << ',' << (ok ? 1 : 0) << '\n';
    }
    out << "# " << trials - violations << "/" << trials << " graphs satisfy lambda2/2 <= phi <= sqrt(2 lambda2 dmax)\n";
    return violations == 0 ? kExitOk : kExitDataError;
}

} // namespace

int cli_main(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fiedler-regularized sparse graph learning"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    // gen
    int gen_n = 30, gen_k = 6;
    std::string gen_generator = "gmm", gen_output, gen_truth;
    SamplerOptions sampler;
    double density = kDefaultDensity, rho = kDefaultRho;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "Generate a ground-truth graph and observations");
    gen->add_option("--n", gen_n, "Number of nodes")->capture_default_str();
    gen->add_option("--k", gen_k, "Number of samples")->capture_default_str();
    gen->add_option("--generator", gen_generator, "gmm | mvt")->check(CLI::IsMember({"gmm", "mvt"}))->capture_default_str();
    gen->add_option("--dof", sampler.dof, "Student-t degrees of freedom")->capture_default_str();
    gen->add_option("--components", sampler.components, "GMM components")->capture_default_str();
    gen->add_option("--mean-scale", sampler.mean_scale, "GMM mean scale")->capture_default_str();
    gen->add_option("--density", density, "Edge probability of the ground truth")->capture_default_str();
    gen->add_option("--rho", rho, "Precision shift rho")->capture_default_str();
    gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
    gen->add_option("--output", gen_output, "X as CSV (rows = nodes, columns = samples)")->required();
    gen->add_option("--truth", gen_truth, "Ground-truth edge list CSV");

    // solve
    SolverFlags solve_flags;
    std::string solve_input, solve_output, solve_trace, solve_truth, solve_init;
    auto* solve = app.add_subcommand("solve", "Learn a graph from observations");
    solve->add_option("--input", solve_input, "X as CSV or Matrix Market (.mtx)")->required();
    solve->add_option("--output", solve_output, "Learned edge list CSV (stdout if omitted)");
    solve->add_option("--trace", solve_trace, "Per-iteration trace CSV");
    solve->add_option("--truth", solve_truth, "Ground-truth edge list for the relative error");
    solve->add_option("--init-graph", solve_init, "Initial graph (edge list CSV or .mtx)");
    solve->add_option("--start", solve_flags.start, "dense | sparse (default by solver)")
        ->check(CLI::IsMember({"dense", "sparse"}));
    solve->add_option("--seed", solve_flags.cfg.seed, "RNG seed")->capture_default_str();
    solve->add_option("--threads", solve_flags.cfg.threads, "Scoring threads")->capture_default_str();
    add_solver_flags(solve, solve_flags);

    // bench
    SolverFlags bench_flags;
    BenchOptions bench_opts;
    std::vector<std::string> bench_generators{"gmm", "mvt"}, bench_solvers{"greedy", "recursive"};
    std::string bench_output, bench_summary;
    int bench_threads = 0;
    auto* bench = app.add_subcommand("bench", "Sweep sample ratios and compare solvers");
    bench->add_option("--n", bench_opts.n, "Number of nodes")->capture_default_str();
    bench->add_option("--trials", bench_opts.trials, "Trials per cell")->capture_default_str();
    bench->add_option("--ratios", bench_opts.ratios, "Sample ratios K/N")->delimiter(',')->capture_default_str();
    bench->add_option("--generator", bench_generators, "Generators")->delimiter(',')->capture_default_str();
    bench->add_option("--solvers", bench_solvers, "Solvers")->delimiter(',')->capture_default_str();
    bench->add_option("--dof", bench_opts.sampler.dof, "Student-t degrees of freedom")->capture_default_str();
    bench->add_option("--components", bench_opts.sampler.components, "GMM components")->capture_default_str();
    bench->add_option("--density", bench_opts.density, "Ground-truth edge probability")->capture_default_str();
    bench->add_option("--seed", bench_opts.seed, "RNG seed")->capture_default_str();
    bench->add_option("--threads", bench_threads, "Concurrent cells (default: hardware, capped by FSGL_THREADS)");
    bench->add_option("--output", bench_output, "Per-run metrics CSV");
    bench->add_option("--summary", bench_summary, "Per-cell summary CSV");
    add_solver_flags(bench, bench_flags);
    bench->get_option("--solver")->description("Ignored by bench; use --solvers");

    // cheeger-check
    int cc_n = 10, cc_trials = 100;
    double cc_density = 0.4;
    std::uint64_t cc_seed = 0;
    auto* cheeger = app.add_subcommand("cheeger-check", "Verify Cheeger's inequality on random small graphs");
    cheeger->add_option("--n", cc_n, "Largest graph size (<= 16)")->capture_default_str();
    cheeger->add_option("--trials", cc_trials, "Number of graphs")->capture_default_str();
    cheeger->add_option("--density", cc_density, "Edge probability")->capture_default_str();
    cheeger->add_option("--seed", cc_seed, "RNG seed")->capture_default_str();

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    }

    try {
        if (*gen) {
            sampler.generator = parse_generator(gen_generator);
            return run_gen(gen_output, gen_truth, gen_n, gen_k, sampler, density, rho, seed, out);
        }
        if (*solve) return run_solve(solve_input, solve_output, solve_trace, solve_truth, solve_init, solve_flags, out);
        if (*bench) {
            finish_solver_flags(bench_flags);
            bench_opts.solver = bench_flags.cfg;
            bench_opts.generators.clear();
            for (const auto& g : bench_generators) bench_opts.generators.push_back(parse_generator(g));
            bench_opts.solvers.clear();
            for (const auto& s : bench_solvers) bench_opts.solvers.push_back(parse_solver_kind(s));
            bench_opts.workers = bench_threads;
            const BenchReport report = run_benchmark(bench_opts);
            if (!bench_output.empty()) {
                std::ofstream f(bench_output);
                if (!f) throw DataError("cannot write '" + bench_output + "'");
                report.write_rows_csv(f);
            } else {
                report.write_rows_csv(out);
                out << '\n';
            }
            if (!bench_summary.empty()) {
                std::ofstream f(bench_summary);
                if (!f) throw DataError("cannot write '" + bench_summary + "'");
                report.write_summary_csv(f);
            }
            report.write_table(out);
            out << '\n';
            report.write_runtime_table(out);
            return kExitOk;
        }
        if (*cheeger) return run_cheeger_check(cc_n, cc_trials, cc_density, cc_seed, out);
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const ConvergenceFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const Disconnected& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace fsgl

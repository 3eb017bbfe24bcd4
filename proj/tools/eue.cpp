#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "eue/bounds.hpp"
#include "eue/exact.hpp"
#include "eue/experiment.hpp"
#include "eue/graph.hpp"
#include "eue/montecarlo.hpp"

namespace {

using namespace eue;

struct GraphOpts {
    std::string graph_file;
    std::string family;
    std::size_t n = 0;
    std::size_t clique_size = 0;
    double threshold = 0;
    std::uint64_t graph_seed = 0;
};

void add_graph_options(CLI::App* cmd, GraphOpts& opts) {
    cmd->add_option("--graph", opts.graph_file, "edge-list file (first line \"n m\", then \"u v\" lines)");
    cmd->add_option("--family", opts.family, "generator: path, clique, lollipop or random-threshold");
    cmd->add_option("--n", opts.n, "node count for generators");
    cmd->add_option("--k", opts.clique_size, "lollipop clique size");
    cmd->add_option("--threshold", opts.threshold, "random-threshold edge probability");
    cmd->add_option("--graph-seed", opts.graph_seed, "seed for random-threshold generation");
}

StaticGraph make_graph(const GraphOpts& opts) {
    if (!opts.graph_file.empty()) {
        std::ifstream in(opts.graph_file);
        if (!in) throw GraphError(GraphError::Kind::ParseError, "cannot open graph file \"" + opts.graph_file + "\"");
        return read_edge_list(in);
    }
    if (opts.family.empty())
        throw std::invalid_argument("either --graph or --family is required");
    if (opts.family == "path") return gen_path(opts.n);
    if (opts.family == "clique") return gen_clique(opts.n);
    if (opts.family == "lollipop") return gen_lollipop(opts.n, opts.clique_size);
    if (opts.family == "random-threshold") {
        Rng rng = make_rng(opts.graph_seed);
        return gen_random_threshold(opts.n, opts.threshold, rng);
    }
    throw std::invalid_argument("unknown family \"" + opts.family + "\"");
}

std::string graph_label(const GraphOpts& opts) {
    if (!opts.graph_file.empty()) return "file(" + opts.graph_file + ")";
    std::string s = opts.family + "(n=" + std::to_string(opts.n);
    if (opts.family == "lollipop") s += ",k=" + std::to_string(opts.clique_size);
    if (opts.family == "random-threshold") s += ",threshold=" + format_double(opts.threshold);
    return s + ")";
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file \"" + path + "\"");
    return file;
}

int run_experiment_cmd(const std::string& config_path, std::optional<std::uint64_t> seed,
                       std::optional<std::uint64_t> trials, const std::string& strategy, const std::string& out_path,
                       bool pretty) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError(0, "cannot open config file \"" + config_path + "\"");
    std::vector<ExperimentSpec> specs = parse_experiment_config(in);
    for (ExperimentSpec& s : specs) {
        if (seed) s.seed = *seed;
        if (trials) s.trials = *trials;
        if (!strategy.empty()) s.strategy = strategy_from_name(strategy);
    }
    std::vector<std::vector<TableRow>> rows;
    rows.reserve(specs.size());
    for (const ExperimentSpec& s : specs) rows.push_back(run_experiment_rows(s));

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (pretty)
        write_pretty(out, specs, rows);
    else
        write_csv(out, specs, rows);
    return 0;
}

int run_exact_cmd(const GraphOpts& gopts, double p, std::optional<double> q, std::optional<NodeId> start, bool sweep,
                  std::size_t cap, bool collapsed, bool maximize_windows, const std::string& dump_prefix) {
    const StaticGraph g = make_graph(gopts);
    ChainOptions opts;
    opts.state_cap = cap;
    opts.maximize_over_windows = maximize_windows;
    const StartPolicy policy = sweep ? StartPolicy::Sweep : StartPolicy::Fixed;
    const NodeId start_node = start.value_or(0);
    if (collapsed && q) throw std::invalid_argument("--collapsed applies to the history-free rule only");
    const EvolutionRule rule = q ? EvolutionRule::birth_death(p, *q) : EvolutionRule::bernoulli(p);

    std::vector<NodeId> starts;
    if (policy == StartPolicy::Sweep)
        for (NodeId v = 0; v < g.node_count(); ++v) starts.push_back(v);
    else
        starts.push_back(start_node);

    const Chain chain = collapsed ? build_collapsed_k0_chain(g, p, starts, opts)
                                  : enumerate_chain(g, rule, std::span<const NodeId>(starts), opts);
    const HittingTimes h = hitting_times(chain);
    double value = 0;
    for (std::size_t idx : chain.start_indices) value = std::max(value, h.values[idx]);

    if (!dump_prefix.empty()) {
        std::ofstream states_out(dump_prefix + ".states.csv");
        std::ofstream trans_out(dump_prefix + ".transitions.csv");
        if (!states_out || !trans_out)
            throw std::runtime_error("cannot open chain dump files with prefix \"" + dump_prefix + "\"");
        dump_chain(chain, states_out, trans_out);
    }
    std::cerr << "states=" << chain.state_count() << " residual=" << format_double(h.residual)
              << " solver=" << (h.dense ? "dense" : "sparse") << '\n';
    std::cout << format_double(value) << '\n';
    return 0;
}

int run_bounds_cmd(double cg, double p, std::optional<double> q, std::optional<std::size_t> delta,
                   std::optional<std::size_t> Delta, std::size_t m, std::size_t n) {
    if (q) {
        const BoundReport r = rwd_k1_bounds(cg, p, *q);
        std::cout << format_double(r.lower) << ' ' << format_double(r.upper) << '\n';
        return 0;
    }
    if (delta || Delta) {
        if (!delta || !Delta) throw std::invalid_argument("--delta and --Delta go together");
        const BoundReport r = rwa_k0_bounds(cg, p, *delta, *Delta);
        std::cout << format_double(r.lower) << ' ' << format_double(r.upper) << '\n';
        return 0;
    }
    const BoundReport r = rwd_k0_bounds(cg, p, m, n);
    std::cout << format_double(r.upper);
    if (m > 0 && n > 0) std::cout << ' ' << format_double(r.generic_cap);
    std::cout << '\n';
    return 0;
}

int run_simulate_cmd(const GraphOpts& gopts, double p, std::optional<double> q, const std::string& strategy,
                     std::uint64_t trials, std::uint64_t seed, std::optional<NodeId> start, bool sweep,
                     bool no_chaining, unsigned threads, std::uint64_t step_limit, const std::string& out_path) {
    const StaticGraph g = make_graph(gopts);
    const DegreeStats deg = degree_stats(g);
    ExperimentConfig cfg;
    cfg.rule = q ? EvolutionRule::birth_death(p, *q) : EvolutionRule::bernoulli(p);
    cfg.strategy = strategy_from_name(strategy);
    cfg.trials = trials;
    cfg.start_policy = sweep ? StartPolicy::Sweep : StartPolicy::Fixed;
    cfg.start = start.value_or(0);
    cfg.chaining = !no_chaining;
    cfg.seed = seed;
    cfg.step_limit = step_limit;
    cfg.threads = threads;

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << "graph,delta,Delta,rule,strategy,trials,mean,se,rounded\n";
    auto emit = [&](const std::string& label, const CoverTimeEstimate& est) {
        out << label << ',' << deg.min_degree << ',' << deg.max_degree << ',' << cfg.rule.describe() << ','
            << strategy_name(cfg.strategy) << ',' << est.trials << ',' << format_double(est.mean) << ','
            << format_double(est.std_error) << ',' << est.rounded() << '\n';
    };
    if (cfg.start_policy == StartPolicy::Sweep) {
        const SweepEstimate sweep_est = estimate_cover_time_sweep(g, cfg);
        for (NodeId v = 0; v < g.node_count(); ++v)
            emit(graph_label(gopts) + "@start" + std::to_string(v), sweep_est.per_start[v]);
        emit(graph_label(gopts) + "@worst-start" + std::to_string(sweep_est.worst_start), sweep_est.worst());
    } else {
        emit(graph_label(gopts) + "@start" + std::to_string(cfg.start), estimate_cover_time(g, cfg));
    }
    return 0;
}

int run_generate_cmd(const GraphOpts& gopts, const std::string& out_path) {
    const StaticGraph g = make_graph(gopts);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    write_edge_list(g, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random walks on edge-uniform stochastically-evolving graphs"};
    app.require_subcommand(1);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a config-driven cover-time experiment table");
    std::string config_path, out_path, strategy_override;
    std::optional<std::uint64_t> seed_override, trials_override;
    bool pretty = false;
    experiment->add_option("--config", config_path, "experiment config file")->required()->envname("EUE_CONFIG");
    experiment->add_option("--seed", seed_override, "override every section's seed")->envname("EUE_SEED");
    experiment->add_option("--trials", trials_override, "override every section's trials")->envname("EUE_TRIALS");
    experiment->add_option("--strategy", strategy_override, "override strategy: rwd, rwa or srw")
        ->envname("EUE_STRATEGY");
    experiment->add_option("--out", out_path, "output file (default stdout)")->envname("EUE_OUT");
    experiment->add_flag("--pretty", pretty, "aligned table with nearest-natural rounding")->envname("EUE_PRETTY");

    // exact
    auto* exact = app.add_subcommand("exact", "exact cover time via the absorbing chain");
    GraphOpts exact_graph;
    add_graph_options(exact, exact_graph);
    double exact_p = 1.0;
    std::optional<double> exact_q;
    std::optional<NodeId> exact_start;
    bool exact_sweep = false, exact_collapsed = false, exact_max_windows = false;
    std::size_t exact_cap = 5'000'000;
    std::string dump_prefix;
    exact->add_option("--p", exact_p, "edge alive probability")->required();
    exact->add_option("--q", exact_q, "death probability (selects the Birth-Death rule)");
    exact->add_option("--start", exact_start, "fixed start node (default 0)");
    exact->add_flag("--sweep", exact_sweep, "maximize over all start nodes");
    exact->add_option("--exact-cap", exact_cap, "chain state cap")->envname("EUE_EXACT_CAP");
    exact->add_flag("--collapsed", exact_collapsed, "use the reduced (position, covered) chain");
    exact->add_flag("--maximize-windows", exact_max_windows, "maximize over all initial windows");
    exact->add_option("--dump-chain", dump_prefix, "write <prefix>.states.csv and <prefix>.transitions.csv");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "evaluate closed-form cover-time bounds");
    double bounds_cg = 0, bounds_p = 0;
    std::optional<double> bounds_q;
    std::optional<std::size_t> bounds_delta, bounds_Delta;
    std::size_t bounds_m = 0, bounds_n = 0;
    bounds->add_option("--cg", bounds_cg, "static cover time C_G")->required();
    bounds->add_option("--p", bounds_p, "edge alive probability")->required();
    bounds->add_option("--q", bounds_q, "death probability (Birth-Death RWD bounds)");
    bounds->add_option("--delta", bounds_delta, "minimum degree (RWA bounds)");
    bounds->add_option("--Delta", bounds_Delta, "maximum degree (RWA bounds)");
    bounds->add_option("--m", bounds_m, "edge count (generic RWD cap)");
    bounds->add_option("--n", bounds_n, "node count (generic RWD cap)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo cover-time estimate");
    GraphOpts sim_graph;
    add_graph_options(simulate, sim_graph);
    double sim_p = 1.0;
    std::optional<double> sim_q;
    std::string sim_strategy = "rwa", sim_out;
    std::uint64_t sim_trials = 1000, sim_seed = 0, sim_step_limit = 1'000'000'000;
    std::optional<NodeId> sim_start;
    bool sim_sweep = false, sim_no_chaining = false;
    unsigned sim_threads = 1;
    simulate->add_option("--p", sim_p, "edge alive probability")->required();
    simulate->add_option("--q", sim_q, "death probability (selects the Birth-Death rule)");
    simulate->add_option("--strategy", sim_strategy, "rwd, rwa or srw")->envname("EUE_STRATEGY");
    simulate->add_option("--trials", sim_trials, "number of trials")->envname("EUE_TRIALS");
    simulate->add_option("--seed", sim_seed, "random seed")->envname("EUE_SEED");
    simulate->add_option("--start", sim_start, "fixed start node (default 0)");
    simulate->add_flag("--sweep", sim_sweep, "per-start estimates plus the worst start");
    simulate->add_flag("--no-chaining", sim_no_chaining, "fresh all-dead window every trial");
    simulate->add_option("--threads", sim_threads, "worker threads (non-chained mode)");
    simulate->add_option("--step-limit", sim_step_limit, "per-trial step limit");
    simulate->add_option("--out", sim_out, "output file (default stdout)")->envname("EUE_OUT");

    // generate
    auto* generate = app.add_subcommand("generate", "write a generated graph as an edge list");
    GraphOpts gen_graph;
    add_graph_options(generate, gen_graph);
    std::string gen_out;
    generate->add_option("--out", gen_out, "output file (default stdout)")->envname("EUE_OUT");

    try {
        app.parse(argc, argv);
        if (experiment->parsed())
            return run_experiment_cmd(config_path, seed_override, trials_override, strategy_override, out_path,
                                      pretty);
        if (exact->parsed())
            return run_exact_cmd(exact_graph, exact_p, exact_q, exact_start, exact_sweep, exact_cap, exact_collapsed,
                                 exact_max_windows, dump_prefix);
        if (bounds->parsed())
            return run_bounds_cmd(bounds_cg, bounds_p, bounds_q, bounds_delta, bounds_Delta, bounds_m, bounds_n);
        if (simulate->parsed())
            return run_simulate_cmd(sim_graph, sim_p, sim_q, sim_strategy, sim_trials, sim_seed, sim_start, sim_sweep,
                                    sim_no_chaining, sim_threads, sim_step_limit, sim_out);
        if (generate->parsed()) return run_generate_cmd(gen_graph, gen_out);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

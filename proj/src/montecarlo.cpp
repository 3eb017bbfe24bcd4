#include "eue/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace eue {

long long CoverTimeEstimate::rounded() const { return std::llround(mean); }

namespace {

CoverTimeEstimate summarize(const std::vector<std::uint64_t>& samples) {
    CoverTimeEstimate est;
    est.trials = samples.size();
    est.min_steps = samples.empty() ? 0 : *std::min_element(samples.begin(), samples.end());
    est.max_steps = samples.empty() ? 0 : *std::max_element(samples.begin(), samples.end());
    double sum = 0;
    for (std::uint64_t s : samples) sum += static_cast<double>(s);
    est.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0;
        for (std::uint64_t s : samples) {
            const double d = static_cast<double>(s) - est.mean;
            ss += d * d;
        }
        const double var = ss / static_cast<double>(samples.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return est;
}

std::vector<std::uint64_t> run_trials(const StaticGraph& g, const ExperimentConfig& cfg, NodeId start) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const std::uint64_t start_stream = derive_seed(cfg.seed, start);
    WalkOptions opts;
    opts.step_limit = cfg.step_limit;

    std::vector<std::uint64_t> samples(cfg.trials);
    if (cfg.chaining || cfg.threads <= 1) {
        HistoryWindow window = HistoryWindow::all_dead(g, cfg.rule);
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            Rng rng = make_rng(derive_seed(start_stream, t));
            WalkResult r = run_cover_walk(g, cfg.rule, cfg.strategy, start, window, rng, opts);
            samples[t] = r.steps;
            if (cfg.chaining && cfg.strategy != Strategy::SRW) window = std::move(r.final_window);
        }
        return samples;
    }

    // Non-chained trials are independent; partition by index.
    const unsigned workers = std::min<std::uint64_t>(cfg.threads, cfg.trials);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t t = w; t < cfg.trials; t += workers) {
                    Rng rng = make_rng(derive_seed(start_stream, t));
                    HistoryWindow window = HistoryWindow::all_dead(g, cfg.rule);
                    samples[t] = run_cover_walk(g, cfg.rule, cfg.strategy, start, std::move(window), rng, opts).steps;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return samples;
}

} // namespace

CoverTimeEstimate estimate_cover_time(const StaticGraph& g, const ExperimentConfig& cfg) {
    if (cfg.start_policy == StartPolicy::Sweep) return estimate_cover_time_sweep(g, cfg).worst();
    return summarize(run_trials(g, cfg, cfg.start));
}

SweepEstimate estimate_cover_time_sweep(const StaticGraph& g, const ExperimentConfig& cfg) {
    SweepEstimate sweep;
    sweep.per_start.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) sweep.per_start.push_back(summarize(run_trials(g, cfg, v)));
    for (NodeId v = 1; v < g.node_count(); ++v)
        if (sweep.per_start[v].mean > sweep.per_start[sweep.worst_start].mean) sweep.worst_start = v;
    return sweep;
}

CoverTimeEstimate estimate_static_cover_time(const StaticGraph& g, StartPolicy policy, NodeId start,
                                             std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.rule = EvolutionRule::bernoulli(1.0);
    cfg.strategy = Strategy::RWA;
    cfg.trials = trials;
    cfg.start_policy = policy;
    cfg.start = start;
    cfg.seed = seed;
    return estimate_cover_time(g, cfg);
}

} // namespace eue

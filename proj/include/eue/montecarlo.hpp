#pragma once

#include <cstdint>
#include <vector>

#include "eue/walks.hpp"

namespace eue {

enum class StartPolicy { Fixed, Sweep };

struct ExperimentConfig {
    EvolutionRule rule = EvolutionRule::bernoulli(1.0);
    Strategy strategy = Strategy::RWA;
    std::uint64_t trials = 1000;
    StartPolicy start_policy = StartPolicy::Fixed;
    NodeId start = 0;
    // Reuse the previous trial's final instance window as the next trial's
    // initial one; forces sequential trials.
    bool chaining = true;
    std::uint64_t seed = 0;
    std::uint64_t step_limit = 1'000'000'000;
    unsigned threads = 1; // >1 only effective without chaining
};

struct CoverTimeEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t trials = 0;
    std::uint64_t min_steps = 0;
    std::uint64_t max_steps = 0;

    long long rounded() const; // nearest natural number
};

struct SweepEstimate {
    std::vector<CoverTimeEstimate> per_start;
    NodeId worst_start = 0; // max mean
    const CoverTimeEstimate& worst() const { return per_start[worst_start]; }
};

// Runs cfg.trials cover walks. The first trial starts from the all-dead
// instance window; with chaining on, each later trial starts from the
// previous trial's final window. Trial t draws from an independent stream
// derived from (seed, start, t), so non-chained runs parallelize without
// changing results. Sweep policy returns the worst (max mean) start.
CoverTimeEstimate estimate_cover_time(const StaticGraph& g, const ExperimentConfig& cfg);

SweepEstimate estimate_cover_time_sweep(const StaticGraph& g, const ExperimentConfig& cfg);

// SRW estimate; identical per-trial results to estimate_cover_time with
// Bernoulli(1) and the same seed.
CoverTimeEstimate estimate_static_cover_time(const StaticGraph& g, StartPolicy policy, NodeId start,
                                             std::uint64_t trials, std::uint64_t seed);

} // namespace eue

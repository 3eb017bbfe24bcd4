#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eue/evolution.hpp"
#include "eue/graph.hpp"

namespace eue {

enum class Strategy { RWD, RWA, SRW };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct WalkerState {
    NodeId position = 0;
    DynamicBitset covered;
    std::uint64_t steps = 0;
    std::optional<NodeId> pending_target; // RWD: edge chosen, waiting for it to appear

    static WalkerState start_at(const StaticGraph& g, NodeId start);
    bool all_covered() const { return covered.all(); }
};

// Probabilities over next positions for one RWA move, self included when the
// walker may stay. Entries sorted by node, sum to 1.
struct StepDistribution {
    std::vector<std::pair<NodeId, double>> entries;

    double prob_of(NodeId v) const;
    double total() const;
};

// No alive incident edge -> {v: 1}; otherwise uniform over alive neighbors.
StepDistribution rwa_step_distribution(const StaticGraph& g, const GraphInstance& inst, NodeId v);

// One rng draw iff at least one alive incident edge.
WalkerState step_rwa(WalkerState state, const StaticGraph& g, const GraphInstance& inst, Rng& rng);

// Samples the pending target (one draw) when absent, then crosses iff that
// edge is alive; the crossing step is the step the edge appears.
WalkerState step_rwd(WalkerState state, const StaticGraph& g, const GraphInstance& inst, Rng& rng);

class StepLimitError : public std::runtime_error {
public:
    explicit StepLimitError(std::uint64_t limit)
        : std::runtime_error("cover walk exceeded step limit of " + std::to_string(limit)), limit_(limit) {}
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
};

struct WalkOptions {
    std::uint64_t step_limit = 1'000'000'000; // guards against zero-probability rules
    std::ostream* trace = nullptr;            // per-step "step=I inst=HEX pos=V" lines
};

struct WalkResult {
    std::uint64_t steps = 0;
    HistoryWindow final_window; // last instances, for experiment chaining
};

// Two stages per time step: evolve the instance, then move. Runs until every
// node is covered. SRW ignores the rule and the initial window (all edges
// treated alive, i.e. Bernoulli(1) RWA).
WalkResult run_cover_walk(const StaticGraph& g, const EvolutionRule& rule, Strategy strategy, NodeId start,
                          HistoryWindow init_window, Rng& rng, const WalkOptions& opts = {});

} // namespace eue

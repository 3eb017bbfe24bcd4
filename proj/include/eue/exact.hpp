#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eue/evolution.hpp"
#include "eue/graph.hpp"
#include "eue/montecarlo.hpp"

namespace eue {

// One state of the absorbing chain: the last k instances (most recent
// first; empty for a history-free rule, matching the chain's state count
// accounting), the walker position, and the covered set.
struct ChainState {
    std::vector<GraphInstance> window;
    NodeId position = 0;
    DynamicBitset covered;

    friend bool operator==(const ChainState&, const ChainState&) = default;

    struct Hash {
        std::size_t operator()(const ChainState& s) const {
            std::uint64_t h = s.covered.hash() * 0x9e3779b97f4a7c15ull + s.position;
            for (const GraphInstance& inst : s.window) h = h * 0x100000001b3ull ^ inst.hash();
            return static_cast<std::size_t>(h);
        }
    };

    std::string describe() const;
};

class StateCapError : public std::runtime_error {
public:
    StateCapError(double estimated, std::size_t cap)
        : std::runtime_error("chain state count estimate " + std::to_string(estimated) + " exceeds cap " +
                             std::to_string(cap)),
          estimated_(estimated), cap_(cap) {}
    double estimated() const { return estimated_; }
    std::size_t cap() const { return cap_; }

private:
    double estimated_;
    std::size_t cap_;
};

class AbsorptionUnreachableError : public std::runtime_error {
public:
    AbsorptionUnreachableError(std::size_t state, const std::string& what)
        : std::runtime_error(what), state_(state) {}
    std::size_t state() const { return state_; }

private:
    std::size_t state_;
};

struct ChainOptions {
    std::size_t state_cap = 5'000'000;
    bool collapse_absorbing = true;   // merge all |covered| = n states into one super-state
    bool maximize_over_windows = false; // start states range over every initial window (small k*m only)
};

// Sparse row-stochastic absorbing chain. Absorbing rows are identity rows;
// in collapsed mode a single synthetic super-state stands for all of them.
struct Chain {
    std::vector<ChainState> states;
    std::vector<bool> absorbing;
    // CSR transitions, columns sorted within each row.
    std::vector<std::size_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> prob;
    std::vector<std::size_t> start_indices;

    std::size_t state_count() const { return states.size(); }
    double row_sum(std::size_t row) const;
};

// 2^(k*m + n - 1) * n, the worst-case state count of the chain.
double chain_state_bound(const StaticGraph& g, const EvolutionRule& rule);

// Probability of moving from a history window to a given next instance:
// product over edges of the per-edge alive probability (or its complement).
// For Bernoulli(p) this is p^alpha (1-p)^(m-alpha); for Birth-Death it is
// (1-p)^c00 p^c01 q^c10 (1-q)^c11 against the current instance.
double instance_transition_prob(const EvolutionRule& rule, std::span<const GraphInstance> history,
                                const GraphInstance& to_instance);
double instance_transition_prob(const EvolutionRule& rule, const HistoryWindow& window,
                                const GraphInstance& to_instance);

// Window-level transition: zero unless the shifted history matches
// (to.at(i+1) == from.at(i)), else the instance transition to to.at(0).
double window_transition_prob(const EvolutionRule& rule, std::span<const GraphInstance> from,
                              std::span<const GraphInstance> to);

// Breadth-first enumeration of states reachable from {(window0, start,
// {start})}. Transition probability factorizes as instance transition times
// the RWA step distribution on the new current instance.
Chain enumerate_chain(const StaticGraph& g, const EvolutionRule& rule, std::span<const NodeId> starts,
                      const ChainOptions& opts = {});
Chain enumerate_chain(const StaticGraph& g, const EvolutionRule& rule, NodeId start, const ChainOptions& opts = {});

struct HittingTimes {
    std::vector<double> values; // indexed by state; zero exactly on absorbing states
    double residual = 0;        // max-norm residual of the linear solve
    bool dense = false;         // solver path taken
};

// Solves H = 0 on the absorbing set and H_s = 1 + sum_s' P[s->s'] H_s'
// elsewhere. Dense partial-pivoting elimination below 5000 transient states,
// sparse iterative solve (1e-10 residual, 1e5 iterations) above.
HittingTimes hitting_times(const Chain& chain);

// Max hitting time to full coverage over the designated start states.
// Start windows default to the all-dead instance; maximize_over_windows
// ranges over every possible initial window instead.
double exact_cover_time(const StaticGraph& g, const EvolutionRule& rule, StartPolicy policy = StartPolicy::Sweep,
                        NodeId start = 0, const ChainOptions& opts = {});

// Exact k = 0 RWA cover time via the reduced chain over (position, covered)
// only: move to each neighbor with probability (1/d)(1 - (1-p)^d), stay with
// probability (1-p)^d. Equals exact_cover_time with Bernoulli(p).
double collapsed_rwa_chain_k0(const StaticGraph& g, double p, StartPolicy policy = StartPolicy::Sweep,
                              NodeId start = 0, const ChainOptions& opts = {});

// Builds the reduced chain itself (also used with p = 1 for exact static
// cover times).
Chain build_collapsed_k0_chain(const StaticGraph& g, double p, std::span<const NodeId> starts,
                               const ChainOptions& opts = {});

// State table and sparse (row, col, prob) triplets as CSV, for external
// verification.
void dump_chain(const Chain& chain, std::ostream& states_out, std::ostream& transitions_out);

} // namespace eue

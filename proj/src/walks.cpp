#include "eue/walks.hpp"

#include <algorithm>
#include <ostream>

namespace eue {

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::RWD: return "rwd";
    case Strategy::RWA: return "rwa";
    case Strategy::SRW: return "srw";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "rwd") return Strategy::RWD;
    if (name == "rwa") return Strategy::RWA;
    if (name == "srw") return Strategy::SRW;
    throw std::invalid_argument("unknown strategy \"" + name + "\", expected rwd, rwa or srw");
}

WalkerState WalkerState::start_at(const StaticGraph& g, NodeId start) {
    if (start >= g.node_count()) throw std::invalid_argument("start node out of range");
    WalkerState s;
    s.position = start;
    s.covered = DynamicBitset(g.node_count());
    s.covered.set(start, true);
    return s;
}

double StepDistribution::prob_of(NodeId v) const {
    for (const auto& [node, p] : entries)
        if (node == v) return p;
    return 0.0;
}

double StepDistribution::total() const {
    double t = 0;
    for (const auto& [node, p] : entries) t += p;
    return t;
}

StepDistribution rwa_step_distribution(const StaticGraph& g, const GraphInstance& inst, NodeId v) {
    StepDistribution dist;
    const auto nbs = g.neighbors(v);
    const auto incs = g.incident_edges(v);
    std::vector<NodeId> alive;
    alive.reserve(nbs.size());
    for (std::size_t i = 0; i < nbs.size(); ++i)
        if (inst.alive(incs[i])) alive.push_back(nbs[i]);

    if (alive.empty()) {
        dist.entries.emplace_back(v, 1.0);
        return dist;
    }
    std::sort(alive.begin(), alive.end());
    const double p = 1.0 / static_cast<double>(alive.size());
    for (NodeId u : alive) dist.entries.emplace_back(u, p);
    return dist;
}

WalkerState step_rwa(WalkerState state, const StaticGraph& g, const GraphInstance& inst, Rng& rng) {
    const auto nbs = g.neighbors(state.position);
    const auto incs = g.incident_edges(state.position);
    std::vector<NodeId> alive;
    alive.reserve(nbs.size());
    for (std::size_t i = 0; i < nbs.size(); ++i)
        if (inst.alive(incs[i])) alive.push_back(nbs[i]);

    if (!alive.empty()) {
        state.position = alive[uniform_index(rng, alive.size())];
        state.covered.set(state.position, true);
    }
    ++state.steps;
    return state;
}

WalkerState step_rwd(WalkerState state, const StaticGraph& g, const GraphInstance& inst, Rng& rng) {
    if (!state.pending_target) {
        const auto nbs = g.neighbors(state.position);
        state.pending_target = nbs[uniform_index(rng, nbs.size())];
    }
    const EdgeId e = g.edge_index(state.position, *state.pending_target);
    if (inst.alive(e)) {
        state.position = *state.pending_target;
        state.covered.set(state.position, true);
        state.pending_target.reset();
    }
    ++state.steps;
    return state;
}

WalkResult run_cover_walk(const StaticGraph& g, const EvolutionRule& rule, Strategy strategy, NodeId start,
                          HistoryWindow init_window, Rng& rng, const WalkOptions& opts) {
    const EvolutionRule effective_rule = strategy == Strategy::SRW ? EvolutionRule::bernoulli(1.0) : rule;
    HistoryWindow window = strategy == Strategy::SRW ? HistoryWindow::all_dead(g, effective_rule)
                                                     : std::move(init_window);
    if (window.depth() != std::max<std::size_t>(effective_rule.history_length(), 1) ||
        window.current().edge_count() != g.edge_count())
        throw std::invalid_argument("initial window inconsistent with graph/rule");
    const Strategy move = strategy == Strategy::RWD ? Strategy::RWD : Strategy::RWA;

    WalkerState state = WalkerState::start_at(g, start);
    while (!state.all_covered()) {
        if (state.steps >= opts.step_limit) throw StepLimitError(opts.step_limit);
        window.push(evolve_instance(g, effective_rule, window, rng));
        state = move == Strategy::RWD ? step_rwd(std::move(state), g, window.current(), rng)
                                      : step_rwa(std::move(state), g, window.current(), rng);
        if (opts.trace)
            *opts.trace << "step=" << state.steps << " inst=" << window.current().hex() << " pos=" << state.position
                        << '\n';
    }
    return WalkResult{state.steps, std::move(window)};
}

} // namespace eue

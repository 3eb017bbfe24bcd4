#include "eue/exact.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <ostream>
#include <unordered_map>

namespace eue {

std::string ChainState::describe() const {
    std::string s = "pos=" + std::to_string(position) + " covered=" + covered.hex();
    s += " window=[";
    for (std::size_t i = 0; i < window.size(); ++i) {
        if (i) s += "|";
        s += window[i].hex();
    }
    s += "]";
    return s;
}

double Chain::row_sum(std::size_t row) const {
    double sum = 0;
    for (std::size_t i = row_ptr[row]; i < row_ptr[row + 1]; ++i) sum += prob[i];
    return sum;
}

double chain_state_bound(const StaticGraph& g, const EvolutionRule& rule) {
    const double exponent = static_cast<double>(rule.history_length()) * static_cast<double>(g.edge_count()) +
                            static_cast<double>(g.node_count()) - 1.0;
    return static_cast<double>(g.node_count()) * std::exp2(exponent);
}

double instance_transition_prob(const EvolutionRule& rule, std::span<const GraphInstance> history,
                                const GraphInstance& to_instance) {
    const unsigned k = rule.history_length();
    if (history.size() < k) throw std::invalid_argument("history shorter than rule history length");
    const std::size_t m = to_instance.edge_count();
    for (unsigned i = 0; i < k; ++i)
        if (history[i].edge_count() != m) throw std::invalid_argument("history/instance edge count mismatch");

    double prob = 1.0;
    for (EdgeId e = 0; e < m; ++e) {
        unsigned pattern = 0;
        for (unsigned i = 0; i < k; ++i)
            if (history[i].alive(e)) pattern |= 1u << i;
        const double alive = rule.alive_probability(pattern, k);
        prob *= to_instance.alive(e) ? alive : 1.0 - alive;
        if (prob == 0.0) return 0.0;
    }
    return prob;
}

double instance_transition_prob(const EvolutionRule& rule, const HistoryWindow& window,
                                const GraphInstance& to_instance) {
    std::vector<GraphInstance> hist;
    hist.reserve(window.depth());
    for (std::size_t i = 0; i < window.depth(); ++i) hist.push_back(window.at(i));
    return instance_transition_prob(rule, hist, to_instance);
}

double window_transition_prob(const EvolutionRule& rule, std::span<const GraphInstance> from,
                              std::span<const GraphInstance> to) {
    if (from.size() != to.size()) throw std::invalid_argument("window depth mismatch");
    if (to.empty()) throw std::invalid_argument("windows must hold at least one instance");
    // History maintenance: to[i+1] must equal from[i].
    for (std::size_t i = 0; i + 1 < to.size(); ++i)
        if (!(to[i + 1] == from[i])) return 0.0;
    return instance_transition_prob(rule, from, to[0]);
}

namespace {

struct ChainBuilder {
    const StaticGraph& g;
    const EvolutionRule& rule;
    const ChainOptions& opts;

    std::vector<ChainState> states;
    std::vector<bool> absorbing;
    std::unordered_map<ChainState, std::uint32_t, ChainState::Hash> index;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
    std::deque<std::uint32_t> frontier;

    std::uint32_t intern(ChainState s, bool is_absorbing) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        if (states.size() >= opts.state_cap)
            throw StateCapError(chain_state_bound(g, rule), opts.state_cap);
        const auto idx = static_cast<std::uint32_t>(states.size());
        index.emplace(s, idx);
        states.push_back(std::move(s));
        absorbing.push_back(is_absorbing);
        rows.emplace_back();
        if (!is_absorbing) frontier.push_back(idx);
        return idx;
    }

    std::uint32_t absorbing_target(const std::vector<GraphInstance>& window, NodeId position,
                                   const DynamicBitset& covered) {
        if (opts.collapse_absorbing) {
            ChainState super;
            super.position = 0;
            super.covered = DynamicBitset(g.node_count(), true);
            return intern(std::move(super), true);
        }
        return intern(ChainState{window, position, covered}, true);
    }

    void add_start(ChainState s) {
        const bool abs = s.covered.all();
        start_index_buffer.push_back(intern(std::move(s), abs));
    }
    std::vector<std::size_t> start_index_buffer;

    void expand(std::uint32_t si) {
        std::map<std::uint32_t, double> row;
        const ChainState s = states[si]; // copy: states may reallocate during expansion
        if (rule.history_length() == 0)
            expand_history_free(s, row);
        else
            expand_with_history(s, row);
        rows[si].assign(row.begin(), row.end());
    }

    // History-free transitions depend on the next instance only through the
    // edges incident to the walker, so the remaining edges marginalize out
    // (their alive probabilities sum to one over all assignments).
    void expand_history_free(const ChainState& s, std::map<std::uint32_t, double>& row) {
        const double alive = rule.alive_probability(0, 0);
        const auto nbs = g.neighbors(s.position);
        const std::size_t d = nbs.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
            const int cnt = __builtin_popcountll(mask);
            const double pr_mask =
                std::pow(alive, cnt) * std::pow(1.0 - alive, static_cast<double>(d - cnt));
            if (pr_mask == 0.0) continue;
            if (cnt == 0) {
                row[intern_target(s.window, s.position, s.covered)] += pr_mask;
                continue;
            }
            const double pr_move = pr_mask / static_cast<double>(cnt);
            for (std::size_t i = 0; i < d; ++i)
                if ((mask >> i) & 1u) {
                    DynamicBitset covered = s.covered;
                    covered.set(nbs[i], true);
                    row[intern_target(s.window, nbs[i], covered)] += pr_move;
                }
        }
    }

    void expand_with_history(const ChainState& s, std::map<std::uint32_t, double>& row) {
        const std::size_t m = g.edge_count();
        const unsigned k = rule.history_length();
        GraphInstance to_inst(m);
        std::vector<GraphInstance> new_window(k, GraphInstance(m));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            for (EdgeId e = 0; e < m; ++e) to_inst.set_alive(e, (mask >> e) & 1u);
            const double pr_inst = instance_transition_prob(rule, s.window, to_inst);
            if (pr_inst == 0.0) continue;
            new_window[0] = to_inst;
            for (unsigned i = 1; i < k; ++i) new_window[i] = s.window[i - 1];
            const StepDistribution dist = rwa_step_distribution(g, to_inst, s.position);
            for (const auto& [v, pr_move] : dist.entries) {
                DynamicBitset covered = s.covered;
                covered.set(v, true);
                row[intern_target(new_window, v, covered)] += pr_inst * pr_move;
            }
        }
    }

    std::uint32_t intern_target(const std::vector<GraphInstance>& window, NodeId position,
                                const DynamicBitset& covered) {
        if (covered.all()) return absorbing_target(window, position, covered);
        return intern(ChainState{window, position, covered}, false);
    }

    Chain finish() {
        while (!frontier.empty()) {
            const auto si = frontier.front();
            frontier.pop_front();
            expand(si);
        }
        Chain chain;
        chain.states = std::move(states);
        chain.absorbing = std::move(absorbing);
        chain.start_indices = std::move(start_index_buffer);
        chain.row_ptr.assign(chain.states.size() + 1, 0);
        std::size_t nnz = 0;
        for (std::size_t i = 0; i < chain.states.size(); ++i) nnz += chain.absorbing[i] ? 1 : rows[i].size();
        chain.col.reserve(nnz);
        chain.prob.reserve(nnz);
        for (std::size_t i = 0; i < chain.states.size(); ++i) {
            if (chain.absorbing[i]) {
                chain.col.push_back(static_cast<std::uint32_t>(i));
                chain.prob.push_back(1.0);
            } else {
                for (const auto& [c, p] : rows[i]) {
                    chain.col.push_back(c);
                    chain.prob.push_back(p);
                }
            }
            chain.row_ptr[i + 1] = chain.col.size();
        }
        return chain;
    }
};

std::vector<GraphInstance> all_dead_window(const StaticGraph& g, const EvolutionRule& rule) {
    return std::vector<GraphInstance>(rule.history_length(), GraphInstance(g.edge_count()));
}

void check_enumeration_feasible(const StaticGraph& g, const EvolutionRule& rule, const ChainOptions& opts) {
    const unsigned k = rule.history_length();
    const std::size_t m = g.edge_count();
    if (k >= 1) {
        if (m > 63) throw StateCapError(chain_state_bound(g, rule), opts.state_cap);
        bool interior = true;
        for (unsigned pat = 0; pat < (1u << k); ++pat) {
            const double a = rule.alive_probability(pat, k);
            if (a <= 0.0 || a >= 1.0) interior = false;
        }
        // With every pattern probability strictly inside (0,1) every window
        // is reachable, so 2^(k*m) lower-bounds the reachable state count.
        if (interior && std::exp2(static_cast<double>(k) * static_cast<double>(m)) >
                            static_cast<double>(opts.state_cap))
            throw StateCapError(std::exp2(static_cast<double>(k) * static_cast<double>(m)), opts.state_cap);
    } else {
        if (degree_stats(g).max_degree > 24) throw StateCapError(chain_state_bound(g, rule), opts.state_cap);
    }
}

} // namespace

Chain enumerate_chain(const StaticGraph& g, const EvolutionRule& rule, std::span<const NodeId> starts,
                      const ChainOptions& opts) {
    check_enumeration_feasible(g, rule, opts);
    ChainBuilder builder{g, rule, opts, {}, {}, {}, {}, {}, {}};

    std::vector<std::vector<GraphInstance>> start_windows;
    const unsigned k = rule.history_length();
    if (opts.maximize_over_windows && k >= 1) {
        const std::size_t bits = static_cast<std::size_t>(k) * g.edge_count();
        if (bits > 20) throw std::invalid_argument("maximize_over_windows needs k*m <= 20, got " + std::to_string(bits));
        const std::size_t m = g.edge_count();
        for (std::uint64_t combo = 0; combo < (std::uint64_t{1} << bits); ++combo) {
            std::vector<GraphInstance> window(k, GraphInstance(m));
            for (unsigned i = 0; i < k; ++i)
                for (EdgeId e = 0; e < m; ++e)
                    window[i].set_alive(e, (combo >> (static_cast<std::size_t>(i) * m + e)) & 1u);
            start_windows.push_back(std::move(window));
        }
    } else {
        start_windows.push_back(all_dead_window(g, rule));
    }

    for (NodeId start : starts) {
        if (start >= g.node_count()) throw std::invalid_argument("start node out of range");
        for (const auto& window : start_windows) {
            ChainState s;
            s.window = window;
            s.position = start;
            s.covered = DynamicBitset(g.node_count());
            s.covered.set(start, true);
            builder.add_start(std::move(s));
        }
    }
    return builder.finish();
}

Chain enumerate_chain(const StaticGraph& g, const EvolutionRule& rule, NodeId start, const ChainOptions& opts) {
    const NodeId starts[1] = {start};
    return enumerate_chain(g, rule, std::span<const NodeId>(starts, 1), opts);
}

namespace {

constexpr std::size_t kDenseLimit = 5000;

void check_absorption_reachable(const Chain& chain) {
    const std::size_t n = chain.state_count();
    std::vector<std::vector<std::uint32_t>> reverse(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = chain.row_ptr[r]; i < chain.row_ptr[r + 1]; ++i)
            if (chain.prob[i] > 0.0 && chain.col[i] != r) reverse[chain.col[i]].push_back(static_cast<std::uint32_t>(r));

    std::vector<char> seen(n, 0);
    std::deque<std::uint32_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (chain.absorbing[i]) {
            seen[i] = 1;
            queue.push_back(static_cast<std::uint32_t>(i));
        }
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (auto u : reverse[v])
            if (!seen[u]) {
                seen[u] = 1;
                queue.push_back(u);
            }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i])
            throw AbsorptionUnreachableError(
                i, "hitting-time system is singular: absorbing set unreachable from state " + std::to_string(i) +
                       " (" + chain.states[i].describe() + ")");
}

} // namespace

HittingTimes hitting_times(const Chain& chain) {
    check_absorption_reachable(chain);
    const std::size_t n = chain.state_count();
    std::vector<std::int64_t> transient_of(n, -1);
    std::vector<std::size_t> transient;
    for (std::size_t i = 0; i < n; ++i)
        if (!chain.absorbing[i]) {
            transient_of[i] = static_cast<std::int64_t>(transient.size());
            transient.push_back(i);
        }
    const std::size_t t = transient.size();

    HittingTimes result;
    result.values.assign(n, 0.0);
    if (t == 0) return result;

    Eigen::VectorXd b = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(t));
    Eigen::VectorXd h;
    result.dense = t < kDenseLimit;
    if (result.dense) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
        for (std::size_t r = 0; r < t; ++r) {
            const std::size_t row = transient[r];
            for (std::size_t i = chain.row_ptr[row]; i < chain.row_ptr[row + 1]; ++i) {
                const auto c = transient_of[chain.col[i]];
                if (c >= 0) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) -= chain.prob[i];
            }
        }
        h = A.partialPivLu().solve(b);
        result.residual = (A * h - b).lpNorm<Eigen::Infinity>();
    } else {
        std::vector<Eigen::Triplet<double>> triplets;
        triplets.reserve(chain.prob.size() + t);
        for (std::size_t r = 0; r < t; ++r) {
            const std::size_t row = transient[r];
            double diag = 1.0;
            for (std::size_t i = chain.row_ptr[row]; i < chain.row_ptr[row + 1]; ++i) {
                const auto c = transient_of[chain.col[i]];
                if (c < 0) continue;
                if (static_cast<std::size_t>(c) == r)
                    diag -= chain.prob[i];
                else
                    triplets.emplace_back(static_cast<int>(r), static_cast<int>(c), -chain.prob[i]);
            }
            triplets.emplace_back(static_cast<int>(r), static_cast<int>(r), diag);
        }
        Eigen::SparseMatrix<double> A(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
        A.setFromTriplets(triplets.begin(), triplets.end());
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double>> solver;
        solver.setTolerance(1e-10);
        solver.setMaxIterations(100000);
        solver.compute(A);
        h = solver.solve(b);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("sparse hitting-time solve did not converge (error " +
                                     std::to_string(solver.error()) + ")");
        result.residual = (A * h - b).lpNorm<Eigen::Infinity>();
    }

    for (std::size_t r = 0; r < t; ++r) result.values[transient[r]] = h(static_cast<Eigen::Index>(r));
    return result;
}

double exact_cover_time(const StaticGraph& g, const EvolutionRule& rule, StartPolicy policy, NodeId start,
                        const ChainOptions& opts) {
    std::vector<NodeId> starts;
    if (policy == StartPolicy::Sweep)
        for (NodeId v = 0; v < g.node_count(); ++v) starts.push_back(v);
    else
        starts.push_back(start);
    const Chain chain = enumerate_chain(g, rule, starts, opts);
    const HittingTimes h = hitting_times(chain);
    double best = 0;
    for (std::size_t idx : chain.start_indices) best = std::max(best, h.values[idx]);
    return best;
}

Chain build_collapsed_k0_chain(const StaticGraph& g, double p, std::span<const NodeId> starts,
                               const ChainOptions& opts) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0,1]");
    const EvolutionRule rule = EvolutionRule::bernoulli(p);
    ChainBuilder builder{g, rule, opts, {}, {}, {}, {}, {}, {}};

    for (NodeId start : starts) {
        if (start >= g.node_count()) throw std::invalid_argument("start node out of range");
        ChainState s;
        s.position = start;
        s.covered = DynamicBitset(g.node_count());
        s.covered.set(start, true);
        builder.add_start(std::move(s));
    }

    // Same breadth-first scaffolding, closed-form move probabilities:
    // stay with (1-p)^d, move to each neighbor with (1/d)(1 - (1-p)^d).
    while (!builder.frontier.empty()) {
        const auto si = builder.frontier.front();
        builder.frontier.pop_front();
        const ChainState s = builder.states[si];
        const auto nbs = g.neighbors(s.position);
        const double d = static_cast<double>(nbs.size());
        const double stay = std::pow(1.0 - p, d);
        std::map<std::uint32_t, double> row;
        if (stay > 0.0) row[builder.intern_target(s.window, s.position, s.covered)] += stay;
        const double per_neighbor = (1.0 - stay) / d;
        if (per_neighbor > 0.0)
            for (NodeId u : nbs) {
                DynamicBitset covered = s.covered;
                covered.set(u, true);
                row[builder.intern_target(s.window, u, covered)] += per_neighbor;
            }
        builder.rows[si].assign(row.begin(), row.end());
    }
    // The frontier is drained, so finish() only assembles the CSR arrays.
    return builder.finish();
}

double collapsed_rwa_chain_k0(const StaticGraph& g, double p, StartPolicy policy, NodeId start,
                              const ChainOptions& opts) {
    std::vector<NodeId> starts;
    if (policy == StartPolicy::Sweep)
        for (NodeId v = 0; v < g.node_count(); ++v) starts.push_back(v);
    else
        starts.push_back(start);
    const Chain chain = build_collapsed_k0_chain(g, p, starts, opts);
    const HittingTimes h = hitting_times(chain);
    double best = 0;
    for (std::size_t idx : chain.start_indices) best = std::max(best, h.values[idx]);
    return best;
}

void dump_chain(const Chain& chain, std::ostream& states_out, std::ostream& transitions_out) {
    states_out << "index,absorbing,position,covered,window\n";
    for (std::size_t i = 0; i < chain.states.size(); ++i) {
        const ChainState& s = chain.states[i];
        states_out << i << ',' << (chain.absorbing[i] ? 1 : 0) << ',' << s.position << ',' << s.covered.hex() << ',';
        for (std::size_t w = 0; w < s.window.size(); ++w) {
            if (w) states_out << '|';
            states_out << s.window[w].hex();
        }
        states_out << '\n';
    }
    transitions_out << "row,col,prob\n";
    char buf[64];
    for (std::size_t r = 0; r < chain.state_count(); ++r)
        for (std::size_t i = chain.row_ptr[r]; i < chain.row_ptr[r + 1]; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", chain.prob[i]);
            transitions_out << r << ',' << chain.col[i] << ',' << buf << '\n';
        }
}

} // namespace eue

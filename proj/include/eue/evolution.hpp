#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eue/bitset.hpp"
#include "eue/graph.hpp"
#include "eue/random.hpp"

namespace eue {

// Liveness assignment over the m possible edges of a StaticGraph at one
// time step.
class GraphInstance {
public:
    GraphInstance() = default;
    explicit GraphInstance(std::size_t edge_count, bool all_alive = false) : bits_(edge_count, all_alive) {}

    // Test helper, edge_count <= 64: bit e of mask = edge e alive.
    static GraphInstance from_mask(std::size_t edge_count, std::uint64_t mask) {
        GraphInstance inst(edge_count);
        for (std::size_t e = 0; e < edge_count; ++e) inst.bits_.set(e, (mask >> e) & 1u);
        return inst;
    }

    std::size_t edge_count() const { return bits_.size(); }
    bool alive(EdgeId e) const { return bits_.test(e); }
    void set_alive(EdgeId e, bool v) { bits_.set(e, v); }
    std::size_t alive_count() const { return bits_.count(); }
    bool none_alive() const { return bits_.none(); }

    const DynamicBitset& bits() const { return bits_; }
    std::string hex() const { return bits_.hex(); }
    std::uint64_t hash() const { return bits_.hash(); }

    friend bool operator==(const GraphInstance&, const GraphInstance&) = default;

private:
    DynamicBitset bits_;
};

// Per-edge stochastic rule R with history length k. The same rule applies to
// every edge independently (edge uniformity).
class EvolutionRule {
public:
    enum class Kind { Bernoulli, BirthDeath, General };

    static EvolutionRule bernoulli(double p);
    // Dead edge becomes alive with probability p; alive edge dies with
    // probability q.
    static EvolutionRule birth_death(double p, double q);
    // table[pattern] = alive probability given the k-bit history pattern;
    // bit i of the pattern is the edge's state i+1 steps ago.
    static EvolutionRule general(unsigned history_length, std::vector<double> table);

    Kind kind() const { return kind_; }
    unsigned history_length() const { return k_; }
    double p() const { return p_; }
    double q() const { return q_; }
    const std::vector<double>& table() const { return table_; }

    // Probability the edge is alive next step given its k-bit history.
    double alive_probability(unsigned pattern, unsigned pattern_length) const;

    std::string describe() const;

private:
    EvolutionRule() = default;

    Kind kind_ = Kind::Bernoulli;
    unsigned k_ = 0;
    double p_ = 0;
    double q_ = 0;
    std::vector<double> table_;
};

// The last max(k, 1) instances, most recent first. Even a history-free rule
// keeps one instance: the walker's move depends on the current instance.
class HistoryWindow {
public:
    HistoryWindow(const EvolutionRule& rule, GraphInstance initial)
        : instances_(std::max<std::size_t>(rule.history_length(), 1), std::move(initial)) {}

    static HistoryWindow all_dead(const StaticGraph& g, const EvolutionRule& rule) {
        return HistoryWindow(rule, GraphInstance(g.edge_count()));
    }

    std::size_t depth() const { return instances_.size(); }
    const GraphInstance& current() const { return instances_.front(); }
    // Instance i steps in the past; at(0) == current().
    const GraphInstance& at(std::size_t i) const { return instances_[i]; }

    void push(GraphInstance next) {
        for (std::size_t i = instances_.size(); i-- > 1;) instances_[i] = std::move(instances_[i - 1]);
        instances_[0] = std::move(next);
    }

    // Bit i = this edge's state i+1 steps ago (relative to the instance
    // being decided next).
    unsigned edge_pattern(EdgeId e, unsigned k) const {
        unsigned pattern = 0;
        for (unsigned i = 0; i < k; ++i)
            if (instances_[i].alive(e)) pattern |= 1u << i;
        return pattern;
    }

    friend bool operator==(const HistoryWindow&, const HistoryWindow&) = default;

private:
    std::vector<GraphInstance> instances_;
};

// Samples every edge's next state independently via alive_probability on the
// edge's own history. Exactly one rng draw per edge, canonical edge order.
GraphInstance evolve_instance(const StaticGraph& g, const EvolutionRule& rule, const HistoryWindow& window, Rng& rng);

} // namespace eue

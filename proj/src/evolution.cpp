#include "eue/evolution.hpp"

#include <cmath>

namespace eue {

namespace {

void check_probability(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string(name) + " must be a probability in [0,1]");
}

} // namespace

EvolutionRule EvolutionRule::bernoulli(double p) {
    check_probability(p, "p");
    EvolutionRule r;
    r.kind_ = Kind::Bernoulli;
    r.k_ = 0;
    r.p_ = p;
    return r;
}

EvolutionRule EvolutionRule::birth_death(double p, double q) {
    check_probability(p, "p");
    check_probability(q, "q");
    EvolutionRule r;
    r.kind_ = Kind::BirthDeath;
    r.k_ = 1;
    r.p_ = p;
    r.q_ = q;
    return r;
}

EvolutionRule EvolutionRule::general(unsigned history_length, std::vector<double> table) {
    if (history_length > 20) throw std::invalid_argument("general rule history length too large");
    if (table.size() != (std::size_t{1} << history_length))
        throw std::invalid_argument("general rule table must cover all 2^k patterns, expected " +
                                    std::to_string(std::size_t{1} << history_length) + " entries, got " +
                                    std::to_string(table.size()));
    for (double x : table) check_probability(x, "table entry");
    EvolutionRule r;
    r.kind_ = Kind::General;
    r.k_ = history_length;
    r.table_ = std::move(table);
    return r;
}

double EvolutionRule::alive_probability(unsigned pattern, unsigned pattern_length) const {
    if (pattern_length != k_)
        throw std::invalid_argument("history pattern length " + std::to_string(pattern_length) +
                                    " does not match rule history length " + std::to_string(k_));
    switch (kind_) {
    case Kind::Bernoulli:
        return p_;
    case Kind::BirthDeath:
        return (pattern & 1u) ? 1.0 - q_ : p_; // alive -> 1-q, dead -> p
    case Kind::General:
        return table_[pattern];
    }
    return 0.0;
}

std::string EvolutionRule::describe() const {
    auto num = [](double x) {
        std::string s = std::to_string(x);
        while (s.size() > 1 && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (kind_) {
    case Kind::Bernoulli:
        return "bernoulli(p=" + num(p_) + ")";
    case Kind::BirthDeath:
        return "birth-death(p=" + num(p_) + ",q=" + num(q_) + ")";
    case Kind::General:
        return "general(k=" + std::to_string(k_) + ")";
    }
    return "?";
}

GraphInstance evolve_instance(const StaticGraph& g, const EvolutionRule& rule, const HistoryWindow& window, Rng& rng) {
    const std::size_t m = g.edge_count();
    if (window.depth() != std::max<std::size_t>(rule.history_length(), 1))
        throw std::invalid_argument("history window depth " + std::to_string(window.depth()) +
                                    " does not match rule history length " + std::to_string(rule.history_length()));
    if (window.current().edge_count() != m)
        throw std::invalid_argument("history window edge count does not match graph");

    const unsigned k = rule.history_length();
    GraphInstance next(m);
    for (EdgeId e = 0; e < m; ++e) {
        const double prob = rule.alive_probability(window.edge_pattern(e, k), k);
        next.set_alive(e, uniform01(rng) < prob);
    }
    return next;
}

} // namespace eue

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "eue/exact.hpp"
#include "rational_oracle.hpp"

using namespace eue;

TEST_CASE("instance transition probabilities") {
    // Bernoulli(0.5), m=2, one edge alive: 0.5 * 0.5
    const EvolutionRule half = EvolutionRule::bernoulli(0.5);
    const std::vector<GraphInstance> empty_history;
    CHECK(instance_transition_prob(half, empty_history, GraphInstance::from_mask(2, 0b01)) ==
          doctest::Approx(0.25));

    const EvolutionRule one = EvolutionRule::bernoulli(1.0);
    CHECK(instance_transition_prob(one, empty_history, GraphInstance::from_mask(2, 0b11)) == 1.0);
    CHECK(instance_transition_prob(one, empty_history, GraphInstance::from_mask(2, 0b01)) == 0.0);

    // Birth-Death from all-dead to all-alive on m=2: both edges born, p^2.
    const EvolutionRule bd = EvolutionRule::birth_death(0.3, 0.2);
    const std::vector<GraphInstance> dead{GraphInstance(2)};
    CHECK(instance_transition_prob(bd, dead, GraphInstance::from_mask(2, 0b11)) == doctest::Approx(0.09));
    // Mixed match counts: c11 = 1 (stays, 1-q), c01 = 1 (born, p).
    const std::vector<GraphInstance> one_alive{GraphInstance::from_mask(2, 0b01)};
    CHECK(instance_transition_prob(bd, one_alive, GraphInstance::from_mask(2, 0b11)) == doctest::Approx(0.8 * 0.3));
}

TEST_CASE("window transitions enforce history maintenance") {
    const EvolutionRule two = EvolutionRule::general(2, {0.5, 0.5, 0.5, 0.5});
    const GraphInstance a = GraphInstance::from_mask(1, 0b1);
    const GraphInstance b = GraphInstance::from_mask(1, 0b0);

    const std::vector<GraphInstance> from{a, b}; // H = (H1=a, H2=b)
    const std::vector<GraphInstance> shifted{b, a};  // H' = (H1'=b, H2'=a=H1): valid
    const std::vector<GraphInstance> violating{b, b}; // H2' != H1
    CHECK(window_transition_prob(two, from, shifted) == doctest::Approx(0.5));
    CHECK(window_transition_prob(two, from, violating) == 0.0);
}

TEST_CASE("p2 chain has four reachable state classes over both starts") {
    const StaticGraph p2 = gen_path(2);
    const EvolutionRule rule = EvolutionRule::bernoulli(0.5);
    const std::vector<NodeId> starts{0, 1};
    ChainOptions opts;
    opts.collapse_absorbing = false;
    const Chain chain = enumerate_chain(p2, rule, starts, opts);
    CHECK(chain.state_count() == 4);

    // From a start state, absorption happens with per-step probability p.
    const std::size_t s0 = chain.start_indices[0];
    double to_absorbing = 0;
    for (std::size_t i = chain.row_ptr[s0]; i < chain.row_ptr[s0 + 1]; ++i)
        if (chain.absorbing[chain.col[i]]) to_absorbing += chain.prob[i];
    CHECK(to_absorbing == doctest::Approx(0.5));
}

TEST_CASE("non-absorbing rows are stochastic, absorbing rows identity") {
    Rng rng = make_rng(2);
    for (double p : {0.2, 0.9}) {
        const StaticGraph g = gen_random_threshold(4, 0.5, rng);
        const Chain chain = enumerate_chain(g, EvolutionRule::bernoulli(p), NodeId{0});
        for (std::size_t s = 0; s < chain.state_count(); ++s) {
            CHECK(chain.row_sum(s) == doctest::Approx(1.0).epsilon(1e-12));
            if (chain.absorbing[s]) {
                CHECK(chain.row_ptr[s + 1] - chain.row_ptr[s] == 1);
                CHECK(chain.col[chain.row_ptr[s]] == s);
            }
        }
    }
}

TEST_CASE("hitting times of the p2 chain") {
    const StaticGraph p2 = gen_path(2);
    {
        const Chain chain = enumerate_chain(p2, EvolutionRule::bernoulli(0.5), NodeId{0});
        const HittingTimes h = hitting_times(chain);
        CHECK(h.values[chain.start_indices[0]] == doctest::Approx(2.0)); // 1/p
        for (std::size_t s = 0; s < chain.state_count(); ++s)
            if (chain.absorbing[s]) CHECK(h.values[s] == 0.0);
        CHECK(h.dense);
        CHECK(h.residual <= 1e-12);
    }
    {
        const Chain chain = enumerate_chain(p2, EvolutionRule::bernoulli(1.0), NodeId{0});
        const HittingTimes h = hitting_times(chain);
        CHECK(h.values[chain.start_indices[0]] == doctest::Approx(1.0));
    }
}

TEST_CASE("exact cover times of hand-solved graphs") {
    CHECK(exact_cover_time(gen_path(2), EvolutionRule::bernoulli(0.5)) == doctest::Approx(2.0));
    CHECK(exact_cover_time(gen_path(3), EvolutionRule::bernoulli(1.0)) == doctest::Approx(5.0));
    CHECK(exact_cover_time(gen_clique(3), EvolutionRule::bernoulli(1.0)) == doctest::Approx(3.0));

    // Worst start of P3 is the middle node.
    CHECK(exact_cover_time(gen_path(3), EvolutionRule::bernoulli(1.0), StartPolicy::Fixed, 0) ==
          doctest::Approx(4.0));
    CHECK(exact_cover_time(gen_path(3), EvolutionRule::bernoulli(1.0), StartPolicy::Fixed, 1) ==
          doctest::Approx(5.0));
}

TEST_CASE("collapsed chain marginalizes the full chain") {
    for (double p : {0.2, 0.5, 0.9}) {
        const double full = exact_cover_time(gen_path(3), EvolutionRule::bernoulli(p));
        const double collapsed = collapsed_rwa_chain_k0(gen_path(3), p);
        CHECK(std::abs(full - collapsed) <= 1e-9);
    }
    CHECK(collapsed_rwa_chain_k0(gen_path(2), 0.5) == doctest::Approx(2.0));
    CHECK(collapsed_rwa_chain_k0(gen_clique(3), 1.0) == doctest::Approx(3.0));
}

TEST_CASE("marginalization holds on random graphs") {
    Rng rng = make_rng(314159);
    for (int it = 0; it < 10; ++it) {
        const std::size_t n = 2 + uniform_index(rng, 5);
        const StaticGraph g = gen_random_threshold(n, 0.3 + 0.6 * uniform01(rng), rng);
        const double p = 0.05 + 0.9 * uniform01(rng);
        const double full = exact_cover_time(g, EvolutionRule::bernoulli(p));
        const double collapsed = collapsed_rwa_chain_k0(g, p);
        CHECK(std::abs(full - collapsed) <= 1e-9);
    }
}

TEST_CASE("collapsed chain agrees with the rational oracle") {
    for (double p : {0.3, 0.7, 1.0}) {
        const StaticGraph g = gen_lollipop(5, 3);
        const oracle::Rat exact = oracle::rwa_cover_time(g, oracle::Rat(p)).worst;
        CHECK(std::abs(collapsed_rwa_chain_k0(g, p) - exact.convert_to<double>()) <= 1e-11);
    }
}

TEST_CASE("static reduction: bernoulli(1) equals the srw cover time") {
    for (auto g : {gen_path(4), gen_lollipop(5, 3)}) {
        const double chain = exact_cover_time(g, EvolutionRule::bernoulli(1.0));
        const double srw = collapsed_rwa_chain_k0(g, 1.0);
        CHECK(std::abs(chain - srw) <= 1e-9);
    }
}

TEST_CASE("birth-death(p, 1-p) collapses to bernoulli(p)") {
    const StaticGraph g = gen_path(3);
    const double bd = exact_cover_time(g, EvolutionRule::birth_death(0.4, 0.6));
    const double ber = exact_cover_time(g, EvolutionRule::bernoulli(0.4));
    CHECK(std::abs(bd - ber) <= 1e-9);
}

TEST_CASE("p2 birth-death cover time solves by hand") {
    // From the all-dead window the walker crosses at the edge's first alive
    // step, a geometric(p) wait: 1/p regardless of q.
    for (double q : {0.2, 0.9}) {
        const double v = exact_cover_time(gen_path(2), EvolutionRule::birth_death(0.3, q));
        CHECK(std::abs(v - 1.0 / 0.3) <= 1e-9);
    }

    // Maximizing over initial windows adds the alive-start case, whose wait
    // is 1 + q/p; with q > 1-p that beats the all-dead start.
    ChainOptions maximize;
    maximize.maximize_over_windows = true;
    const double worst =
        exact_cover_time(gen_path(2), EvolutionRule::birth_death(0.3, 0.9), StartPolicy::Sweep, 0, maximize);
    CHECK(std::abs(worst - (1.0 + 0.9 / 0.3)) <= 1e-9);
}

TEST_CASE("birth-death exact chain agrees with simulation") {
    // The exact value assumes every start from the all-dead window, so the
    // Monte-Carlo side must not chain trial windows.
    const StaticGraph g = gen_path(3);
    const EvolutionRule bd = EvolutionRule::birth_death(0.3, 0.2);
    const double exact = exact_cover_time(g, bd, StartPolicy::Fixed, 1);
    ExperimentConfig cfg;
    cfg.rule = bd;
    cfg.trials = 10000;
    cfg.seed = 606;
    cfg.start = 1;
    cfg.chaining = false;
    const CoverTimeEstimate est = estimate_cover_time(g, cfg);
    CHECK(std::abs(est.mean - exact) <= 3 * est.std_error);
}

TEST_CASE("birth-death exact values respond to history") {
    // q < 1-p keeps edges sticky, so covering gets easier than Bernoulli(p)
    // from an alive-rich history, harder from all-dead starts at tiny p.
    const StaticGraph g = gen_clique(3);
    const double bd = exact_cover_time(g, EvolutionRule::birth_death(0.3, 0.2));
    CHECK(bd > 0);
    const double ber = exact_cover_time(g, EvolutionRule::bernoulli(0.3));
    CHECK(bd != doctest::Approx(ber).epsilon(1e-6));
}

TEST_CASE("state counts respect the exponential bound") {
    for (auto g : {gen_path(4), gen_clique(4), gen_lollipop(5, 3)}) {
        ChainOptions opts;
        opts.collapse_absorbing = false;
        std::vector<NodeId> starts;
        for (NodeId v = 0; v < g.node_count(); ++v) starts.push_back(v);
        for (const EvolutionRule& rule :
             {EvolutionRule::bernoulli(0.5), EvolutionRule::birth_death(0.3, 0.2)}) {
            const Chain chain = enumerate_chain(g, rule, starts, opts);
            CHECK(static_cast<double>(chain.state_count()) <= chain_state_bound(g, rule));
        }
    }
}

TEST_CASE("maximizing over initial windows can only increase the value") {
    const StaticGraph g = gen_path(3);
    const EvolutionRule bd = EvolutionRule::birth_death(0.2, 0.6);
    ChainOptions maximize;
    maximize.maximize_over_windows = true;
    const double fixed_window = exact_cover_time(g, bd);
    const double max_window = exact_cover_time(g, bd, StartPolicy::Sweep, 0, maximize);
    CHECK(max_window >= fixed_window - 1e-12);
}

TEST_CASE("large collapsed chains take the sparse solver path") {
    // K14 at p = 0.5: 14 * 2^13 transient states. Coupon-collector form on a
    // clique gives the independent value (n-1) H_{n-1} / (1 - (1-p)^(n-1)).
    const StaticGraph g = gen_clique(14);
    std::vector<NodeId> starts{0};
    const Chain chain = build_collapsed_k0_chain(g, 0.5, starts);
    CHECK(chain.state_count() > 5000);
    const HittingTimes h = hitting_times(chain);
    CHECK_FALSE(h.dense);
    CHECK(h.residual <= 1e-9);

    double harmonic = 0;
    for (int i = 1; i <= 13; ++i) harmonic += 1.0 / i;
    const double expected = 13.0 * harmonic / (1.0 - std::pow(0.5, 13.0));
    CHECK(std::abs(h.values[chain.start_indices[0]] - expected) <= 1e-6);
}

TEST_CASE("state cap produces a named error") {
    const StaticGraph g = gen_clique(4);
    ChainOptions opts;
    opts.state_cap = 3;
    try {
        enumerate_chain(g, EvolutionRule::bernoulli(0.5), NodeId{0}, opts);
        FAIL("expected StateCapError");
    } catch (const StateCapError& e) {
        CHECK(e.cap() == 3);
        CHECK(e.estimated() > 0);
        CHECK(std::string(e.what()).find("cap") != std::string::npos);
    }
}

TEST_CASE("unreachable absorption is reported with the offending state") {
    const StaticGraph p2 = gen_path(2);
    const Chain chain = enumerate_chain(p2, EvolutionRule::bernoulli(0.0), NodeId{0});
    try {
        hitting_times(chain);
        FAIL("expected AbsorptionUnreachableError");
    } catch (const AbsorptionUnreachableError& e) {
        CHECK(std::string(e.what()).find("pos=") != std::string::npos);
        CHECK(e.state() < chain.state_count());
    }
}

TEST_CASE("chain dump emits state and triplet tables") {
    const StaticGraph p2 = gen_path(2);
    const Chain chain = enumerate_chain(p2, EvolutionRule::bernoulli(0.5), NodeId{0});
    std::ostringstream states, transitions;
    dump_chain(chain, states, transitions);

    std::istringstream sin(states.str());
    std::string line;
    std::size_t state_lines = 0;
    while (std::getline(sin, line)) ++state_lines;
    CHECK(state_lines == chain.state_count() + 1);

    std::istringstream tin(transitions.str());
    std::size_t transition_lines = 0;
    while (std::getline(tin, line)) ++transition_lines;
    CHECK(transition_lines == chain.prob.size() + 1);
    CHECK(transitions.str().rfind("row,col,prob\n", 0) == 0);
}

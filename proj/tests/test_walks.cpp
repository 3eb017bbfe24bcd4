#include <doctest.h>

#include <cmath>
#include <sstream>

#include "eue/walks.hpp"

using namespace eue;

TEST_CASE("rwa step distribution cases") {
    const StaticGraph k3 = gen_clique(3);

    // node 0 with alive neighbors {1, 2}
    GraphInstance both(k3.edge_count());
    both.set_alive(k3.edge_index(0, 1), true);
    both.set_alive(k3.edge_index(0, 2), true);
    const StepDistribution d2 = rwa_step_distribution(k3, both, 0);
    CHECK(d2.prob_of(1) == doctest::Approx(0.5));
    CHECK(d2.prob_of(2) == doctest::Approx(0.5));
    CHECK(d2.prob_of(0) == 0.0);

    // no alive incident edge: stay with probability 1
    const StepDistribution stay = rwa_step_distribution(k3, GraphInstance(k3.edge_count()), 0);
    CHECK(stay.entries.size() == 1);
    CHECK(stay.prob_of(0) == 1.0);

    // exactly one alive neighbor
    GraphInstance one(k3.edge_count());
    one.set_alive(k3.edge_index(0, 2), true);
    CHECK(rwa_step_distribution(k3, one, 0).prob_of(2) == 1.0);
}

TEST_CASE("step distributions sum to one") {
    Rng rng = make_rng(4242);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + static_cast<std::size_t>(uniform_index(rng, 6));
        const StaticGraph g = gen_random_threshold(n, 0.5, rng);
        GraphInstance inst(g.edge_count());
        for (EdgeId e = 0; e < g.edge_count(); ++e) inst.set_alive(e, uniform01(rng) < 0.4);
        const NodeId v = static_cast<NodeId>(uniform_index(rng, n));
        CHECK(rwa_step_distribution(g, inst, v).total() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("rwa with every edge alive matches the simple random walk law") {
    Rng rng = make_rng(7);
    for (std::size_t n : {3, 5, 7}) {
        const StaticGraph g = gen_random_threshold(n, 0.6, rng);
        const GraphInstance all(g.edge_count(), true);
        for (NodeId v = 0; v < n; ++v) {
            const StepDistribution d = rwa_step_distribution(g, all, v);
            CHECK(d.entries.size() == g.degree(v));
            for (NodeId u : g.neighbors(v))
                CHECK(d.prob_of(u) == doctest::Approx(1.0 / static_cast<double>(g.degree(v))));
        }
    }
}

TEST_CASE("step_rwa moves only on alive edges") {
    const StaticGraph p2 = gen_path(2);
    WalkerState s = WalkerState::start_at(p2, 0);
    Rng rng = make_rng(3);

    const WalkerState stayed = step_rwa(s, p2, GraphInstance(1), rng);
    CHECK(stayed.position == 0);
    CHECK(stayed.steps == 1);
    CHECK(stayed.covered.count() == 1);

    const WalkerState crossed = step_rwa(s, p2, GraphInstance::from_mask(1, 1), rng);
    CHECK(crossed.position == 1);
    CHECK(crossed.covered.all());
}

TEST_CASE("step_rwd pending semantics") {
    const StaticGraph p2 = gen_path(2);
    Rng rng = make_rng(9);

    // d(v) = 1: the pending target is the unique neighbor.
    WalkerState s = WalkerState::start_at(p2, 0);
    const WalkerState waiting = step_rwd(s, p2, GraphInstance(1), rng);
    CHECK(waiting.position == 0);
    CHECK(waiting.pending_target == 1);
    CHECK(waiting.steps == 1);

    // Pending edge alive: move and clear.
    const WalkerState moved = step_rwd(waiting, p2, GraphInstance::from_mask(1, 1), rng);
    CHECK(moved.position == 1);
    CHECK_FALSE(moved.pending_target.has_value());
    CHECK(moved.covered.all());

    // Pending edge dead: position and pending retained.
    const WalkerState still = step_rwd(waiting, p2, GraphInstance(1), rng);
    CHECK(still.position == 0);
    CHECK(still.pending_target == 1);
    CHECK(still.steps == 2);
}

TEST_CASE("rwd clears pending only by crossing that edge") {
    const StaticGraph k3 = gen_clique(3);
    Rng rng = make_rng(17);
    WalkerState s = WalkerState::start_at(k3, 0);
    const EvolutionRule rule = EvolutionRule::bernoulli(0.4);
    HistoryWindow window = HistoryWindow::all_dead(k3, rule);
    for (int i = 0; i < 300; ++i) {
        window.push(evolve_instance(k3, rule, window, rng));
        const std::optional<NodeId> pending_before = s.pending_target;
        const NodeId pos_before = s.position;
        s = step_rwd(s, k3, window.current(), rng);
        if (pending_before && !s.pending_target) CHECK(s.position == *pending_before);
        if (pending_before && s.pending_target) {
            CHECK(s.position == pos_before);
            CHECK(*s.pending_target == *pending_before);
        }
    }
}

TEST_CASE("cover walk bookkeeping and determinism") {
    const StaticGraph g = gen_lollipop(5, 3);
    const EvolutionRule rule = EvolutionRule::bernoulli(0.5);

    Rng a = make_rng(1001), b = make_rng(1001);
    const WalkResult ra = run_cover_walk(g, rule, Strategy::RWA, 0, HistoryWindow::all_dead(g, rule), a);
    const WalkResult rb = run_cover_walk(g, rule, Strategy::RWA, 0, HistoryWindow::all_dead(g, rule), b);
    CHECK(ra.steps == rb.steps);
    CHECK(ra.final_window == rb.final_window);
    CHECK(ra.steps >= g.node_count() - 1);
}

TEST_CASE("trajectory trace is line oriented and monotone in coverage") {
    const StaticGraph g = gen_path(3);
    const EvolutionRule rule = EvolutionRule::bernoulli(0.7);
    std::ostringstream trace;
    WalkOptions opts;
    opts.trace = &trace;
    Rng rng = make_rng(5);
    const WalkResult r = run_cover_walk(g, rule, Strategy::RWA, 1, HistoryWindow::all_dead(g, rule), rng, opts);
    std::istringstream lines(trace.str());
    std::string line;
    std::uint64_t count = 0;
    while (std::getline(lines, line)) {
        ++count;
        CHECK(line.rfind("step=", 0) == 0);
        CHECK(line.find(" inst=0x") != std::string::npos);
        CHECK(line.find(" pos=") != std::string::npos);
    }
    CHECK(count == r.steps);
}

TEST_CASE("p2 rwa cover time is geometric with mean 1/p") {
    const StaticGraph p2 = gen_path(2);
    const EvolutionRule rule = EvolutionRule::bernoulli(0.5);
    const int trials = 20000;
    double total = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(derive_seed(42, t));
        total += static_cast<double>(
            run_cover_walk(p2, rule, Strategy::RWA, 0, HistoryWindow::all_dead(p2, rule), rng).steps);
    }
    const double mean = total / trials;
    // geometric(1/2): variance 2, sigma of the mean = sqrt(2/trials)
    CHECK(std::abs(mean - 2.0) <= 3 * std::sqrt(2.0 / trials));
}

TEST_CASE("srw from the middle of P3 covers in 5 expected steps") {
    const StaticGraph p3 = gen_path(3);
    const EvolutionRule ignored = EvolutionRule::bernoulli(0.123);
    const int trials = 20000;
    double total = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_rng(derive_seed(7, t));
        total += static_cast<double>(
            run_cover_walk(p3, ignored, Strategy::SRW, 1, HistoryWindow::all_dead(p3, ignored), rng).steps);
    }
    CHECK(std::abs(total / trials - 5.0) <= 0.2);
}

TEST_CASE("rwa at p=1 is the simple random walk, trial by trial") {
    const StaticGraph g = gen_lollipop(6, 4);
    const EvolutionRule one = EvolutionRule::bernoulli(1.0);
    for (int t = 0; t < 50; ++t) {
        Rng a = make_rng(derive_seed(9, t)), b = make_rng(derive_seed(9, t));
        const std::uint64_t rwa = run_cover_walk(g, one, Strategy::RWA, 0, HistoryWindow::all_dead(g, one), a).steps;
        const std::uint64_t srw = run_cover_walk(g, one, Strategy::SRW, 0, HistoryWindow::all_dead(g, one), b).steps;
        CHECK(rwa == srw);
    }
}

TEST_CASE("zero-probability rule hits the step limit guard") {
    const StaticGraph p2 = gen_path(2);
    const EvolutionRule dead = EvolutionRule::bernoulli(0.0);
    WalkOptions opts;
    opts.step_limit = 1000;
    Rng rng = make_rng(1);
    CHECK_THROWS_AS(run_cover_walk(p2, dead, Strategy::RWA, 0, HistoryWindow::all_dead(p2, dead), rng, opts),
                    StepLimitError);
}

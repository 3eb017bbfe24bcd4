#include <doctest.h>

#include <cmath>

#include "eue/bounds.hpp"
#include "eue/exact.hpp"

using namespace eue;

namespace {

std::vector<StaticGraph> identity_suite() {
    std::vector<StaticGraph> suite;
    suite.push_back(gen_path(2));
    suite.push_back(gen_path(3));
    suite.push_back(gen_path(4));
    suite.push_back(gen_clique(3));
    suite.push_back(gen_clique(4));
    suite.push_back(gen_lollipop(5, 3));
    suite.push_back(gen_lollipop(8, 5));
    return suite;
}

} // namespace

TEST_CASE("rwd k0 report: expected value and generic cap") {
    CHECK(rwd_k0_bounds(28, 1.0).upper == doctest::Approx(28));
    CHECK(rwd_k0_bounds(28, 0.5).lower == doctest::Approx(56));
    CHECK(rwd_k0_bounds(28, 0.5).upper == doctest::Approx(56));

    const BoundReport capped = rwd_k0_bounds(5, 1.0, 2, 3);
    CHECK(capped.generic_cap == doctest::Approx(8)); // 2m(n-1)/p = 2*2*2
    CHECK(capped.generic_cap >= 5);                  // dominates the exact P3 value
    CHECK(std::isnan(rwd_k0_bounds(5, 1.0).generic_cap));

    CHECK_THROWS_AS(rwd_k0_bounds(28, 0.0), std::invalid_argument);
}

TEST_CASE("rwa k0 bound spot values") {
    const BoundReport t2 = rwa_k0_bounds(29, 0.1, 7, 9);
    CHECK(t2.lower == doctest::Approx(47.3407932835677).epsilon(1e-10)); // 29/(1-0.9^9)
    CHECK(t2.upper == doctest::Approx(55.5871720907926).epsilon(1e-10)); // 29/(1-0.9^7)

    const BoundReport t3 = rwa_k0_bounds(33, 0.5, 3, 7);
    CHECK(t3.lower == doctest::Approx(33.2598425196850).epsilon(1e-10));
    CHECK(t3.upper == doctest::Approx(37.7142857142857).epsilon(1e-10));

    const BoundReport collapse = rwa_k0_bounds(42, 1.0, 3, 9);
    CHECK(collapse.lower == 42.0);
    CHECK(collapse.upper == 42.0);

    CHECK_THROWS_AS(rwa_k0_bounds(29, 0.0, 7, 9), std::invalid_argument);
    CHECK_THROWS_AS(rwa_k0_bounds(29, 0.5, 0, 9), std::invalid_argument);
    CHECK_THROWS_AS(rwa_k0_bounds(29, 0.5, 9, 7), std::invalid_argument);
}

TEST_CASE("rwd k1 bounds via xi") {
    const BoundReport a = rwd_k1_bounds(30, 0.3, 0.2);
    CHECK(a.lower == doctest::Approx(37.5)); // 30 / 0.8
    CHECK(a.upper == doctest::Approx(100));  // 30 / 0.3

    const BoundReport b = rwd_k1_bounds(28, 0.5, 0.5);
    CHECK(b.lower == doctest::Approx(56));
    CHECK(b.upper == doctest::Approx(56));

    const BoundReport c = rwd_k1_bounds(42, 1.0, 0.0);
    CHECK(c.lower == 42.0);
    CHECK(c.upper == 42.0);

    CHECK_THROWS_AS(rwd_k1_bounds(30, 0.0, 0.5), std::invalid_argument);  // xi_min = 0
    CHECK_THROWS_AS(rwd_k1_bounds(30, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("electric hitting times of hand-solved networks") {
    const StaticGraph p3 = gen_path(3);
    CHECK(electric_hitting_time(ElectricalNetwork(p3, 1.0), 0, 2) == doctest::Approx(4.0));
    CHECK(electric_hitting_time(ElectricalNetwork(p3, 0.5), 0, 2) == doctest::Approx(8.0));

    const StaticGraph k3 = gen_clique(3);
    CHECK(electric_hitting_time(ElectricalNetwork(k3, 1.0), 0, 1) == doctest::Approx(2.0));

    CHECK_THROWS_AS(ElectricalNetwork(p3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(electric_hitting_time(ElectricalNetwork(p3, 1.0), 1, 1), std::invalid_argument);
}

TEST_CASE("effective resistance and commute times") {
    const StaticGraph p3 = gen_path(3);
    const ElectricalNetwork net(p3, 1.0);
    CHECK(effective_resistance(net, 0, 2) == doctest::Approx(2.0)); // two 1-ohm resistors in series
    CHECK(commute_time(net, 0, 2) == doctest::Approx(8.0));        // 2*2*2 = 4 + 4

    const StaticGraph k3 = gen_clique(3);
    const ElectricalNetwork knet(k3, 1.0);
    CHECK(effective_resistance(knet, 0, 1) == doctest::Approx(2.0 / 3.0)); // 1 ohm parallel to 2
    CHECK(commute_time(knet, 0, 1) == doctest::Approx(4.0));

    const StaticGraph p2 = gen_path(2);
    CHECK(effective_resistance(ElectricalNetwork(p2, 0.25), 0, 1) == doctest::Approx(4.0)); // one 1/p resistor
}

TEST_CASE("potential route equals the first-step route everywhere") {
    for (const StaticGraph& g : identity_suite())
        for (double p : {0.25, 0.5, 1.0}) {
            const ElectricalNetwork net(g, p);
            for (NodeId v = 0; v < g.node_count(); ++v) {
                const std::vector<double> potential = electric_hitting_times_to(net, v);
                const std::vector<double> first_step = first_step_hitting_times_to(net, v);
                for (NodeId u = 0; u < g.node_count(); ++u)
                    CHECK(std::abs(potential[u] - first_step[u]) <= 1e-9);
            }
        }
}

TEST_CASE("commute identity: H_uv + H_vu = 2m R_uv") {
    for (const StaticGraph& g : identity_suite())
        for (double p : {0.25, 0.5, 1.0}) {
            const ElectricalNetwork net(g, p);
            const double m2 = 2.0 * static_cast<double>(g.edge_count());
            for (NodeId u = 0; u < g.node_count(); ++u)
                for (NodeId v = static_cast<NodeId>(u + 1); v < g.node_count(); ++v) {
                    const double sum = electric_hitting_time(net, u, v) + electric_hitting_time(net, v, u);
                    CHECK(std::abs(sum - m2 * effective_resistance(net, u, v)) <= 1e-9);
                }
        }
}

TEST_CASE("halving p doubles hitting times and resistances") {
    const StaticGraph g = gen_lollipop(6, 4);
    const ElectricalNetwork full(g, 1.0), half(g, 0.5);
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (u == v) continue;
            CHECK(std::abs(2.0 * electric_hitting_time(full, u, v) - electric_hitting_time(half, u, v)) <= 1e-9);
            CHECK(std::abs(2.0 * effective_resistance(full, u, v) - effective_resistance(half, u, v)) <= 1e-9);
        }
}

TEST_CASE("generic rwd cap dominates the exact cover time") {
    for (const StaticGraph& g : identity_suite())
        for (double p : {0.25, 0.5, 1.0}) {
            const double cg = collapsed_rwa_chain_k0(g, 1.0);
            const BoundReport r =
                rwd_k0_bounds(cg, p, g.edge_count(), g.node_count());
            CHECK(r.generic_cap >= r.upper); // 2m(n-1)/p >= C_G/p
        }
}

TEST_CASE("sandwich bound shape for k=0 rwa") {
    for (const StaticGraph& g : identity_suite())
        for (double p : {0.1, 0.3, 0.5, 0.9}) {
            const DegreeStats deg = degree_stats(g);
            const double cg = collapsed_rwa_chain_k0(g, 1.0);
            const BoundReport r = rwa_k0_bounds(cg, p, deg.min_degree, deg.max_degree);
            CHECK(r.lower <= r.upper);
            if (deg.min_degree == deg.max_degree) CHECK(r.lower == r.upper); // regular graphs collapse
        }
}

TEST_CASE("lollipop lower-bound surface") {
    // The worst-case family: the RWA lower bound evaluated on L^{2n/3}_n
    // with its measured static cover time.
    const StaticGraph lolli = gen_lollipop(9, 6);
    const DegreeStats deg = degree_stats(lolli);
    const double cg = collapsed_rwa_chain_k0(lolli, 1.0);
    const BoundReport r = rwa_k0_bounds(cg, 0.3, deg.min_degree, deg.max_degree);
    CHECK(r.lower > cg); // delays make temporal covering strictly slower
    CHECK(r.lower <= r.upper);
}

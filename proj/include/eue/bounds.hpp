#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "eue/graph.hpp"

namespace eue {

struct BoundInputs {
    double cover_time = std::numeric_limits<double>::quiet_NaN(); // C_G
    double p = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    std::size_t m = 0;
    std::size_t n = 0;
};

struct BoundReport {
    double lower = 0;
    double upper = 0;
    const char* formula = "";
    BoundInputs inputs;
    // 2m(n-1)/p cap, set by rwd_k0_bounds when m and n are given.
    double generic_cap = std::numeric_limits<double>::quiet_NaN();
};

// RWD, history-free: expected cover time C_G/p (lower == upper), plus the
// generic 2m(n-1)/p cap when m, n > 0.
BoundReport rwd_k0_bounds(double cover_time, double p, std::size_t m = 0, std::size_t n = 0);

// RWA, history-free: [C_G/(1-(1-p)^Dmax), C_G/(1-(1-p)^dmin)].
BoundReport rwa_k0_bounds(double cover_time, double p, std::size_t min_degree, std::size_t max_degree);

// RWD under Birth-Death: [C_G/xi_max, C_G/xi_min] with xi_min = min{p, 1-q},
// xi_max = max{p, 1-q}. Requires xi_min > 0.
BoundReport rwd_k1_bounds(double cover_time, double p, double q);

// The underlying graph with every edge a resistor of 1/p ohms.
struct ElectricalNetwork {
    const StaticGraph* graph = nullptr;
    double p = 1.0;

    ElectricalNetwork(const StaticGraph& g, double edge_alive_prob);
};

// Potential difference between u and v when d(w) amperes enter every node w
// and 2m leave v; equals the RWD hitting time H_{u,v}.
double electric_hitting_time(const ElectricalNetwork& net, NodeId u, NodeId v);
// All potentials against target v in one solve (entry v is 0).
std::vector<double> electric_hitting_times_to(const ElectricalNetwork& net, NodeId v);

// Independent route to the same quantities: the first-step system
// H_{u,v} = 1/p + (1/d(u)) sum_{w in N(u)} H_{w,v}.
std::vector<double> first_step_hitting_times_to(const ElectricalNetwork& net, NodeId v);

// Potential difference per unit current between u and v.
double effective_resistance(const ElectricalNetwork& net, NodeId u, NodeId v);
// 2m * R_{u,v}.
double commute_time(const ElectricalNetwork& net, NodeId u, NodeId v);

} // namespace eue

#include "eue/bounds.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace eue {

BoundReport rwd_k0_bounds(double cover_time, double p, std::size_t m, std::size_t n) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("rwd_k0_bounds requires p in (0,1]");
    if (!(cover_time > 0.0)) throw std::invalid_argument("rwd_k0_bounds requires C_G > 0");
    BoundReport r;
    r.formula = "rwd-k0";
    r.lower = r.upper = cover_time / p;
    r.inputs.cover_time = cover_time;
    r.inputs.p = p;
    r.inputs.m = m;
    r.inputs.n = n;
    if (m > 0 && n > 0) r.generic_cap = 2.0 * static_cast<double>(m) * static_cast<double>(n - 1) / p;
    return r;
}

BoundReport rwa_k0_bounds(double cover_time, double p, std::size_t min_degree, std::size_t max_degree) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("rwa_k0_bounds requires p in (0,1]");
    if (min_degree < 1 || min_degree > max_degree)
        throw std::invalid_argument("rwa_k0_bounds requires 1 <= delta <= Delta");
    BoundReport r;
    r.formula = "rwa-k0";
    r.lower = cover_time / (1.0 - std::pow(1.0 - p, static_cast<double>(max_degree)));
    r.upper = cover_time / (1.0 - std::pow(1.0 - p, static_cast<double>(min_degree)));
    r.inputs.cover_time = cover_time;
    r.inputs.p = p;
    r.inputs.min_degree = min_degree;
    r.inputs.max_degree = max_degree;
    return r;
}

BoundReport rwd_k1_bounds(double cover_time, double p, double q) {
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("rwd_k1_bounds requires probabilities in [0,1]");
    const double xi_min = std::min(p, 1.0 - q);
    const double xi_max = std::max(p, 1.0 - q);
    if (xi_min <= 0.0) throw std::invalid_argument("rwd_k1_bounds requires xi_min = min{p, 1-q} > 0");
    BoundReport r;
    r.formula = "rwd-k1";
    r.lower = cover_time / xi_max;
    r.upper = cover_time / xi_min;
    r.inputs.cover_time = cover_time;
    r.inputs.p = p;
    r.inputs.q = q;
    return r;
}

ElectricalNetwork::ElectricalNetwork(const StaticGraph& g, double edge_alive_prob) : graph(&g), p(edge_alive_prob) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("electrical network requires p in (0,1]");
}

namespace {

// Weighted Laplacian with conductance p per edge, grounded at `ground`
// (row/column removed). Returns potentials with entry `ground` = 0; rhs[w]
// is the current injected at node w != ground.
std::vector<double> solve_grounded(const ElectricalNetwork& net, NodeId ground,
                                   const std::vector<double>& injections) {
    const StaticGraph& g = *net.graph;
    const auto n = static_cast<Eigen::Index>(g.node_count());
    std::vector<Eigen::Index> reduced_of(g.node_count(), -1);
    Eigen::Index next = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (v != ground) reduced_of[v] = next++;

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n - 1, n - 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n - 1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (v == ground) continue;
        const auto r = reduced_of[v];
        L(r, r) = net.p * static_cast<double>(g.degree(v));
        for (NodeId u : g.neighbors(v))
            if (u != ground) L(r, reduced_of[u]) -= net.p;
        b(r) = injections[v];
    }
    Eigen::VectorXd x = L.partialPivLu().solve(b);

    std::vector<double> potentials(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (v != ground) potentials[v] = x(reduced_of[v]);
    return potentials;
}

} // namespace

std::vector<double> electric_hitting_times_to(const ElectricalNetwork& net, NodeId v) {
    const StaticGraph& g = *net.graph;
    if (v >= g.node_count()) throw std::invalid_argument("node out of range");
    // d(w) amperes into every w; the withdrawal of 2m at v is absorbed by
    // the grounded node.
    std::vector<double> injections(g.node_count());
    for (NodeId w = 0; w < g.node_count(); ++w) injections[w] = static_cast<double>(g.degree(w));
    return solve_grounded(net, v, injections);
}

double electric_hitting_time(const ElectricalNetwork& net, NodeId u, NodeId v) {
    if (u == v) throw std::invalid_argument("hitting time requires u != v");
    return electric_hitting_times_to(net, v)[u];
}

std::vector<double> first_step_hitting_times_to(const ElectricalNetwork& net, NodeId v) {
    const StaticGraph& g = *net.graph;
    if (v >= g.node_count()) throw std::invalid_argument("node out of range");
    // H_u = 1/p + (1/d(u)) sum_{w in N(u)} H_w for u != v, H_v = 0.
    std::vector<Eigen::Index> reduced_of(g.node_count(), -1);
    Eigen::Index next = 0;
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (u != v) reduced_of[u] = next++;

    const auto t = static_cast<Eigen::Index>(g.node_count() - 1);
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(t, t);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(t, 1.0 / net.p);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (u == v) continue;
        const double inv_d = 1.0 / static_cast<double>(g.degree(u));
        for (NodeId w : g.neighbors(u))
            if (w != v) A(reduced_of[u], reduced_of[w]) -= inv_d;
    }
    Eigen::VectorXd h = A.partialPivLu().solve(b);

    std::vector<double> out(g.node_count(), 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (u != v) out[u] = h(reduced_of[u]);
    return out;
}

double effective_resistance(const ElectricalNetwork& net, NodeId u, NodeId v) {
    const StaticGraph& g = *net.graph;
    if (u >= g.node_count() || v >= g.node_count()) throw std::invalid_argument("node out of range");
    if (u == v) throw std::invalid_argument("effective resistance requires u != v");
    std::vector<double> injections(g.node_count(), 0.0);
    injections[u] = 1.0;
    const std::vector<double> potentials = solve_grounded(net, v, injections);
    return potentials[u];
}

double commute_time(const ElectricalNetwork& net, NodeId u, NodeId v) {
    return 2.0 * static_cast<double>(net.graph->edge_count()) * effective_resistance(net, u, v);
}

} // namespace eue

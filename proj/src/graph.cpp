#include "eue/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace eue {

StaticGraph::StaticGraph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edge_list) : n_(n) {
    if (n < 2)
        throw GraphError(GraphError::Kind::BadArgument, "graph needs at least 2 nodes, got " + std::to_string(n));

    edges_.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
        if (u >= n || v >= n)
            throw GraphError(GraphError::Kind::NodeOutOfRange,
                             "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" +
                                 std::to_string(n));
        if (u == v)
            throw GraphError(GraphError::Kind::SelfLoop, "self-loop at node " + std::to_string(u));
        if (u > v) std::swap(u, v);
        edges_.push_back({u, v});
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] == edges_[i - 1])
            throw GraphError(GraphError::Kind::DuplicateEdge,
                             "duplicate edge (" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")");

    adj_.assign(n_, {});
    inc_.assign(n_, {});
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        adj_[edges_[e].u].push_back(edges_[e].v);
        adj_[edges_[e].v].push_back(edges_[e].u);
        inc_[edges_[e].u].push_back(e);
        inc_[edges_[e].v].push_back(e);
    }

    // Connectivity: every node reachable from node 0.
    std::vector<char> seen(n_, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId u : adj_[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
    }
    if (reached != n_)
        throw GraphError(GraphError::Kind::Disconnected,
                         "graph is disconnected: " + std::to_string(reached) + " of " + std::to_string(n_) +
                             " nodes reachable from node 0");
}

EdgeId StaticGraph::edge_index(NodeId u, NodeId v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v}, [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    if (it != edges_.end() && *it == Edge{u, v}) return static_cast<EdgeId>(it - edges_.begin());
    return kNoEdge;
}

StaticGraph build_graph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edge_list) {
    return StaticGraph(n, std::move(edge_list));
}

StaticGraph gen_path(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return StaticGraph(n, std::move(edges));
}

StaticGraph gen_clique(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return StaticGraph(n, std::move(edges));
}

StaticGraph gen_random_threshold(std::size_t n, double threshold, Rng& rng) {
    if (threshold < 0.0 || threshold > 1.0)
        throw GraphError(GraphError::Kind::BadArgument, "threshold must be in [0,1]");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            if (j == i + 1) continue; // backbone edge, unconditionally present
            if (uniform01(rng) < threshold) edges.emplace_back(i, j);
        }
    return StaticGraph(n, std::move(edges));
}

StaticGraph gen_lollipop(std::size_t n, std::size_t k) {
    if (k < 2 || k > n - 1)
        throw GraphError(GraphError::Kind::BadArgument,
                         "lollipop clique size must satisfy 2 <= k <= n-1, got k=" + std::to_string(k) +
                             ", n=" + std::to_string(n));
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < k; ++i)
        for (NodeId j = i + 1; j < k; ++j) edges.emplace_back(i, j);
    edges.emplace_back(static_cast<NodeId>(k - 1), static_cast<NodeId>(k)); // cut-edge
    for (NodeId i = static_cast<NodeId>(k); i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return StaticGraph(n, std::move(edges));
}

DegreeStats degree_stats(const StaticGraph& g) {
    DegreeStats s{g.degree(0), g.degree(0)};
    for (NodeId v = 1; v < g.node_count(); ++v) {
        s.min_degree = std::min(s.min_degree, g.degree(v));
        s.max_degree = std::max(s.max_degree, g.degree(v));
    }
    return s;
}

void write_edge_list(const StaticGraph& g, std::ostream& out) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw GraphError(GraphError::Kind::ParseError, "edge list line " + std::to_string(line) + ": " + what);
}

} // namespace

StaticGraph read_edge_list(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) parse_fail(1, "missing header \"n m\"");
    ++lineno;
    std::istringstream header(line);
    long long n = 0, m = 0;
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0)
        parse_fail(lineno, "expected header \"n m\"");

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line)) parse_fail(lineno + 1, "unexpected end of file, expected " + std::to_string(m) + " edges");
        ++lineno;
        std::istringstream ls(line);
        long long u = 0, v = 0;
        if (!(ls >> u >> v) || (ls >> extra) || u < 0 || v < 0)
            parse_fail(lineno, "expected \"u v\"");
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return StaticGraph(static_cast<std::size_t>(n), std::move(edges));
}

} // namespace eue

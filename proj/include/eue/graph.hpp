#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eue/random.hpp"

namespace eue {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

class GraphError : public std::runtime_error {
public:
    enum class Kind { SelfLoop, DuplicateEdge, NodeOutOfRange, Disconnected, BadArgument, ParseError };

    GraphError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Unordered pair, canonicalized as u < v.
struct Edge {
    NodeId u;
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct DegreeStats {
    std::size_t min_degree = 0; // delta
    std::size_t max_degree = 0; // Delta
};

// Simple connected undirected graph, immutable after construction.
// Edges are stored sorted by (u, v) with u < v; the position of an edge in
// edges() is its EdgeId, the canonical edge order used everywhere else
// (instances, evolution draws, chain enumeration).
class StaticGraph {
public:
    // Validates: ids in range, no self-loops, no duplicates, connected.
    StaticGraph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edge_list);

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    Edge edge(EdgeId e) const { return edges_[e]; }

    std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
    // Edge ids aligned with neighbors(v).
    std::span<const EdgeId> incident_edges(NodeId v) const { return inc_[v]; }
    std::size_t degree(NodeId v) const { return adj_[v].size(); }

    // kNoEdge when {u, v} is not a possible edge.
    EdgeId edge_index(NodeId u, NodeId v) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adj_;
    std::vector<std::vector<EdgeId>> inc_;
};

StaticGraph build_graph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edge_list);

StaticGraph gen_path(std::size_t n);
StaticGraph gen_clique(std::size_t n);

// Backbone path v0-v1-...-v_{n-1} plus every non-backbone pair independently
// with probability `threshold`. One rng draw per non-backbone pair, pairs in
// canonical (i, j), i < j order.
StaticGraph gen_random_threshold(std::size_t n, double threshold, Rng& rng);

// Clique on {0..k-1}, path on {k..n-1}, cut-edge {k-1, k}.
StaticGraph gen_lollipop(std::size_t n, std::size_t k);

DegreeStats degree_stats(const StaticGraph& g);

// Edge-list text format: first line "n m", then m lines "u v" in canonical
// order. read_edge_list rejects malformed input with line-numbered errors.
void write_edge_list(const StaticGraph& g, std::ostream& out);
StaticGraph read_edge_list(std::istream& in);

} // namespace eue

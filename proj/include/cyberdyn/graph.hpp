#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cyberdyn {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected attack-defense structure on nodes 0..n-1.
///
/// Edges are stored canonically (u < v) and sorted. The value is immutable once built;
/// neighbour lists are precomputed in ascending id order.
class Graph {
public:
    Graph() = default;

    /// Throws InvalidArgument on self-loops, out-of-range endpoints or duplicate edges.
    /// (u, v) and (v, u) are the same edge.
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const NodeId> neighbors(NodeId u) const noexcept
    {
        return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
    std::size_t max_degree() const noexcept;
    bool has_edge(NodeId u, NodeId v) const noexcept;

    /// Sorted degree sequence; an isomorphism invariant.
    std::vector<std::size_t> degree_multiset() const;

    friend bool operator==(const Graph& a, const Graph& b) noexcept
    {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
};

Graph make_complete(std::size_t n);
Graph make_star(std::size_t n);
Graph make_path(std::size_t n);
/// Each pair (u < v), in lexicographic order, is kept iff one uniform draw is < p.
Graph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Right operand's ids are shifted by g1.node_count(); no cross edges.
Graph disjoint_union(const Graph& g1, const Graph& g2);
/// Disjoint union plus every cross pair.
Graph full_interconnect(const Graph& g1, const Graph& g2);
/// Disjoint union plus the listed (g1-node, g2-node) pairs, deduplicated.
Graph bridge_interconnect(const Graph& g1, const Graph& g2, std::span<const Edge> cross_edges);

nlohmann::json graph_to_json(const Graph& g);
/// Throws ParseError with a field path on schema or invariant violations.
Graph graph_from_json(const nlohmann::json& j);

Graph read_graph(const std::filesystem::path& path);
void write_graph(const Graph& g, const std::filesystem::path& path);

/// Cross-edge list file for bridge composition: {"edges": [[u, v], ...]} with u in g1, v in g2.
std::vector<Edge> read_edge_list(const std::filesystem::path& path);

} // namespace cyberdyn

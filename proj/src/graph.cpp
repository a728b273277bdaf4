#include "cyberdyn/graph.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "cyberdyn/error.hpp"
#include "cyberdyn/rng.hpp"

namespace cyberdyn {

namespace {

std::string edge_text(NodeId u, NodeId v)
{
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

void check_node_count(std::size_t n)
{
    if (n == 0)
        throw InvalidArgument("n must be >= 1");
    if (n > std::numeric_limits<NodeId>::max())
        throw InvalidArgument("n exceeds the node id range");
}

} // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
    if (n_ > std::numeric_limits<NodeId>::max())
        throw InvalidArgument("node count exceeds the node id range");
    for (auto& [u, v] : edges_) {
        if (u == v)
            throw InvalidArgument("self-loop " + edge_text(u, v));
        if (u >= n_ || v >= n_)
            throw InvalidArgument("edge " + edge_text(u, v) + " out of range for n=" + std::to_string(n_));
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw InvalidArgument("duplicate edge " + edge_text(dup->first, dup->second));

    std::vector<std::size_t> degree(n_, 0);
    for (const auto& [u, v] : edges_) {
        ++degree[u];
        ++degree[v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i)
        offsets_[i + 1] = offsets_[i] + degree[i];
    adjacency_.resize(offsets_[n_]);
    auto fill = std::vector<std::size_t>(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adjacency_[fill[u]++] = v;
        adjacency_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n_; ++i)
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
}

std::size_t Graph::max_degree() const noexcept
{
    std::size_t best = 0;
    for (std::size_t i = 0; i < n_; ++i)
        best = std::max(best, offsets_[i + 1] - offsets_[i]);
    return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept
{
    if (u >= n_ || v >= n_)
        return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::size_t> Graph::degree_multiset() const
{
    std::vector<std::size_t> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        out[i] = degree(static_cast<NodeId>(i));
    std::sort(out.begin(), out.end());
    return out;
}

Graph make_complete(std::size_t n)
{
    check_node_count(n);
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph make_star(std::size_t n)
{
    check_node_count(n);
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v)
        edges.emplace_back(0, v);
    return Graph(n, std::move(edges));
}

Graph make_path(std::size_t n)
{
    check_node_count(n);
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v)
        edges.emplace_back(v - 1, v);
    return Graph(n, std::move(edges));
}

Graph make_erdos_renyi(std::size_t n, double p, std::uint64_t seed)
{
    check_node_count(n);
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidArgument("p must be in [0, 1]");
    rng::Engine engine(seed);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng::bernoulli(engine, p))
                edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

namespace {

std::vector<Edge> shifted_union_edges(const Graph& g1, const Graph& g2)
{
    const auto shift = static_cast<NodeId>(g1.node_count());
    std::vector<Edge> edges = g1.edges();
    edges.reserve(g1.edge_count() + g2.edge_count());
    for (const auto& [u, v] : g2.edges())
        edges.emplace_back(u + shift, v + shift);
    return edges;
}

} // namespace

Graph disjoint_union(const Graph& g1, const Graph& g2)
{
    return Graph(g1.node_count() + g2.node_count(), shifted_union_edges(g1, g2));
}

Graph full_interconnect(const Graph& g1, const Graph& g2)
{
    auto edges = shifted_union_edges(g1, g2);
    const auto n1 = static_cast<NodeId>(g1.node_count());
    const auto n2 = static_cast<NodeId>(g2.node_count());
    edges.reserve(edges.size() + std::size_t{n1} * n2);
    for (NodeId u = 0; u < n1; ++u)
        for (NodeId v = 0; v < n2; ++v)
            edges.emplace_back(u, v + n1);
    return Graph(g1.node_count() + g2.node_count(), std::move(edges));
}

Graph bridge_interconnect(const Graph& g1, const Graph& g2, std::span<const Edge> cross_edges)
{
    const auto n1 = static_cast<NodeId>(g1.node_count());
    std::vector<Edge> cross;
    cross.reserve(cross_edges.size());
    for (const auto& [u, v] : cross_edges) {
        if (u >= g1.node_count() || v >= g2.node_count())
            throw InvalidArgument("bridge edge " + edge_text(u, v) + " out of range (n1=" +
                                  std::to_string(g1.node_count()) + ", n2=" + std::to_string(g2.node_count()) + ")");
        cross.emplace_back(u, v + n1);
    }
    std::sort(cross.begin(), cross.end());
    cross.erase(std::unique(cross.begin(), cross.end()), cross.end());

    auto edges = shifted_union_edges(g1, g2);
    edges.insert(edges.end(), cross.begin(), cross.end());
    return Graph(g1.node_count() + g2.node_count(), std::move(edges));
}

nlohmann::json graph_to_json(const Graph& g)
{
    auto edges = nlohmann::json::array();
    for (const auto& [u, v] : g.edges())
        edges.push_back({u, v});
    return {{"n", g.node_count()}, {"edges", std::move(edges)}};
}

namespace {

NodeId node_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0 ||
        j.get<std::int64_t>() > std::numeric_limits<NodeId>::max())
        throw ParseError("expected a non-negative integer node id", 0, field);
    return j.get<NodeId>();
}

std::vector<Edge> edge_pairs_from_json(const nlohmann::json& edges)
{
    if (!edges.is_array())
        throw ParseError("expected an array", 0, "edges");
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string field = "edges[" + std::to_string(i) + "]";
        const auto& e = edges[i];
        if (!e.is_array() || e.size() != 2)
            throw ParseError("expected a pair [u, v]", 0, field);
        out.emplace_back(node_from_json(e[0], field + "[0]"), node_from_json(e[1], field + "[1]"));
    }
    return out;
}

nlohmann::json parse_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto offset = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
        throw ParseError(path.string() + ": malformed JSON", line);
    }
}

} // namespace

Graph graph_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ParseError("expected an object with keys n, edges");
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 0)
        throw ParseError("expected a non-negative integer", 0, "n");
    if (!j.contains("edges"))
        throw ParseError("missing", 0, "edges");
    const auto n = j["n"].get<std::size_t>();
    const auto edges = edge_pairs_from_json(j["edges"]);

    // Report invariant violations against the offending entry.
    std::vector<Edge> canonical;
    canonical.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v] = edges[i];
        const std::string field = "edges[" + std::to_string(i) + "]";
        if (u == v)
            throw ParseError("self-loop " + edge_text(u, v), 0, field);
        if (u >= n || v >= n)
            throw ParseError("edge " + edge_text(u, v) + " out of range for n=" + std::to_string(n), 0, field);
        canonical.emplace_back(std::min(u, v), std::max(u, v));
    }
    auto sorted = canonical;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
        const auto first = std::find(canonical.begin(), canonical.end(), *dup);
        const auto second = std::find(std::next(first), canonical.end(), *dup);
        throw ParseError("duplicate edge " + edge_text(dup->first, dup->second), 0,
                         "edges[" + std::to_string(second - canonical.begin()) + "]");
    }
    return Graph(n, std::move(canonical));
}

Graph read_graph(const std::filesystem::path& path)
{
    const auto j = parse_file(path);
    try {
        return graph_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_graph(const Graph& g, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    out << graph_to_json(g).dump() << '\n';
}

std::vector<Edge> read_edge_list(const std::filesystem::path& path)
{
    const auto j = parse_file(path);
    try {
        if (!j.is_object() || !j.contains("edges"))
            throw ParseError("expected an object with key edges");
        return edge_pairs_from_json(j["edges"]);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace cyberdyn

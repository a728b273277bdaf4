#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cyberdyn/error.hpp"
#include "cyberdyn/graph.hpp"
#include "cyberdyn/spectral.hpp"
#include "support.hpp"

using namespace cyberdyn;

namespace {

std::filesystem::path temp_file(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "cyberdyn_graph_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream(path) << text;
}

} // namespace

TEST_CASE("make_complete")
{
    CHECK(make_complete(1).node_count() == 1);
    CHECK(make_complete(1).edge_count() == 0);
    CHECK(make_complete(8).edge_count() == 28);
    CHECK(make_complete(3).edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
    CHECK_THROWS_AS(make_complete(0), InvalidArgument);
}

TEST_CASE("star, path and Erdos-Renyi generators")
{
    const auto star = make_star(5);
    CHECK(star.edge_count() == 4);
    for (const auto& [u, v] : star.edges())
        CHECK(u == 0);
    CHECK(make_path(3).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(make_erdos_renyi(10, 0.0, 99).edge_count() == 0);
    CHECK(make_erdos_renyi(10, 1.0, 99) == make_complete(10));
    CHECK(make_erdos_renyi(30, 0.3, 7) == make_erdos_renyi(30, 0.3, 7));
    CHECK_THROWS_AS(make_erdos_renyi(5, 1.5, 0), InvalidArgument);
    CHECK_THROWS_AS(make_star(0), InvalidArgument);
    CHECK_THROWS_AS(make_path(0), InvalidArgument);
}

TEST_CASE("Graph rejects invariant violations and canonicalises order")
{
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InvalidArgument);
    const Graph g(3, {{2, 0}, {1, 0}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK(g.degree(0) == 2);
}

TEST_CASE("disjoint_union")
{
    const auto g = disjoint_union(make_complete(4), make_complete(6));
    CHECK(g.node_count() == 10);
    CHECK(g.edge_count() == 21);
    CHECK(g.has_edge(4, 5));
    CHECK_FALSE(g.has_edge(0, 4));

    const auto k5 = make_complete(5);
    CHECK(disjoint_union(k5, Graph()) == k5);
    CHECK(disjoint_union(Graph(), k5) == k5);

    const auto two = disjoint_union(make_complete(1), make_complete(1));
    CHECK(two.node_count() == 2);
    CHECK(two.edge_count() == 0);
}

TEST_CASE("full_interconnect")
{
    CHECK(full_interconnect(make_complete(6), make_complete(6)) == make_complete(12));
    CHECK(full_interconnect(make_complete(1), make_complete(1)) == make_complete(2));
    const auto g = full_interconnect(make_path(2), make_path(2));
    CHECK(g.node_count() == 4);
    CHECK(g.edge_count() == 6);
    CHECK(g == make_complete(4));
}

TEST_CASE("bridge_interconnect")
{
    const auto k3 = make_complete(3);
    CHECK(bridge_interconnect(k3, k3, {}) == disjoint_union(k3, k3));
    std::vector<Edge> all;
    for (NodeId u = 0; u < 3; ++u)
        for (NodeId v = 0; v < 3; ++v)
            all.emplace_back(u, v);
    CHECK(bridge_interconnect(k3, k3, all) == full_interconnect(k3, k3));
    const std::vector<Edge> one{{0, 0}};
    CHECK(bridge_interconnect(k3, k3, one).edge_count() == 7);
    const std::vector<Edge> repeated{{0, 0}, {0, 0}, {2, 1}};
    CHECK(bridge_interconnect(k3, k3, repeated).edge_count() == 8);
    const std::vector<Edge> bad{{0, 3}};
    CHECK_THROWS_AS(bridge_interconnect(k3, k3, bad), InvalidArgument);
}

TEST_CASE("property: join of complete graphs is complete")
{
    for (std::size_t a = 1; a <= 30; ++a)
        for (std::size_t b = 1; b <= 30; ++b)
            REQUIRE(full_interconnect(make_complete(a), make_complete(b)) == make_complete(a + b));
}

TEST_CASE("property: edge counts and commutativity of composition")
{
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g1 = testing_support::random_graph(gen);
        const auto g2 = testing_support::random_graph(gen);
        const auto join = full_interconnect(g1, g2);
        REQUIRE(join.edge_count() == g1.edge_count() + g2.edge_count() + g1.node_count() * g2.node_count());

        const auto join_swapped = full_interconnect(g2, g1);
        const auto uni = disjoint_union(g1, g2);
        const auto uni_swapped = disjoint_union(g2, g1);
        REQUIRE(join.degree_multiset() == join_swapped.degree_multiset());
        REQUIRE(uni.degree_multiset() == uni_swapped.degree_multiset());
        REQUIRE(spectral_radius(join).lambda1 == doctest::Approx(spectral_radius(join_swapped).lambda1).epsilon(1e-9));
        REQUIRE(spectral_radius(uni).lambda1 == doctest::Approx(spectral_radius(uni_swapped).lambda1).epsilon(1e-9));
    }
}

TEST_CASE("read_graph/write_graph round-trip")
{
    const auto path = temp_file("k5.json");
    write_graph(make_complete(5), path);
    CHECK(read_graph(path) == make_complete(5));

    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = testing_support::random_graph(gen, 40);
        write_graph(g, path);
        REQUIRE(read_graph(path) == g);
    }
}

TEST_CASE("read_graph accepts either endpoint order")
{
    const auto path = temp_file("reversed.json");
    write_text(path, R"({"n": 3, "edges": [[1, 0], [2, 1]]})");
    CHECK(read_graph(path) == make_path(3));
}

TEST_CASE("read_graph diagnostics")
{
    const auto path = temp_file("bad.json");

    write_text(path, R"({"n": 5, "edges": [[0, 1], [0, 0]]})");
    try {
        read_graph(path);
        FAIL("expected parse-error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("edges[1]") != std::string::npos);
        CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
    }

    write_text(path, R"({"n": 5, "edges": [[7, 1]]})");
    try {
        read_graph(path);
        FAIL("expected parse-error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("edges[0]") != std::string::npos);
        CHECK(std::string(e.what()).find("out of range") != std::string::npos);
    }

    write_text(path, "{\"n\": 3,\n \"edges\": [[0, 1],\n [1 2]]}");
    try {
        read_graph(path);
        FAIL("expected parse-error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    write_text(path, R"({"n": 3, "edges": [[0, 1], [1, 0]]})");
    CHECK_THROWS_AS(read_graph(path), ParseError);
    write_text(path, R"({"n": -1, "edges": []})");
    CHECK_THROWS_AS(read_graph(path), ParseError);
    write_text(path, R"({"n": 3, "edges": [[0, 1, 2]]})");
    CHECK_THROWS_AS(read_graph(path), ParseError);
    CHECK_THROWS_AS(read_graph(temp_file("missing.json")), ParseError);
}

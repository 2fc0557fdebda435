#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "streamtri/stream.hpp"
#include "streamtri/synthetic.hpp"

using namespace streamtri;
using oracles::DisjointSets;
using oracles::TempFile;

namespace {

std::multiset<Edge> as_multiset(std::span<const Edge> edges) {
    return {edges.begin(), edges.end()};
}

}  // namespace

TEST_CASE("parse_edge_list handles comments, duplicates and self-loops") {
    {
        TempFile f("1 2\n2 3\n# c\n3 1\n");
        ParseWarnings w;
        auto edges = parse_edge_list(f.path(), &w);
        CHECK(as_multiset(edges) == std::multiset<Edge>{{1, 2}, {2, 3}, {1, 3}});
        CHECK(w.self_loops == 0);
        CHECK(w.duplicates == 0);
    }
    {
        TempFile f("1 2\n2 1\n");
        ParseWarnings w;
        auto edges = parse_edge_list(f.path(), &w);
        CHECK(edges == std::vector<Edge>{{1, 2}});
        CHECK(w.duplicates == 1);
    }
    {
        TempFile f("5 5\n");
        ParseWarnings w;
        auto edges = parse_edge_list(f.path(), &w);
        CHECK(edges.empty());
        CHECK(w.self_loops == 1);
    }
}

TEST_CASE("parse_edge_list reports the offending line") {
    TempFile f("1 2\n2 x\n");
    try {
        parse_edge_list(f.path());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    CHECK_THROWS_AS(parse_edge_list("/nonexistent/file.txt"), IoError);

    TempFile one_token("1 2\n7\n");
    CHECK_THROWS_AS(parse_edge_list(one_token.path()), ParseError);
    TempFile three_tokens("1 2 3\n");
    CHECK_THROWS_AS(parse_edge_list(three_tokens.path()), ParseError);
}

TEST_CASE("parse accepts tabs and CRLF") {
    TempFile f("# header\n10\t20\r\n20\t30\r\n");
    auto edges = parse_edge_list(f.path());
    CHECK(edges == std::vector<Edge>{{10, 20}, {20, 30}});
}

TEST_CASE("ordering tokens round-trip") {
    for (OrderingKind k : kAllOrderings) CHECK(parse_ordering(ordering_name(k)) == k);
    CHECK(parse_ordering("nope") == std::nullopt);
}

TEST_CASE("order_stream is deterministic in (edge set, kind, seed)") {
    std::vector<Edge> edges = {{1, 2}, {2, 3}};
    for (OrderingKind k : kAllOrderings)
        CHECK(order_stream(edges, k, 7) == order_stream(edges, k, 7));

    // The listing order of the set must not matter.
    auto set_a = random_edge_set(25, 80, 6);
    auto set_b = set_a;
    std::reverse(set_b.begin(), set_b.end());
    for (OrderingKind k : kAllOrderings)
        CHECK(order_stream(set_a, k, 3) == order_stream(set_b, k, 3));
}

TEST_CASE("every ordering is a permutation of the edge set") {
    auto edges = random_edge_set(40, 150, 99);
    auto expected = as_multiset(edges);
    for (OrderingKind k : kAllOrderings) {
        for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
            EdgeStream s = order_stream(edges, k, seed);
            CHECK(as_multiset(s) == expected);
        }
    }
}

TEST_CASE("degree-sorted-desc lists the highest-degree vertex's edges first") {
    std::vector<Edge> path = {{1, 2}, {2, 3}};
    EdgeStream s = order_stream(path, OrderingKind::DegreeSortedDesc, 0);
    // Vertex 2 has degree 2; both its edges precede anything else.
    CHECK(as_multiset(std::span(s).subspan(0, 2)) == std::multiset<Edge>{{1, 2}, {2, 3}});

    // Star plus one leaf-leaf edge: hub edges come out contiguously first.
    auto star = star_graph(5);
    star.push_back(Edge{1, 2});
    EdgeStream t = order_stream(star, OrderingKind::DegreeSortedDesc, 3);
    for (std::size_t i = 0; i < 4; ++i) CHECK(t[i].u == 0);
}

TEST_CASE("bfs ordering starts with a spanning tree on connected graphs") {
    SUBCASE("K4") {
        auto k4 = complete_graph(4);
        for (std::uint64_t seed : {0ULL, 5ULL, 9ULL}) {
            EdgeStream s = order_stream(k4, OrderingKind::BfsThenRest, seed);
            DisjointSets dsu;
            for (std::size_t i = 0; i < 3; ++i) CHECK(dsu.unite(s[i].u, s[i].v));
            CHECK(dsu.find(0) == dsu.find(3));
        }
    }
    SUBCASE("random connected graphs") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto edges = random_connected_edge_set(30, 80, 100 + seed);
            EdgeStream s = order_stream(edges, OrderingKind::BfsThenRest, seed);
            DisjointSets dsu;
            for (std::size_t i = 0; i < 29; ++i) CHECK(dsu.unite(s[i].u, s[i].v));
            for (VertexId v = 1; v < 30; ++v) CHECK(dsu.find(0) == dsu.find(v));
        }
    }
}

TEST_CASE("bfs and dfs cover disconnected graphs") {
    // Two triangles, no connection.
    std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 2}, {10, 11}, {11, 12}, {10, 12}};
    for (OrderingKind k : {OrderingKind::BfsThenRest, OrderingKind::Dfs})
        CHECK(as_multiset(order_stream(edges, k, 4)) == as_multiset(edges));
}

TEST_CASE("stream files round-trip") {
    auto edges = random_edge_set(20, 60, 8);
    EdgeStream stream = order_stream(edges, OrderingKind::RandomPermutation, 2);
    TempFile f("");
    write_stream(stream, f.path());
    CHECK(read_stream(f.path()) == stream);

    write_stream(EdgeStream{}, f.path());
    CHECK(read_stream(f.path()).empty());

    EdgeStream three = {{1, 2}, {9, 17}, {2, 3}};
    write_stream(three, f.path());
    CHECK(read_stream(f.path()) == three);

    CHECK_THROWS_AS(write_stream(three, "/nonexistent/dir/out.txt"), IoError);
}

TEST_CASE("read_stream rejects malformed stream files") {
    TempFile dup("1 2\n1 2\n");
    CHECK_THROWS_AS(read_stream(dup.path()), ParseError);
    TempFile loop("4 4\n");
    CHECK_THROWS_AS(read_stream(loop.path()), ParseError);
}

TEST_CASE("StreamReader yields canonical edges one at a time") {
    TempFile f("# c\n3 1\n5 5\n2 4\n");
    StreamReader reader(f.path());
    CHECK(reader.next() == Edge{1, 3});
    CHECK(reader.next() == Edge{2, 4});
    CHECK(reader.next() == std::nullopt);
    CHECK(reader.self_loops_skipped() == 1);
}

TEST_CASE("order_stream on an empty set is empty") {
    CHECK(order_stream(std::vector<Edge>{}, OrderingKind::RandomPermutation, 1).empty());
}

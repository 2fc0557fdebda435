#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "oracles.hpp"
#include "streamtri/graph.hpp"
#include "streamtri/stream.hpp"
#include "streamtri/synthetic.hpp"

using namespace streamtri;

TEST_CASE("normalize_edge canonicalizes and rejects self-loops") {
    CHECK(normalize_edge(5, 2) == Edge{2, 5});
    CHECK(normalize_edge(2, 5) == Edge{2, 5});
    CHECK(normalize_edge(3, 3) == std::nullopt);
}

TEST_CASE("form_wedge finds the shared vertex") {
    Edge e12{1, 2}, e23{2, 3}, e34{3, 4};
    CHECK(form_wedge(e12, e23) == Wedge{2, 1, 3});
    CHECK(form_wedge(e12, e12) == std::nullopt);
    CHECK(form_wedge(e12, e34) == std::nullopt);
}

TEST_CASE("form_wedge is symmetric") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<VertexId> pick(0, 9);
    for (int i = 0; i < 500; ++i) {
        auto e1 = normalize_edge(pick(rng), pick(rng));
        auto e2 = normalize_edge(pick(rng), pick(rng));
        if (!e1 || !e2) continue;
        CHECK(form_wedge(*e1, *e2) == form_wedge(*e2, *e1));
    }
}

TEST_CASE("closes recognizes exactly the closing pair") {
    Wedge w{2, 1, 3};
    CHECK(closes(w, Edge{1, 3}));
    CHECK_FALSE(closes(w, Edge{1, 2}));
    CHECK_FALSE(closes(w, Edge{3, 4}));
}

TEST_CASE("exact_count on tiny graphs") {
    auto k3 = AdjacencyGraph::from_edges(complete_graph(3));
    ExactStats s = exact_count(k3);
    CHECK(s.n == 3);
    CHECK(s.m == 3);
    CHECK(s.W == 3);
    CHECK(s.T == 1);
    CHECK(s.kappa == doctest::Approx(1.0));

    std::vector<Edge> path = {{1, 2}, {2, 3}};
    ExactStats p = exact_count(AdjacencyGraph::from_edges(path));
    CHECK(p.n == 3);
    CHECK(p.m == 2);
    CHECK(p.W == 1);
    CHECK(p.T == 0);
    CHECK(p.kappa == 0.0);
}

TEST_CASE("brute_force_count on K3, K4 and the empty graph") {
    CHECK(brute_force_count(AdjacencyGraph::from_edges(complete_graph(3))).T == 1);

    ExactStats k4 = brute_force_count(AdjacencyGraph::from_edges(complete_graph(4)));
    CHECK(k4.W == 12);
    CHECK(k4.T == 4);
    CHECK(k4.kappa == doctest::Approx(1.0));

    ExactStats empty = brute_force_count(AdjacencyGraph{});
    CHECK(empty.W == 0);
    CHECK(empty.T == 0);
    CHECK(empty.kappa == 0.0);
}

TEST_CASE("exact_count agrees with the triple-enumeration oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 5 + trial % 46;
        std::size_t max_m = n * (n - 1) / 2;
        std::size_t m = 1 + rng() % max_m;
        auto g = AdjacencyGraph::from_edges(random_edge_set(n, m, rng()));
        ExactStats fast = exact_count(g);
        ExactStats slow = brute_force_count(g);
        CHECK(fast == slow);
        CHECK(3 * fast.T <= fast.W);
        CHECK(fast.kappa >= 0.0);
        CHECK(fast.kappa <= 1.0);
    }
}

TEST_CASE("seed-fixed random graph matches oracle value") {
    // 50-vertex Erdos-Renyi-style graph at p = 0.2 => 245 of 1225 pairs.
    auto edges = random_edge_set(50, 245, 777);
    auto g = AdjacencyGraph::from_edges(edges);
    ExactStats slow = brute_force_count(g);
    CHECK(exact_count(g) == slow);
}

TEST_CASE("future_closed_wedges on single-triangle streams") {
    std::vector<Edge> s1 = {{1, 2}, {2, 3}, {1, 3}};
    auto fc1 = future_closed_wedges(s1);
    REQUIRE(fc1.size() == 1);
    CHECK(fc1[0].wedge == Wedge{2, 1, 3});
    CHECK(fc1[0].formed_at == 2);

    std::vector<Edge> s2 = {{1, 3}, {1, 2}, {2, 3}};
    auto fc2 = future_closed_wedges(s2);
    REQUIRE(fc2.size() == 1);
    CHECK(fc2[0].wedge == Wedge{1, 2, 3});
    CHECK(fc2[0].formed_at == 2);
}

TEST_CASE("future_closed_wedges emits exactly T wedges, any ordering") {
    std::mt19937_64 rng(31);
    auto edges = random_edge_set(30, 120, 5);
    ExactStats exact = brute_force_count(AdjacencyGraph::from_edges(edges));
    REQUIRE(exact.T > 0);

    for (int perm = 0; perm < 8; ++perm) {
        EdgeStream stream(edges.begin(), edges.end());
        std::shuffle(stream.begin(), stream.end(), rng);
        auto fc = future_closed_wedges(stream);
        CHECK(fc.size() == exact.T);

        // Wedges are distinct and their closing edge arrives after formation.
        std::set<Wedge> values;
        std::unordered_map<Edge, std::uint64_t, EdgeHash> arrival;
        for (std::size_t i = 0; i < stream.size(); ++i) arrival[stream[i]] = i + 1;
        for (const TimedWedge& tw : fc) {
            CHECK(values.insert(tw.wedge).second);
            CHECK(arrival.at(tw.wedge.closing_pair()) > tw.formed_at);
        }
    }
}

#pragma once

#include <cstdint>
#include <vector>

#include "streamtri/graph.hpp"

namespace streamtri {

// Seeded generators for the bundled test corpus. All are deterministic in
// (parameters, seed) and return canonical distinct edges in insertion order.

// m distinct uniform edges on vertices 0..n-1. Requires m <= C(n,2).
std::vector<Edge> random_edge_set(std::size_t n, std::size_t m, std::uint64_t seed);

// Uniform random spanning tree plus m-(n-1) extra random edges; connected.
std::vector<Edge> random_connected_edge_set(std::size_t n, std::size_t m, std::uint64_t seed);

// Random edges where a `triangle_fraction` share of insertion steps drop a
// full random triangle instead of a single edge, boosting transitivity.
std::vector<Edge> triangle_boosted_edge_set(std::size_t n, std::size_t m,
                                            double triangle_fraction, std::uint64_t seed);

// Complete graph on vertices 0..n-1.
std::vector<Edge> complete_graph(std::size_t n);

// Path 0-1-...-n-1.
std::vector<Edge> path_graph(std::size_t n);

// Star with center 0 and leaves 1..n-1.
std::vector<Edge> star_graph(std::size_t n);

}  // namespace streamtri

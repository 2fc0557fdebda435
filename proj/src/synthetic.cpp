#include "streamtri/synthetic.hpp"

#include <random>
#include <stdexcept>
#include <unordered_set>

namespace streamtri {

namespace {

using Rng = std::mt19937_64;

struct EdgeSetBuilder {
    std::vector<Edge> edges;
    std::unordered_set<Edge, EdgeHash> seen;

    bool add(VertexId a, VertexId b) {
        auto e = normalize_edge(a, b);
        if (!e || !seen.insert(*e).second) return false;
        edges.push_back(*e);
        return true;
    }
};

void check_capacity(std::size_t n, std::size_t m) {
    if (n < 2 || m > n * (n - 1) / 2)
        throw std::invalid_argument("edge count exceeds C(n,2)");
}

}  // namespace

std::vector<Edge> random_edge_set(std::size_t n, std::size_t m, std::uint64_t seed) {
    check_capacity(n, m);
    Rng rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    EdgeSetBuilder b;
    b.edges.reserve(m);
    while (b.edges.size() < m) b.add(pick(rng), pick(rng));
    return b.edges;
}

std::vector<Edge> random_connected_edge_set(std::size_t n, std::size_t m, std::uint64_t seed) {
    check_capacity(n, m);
    if (m < n - 1) throw std::invalid_argument("too few edges for a connected graph");
    Rng rng(seed);
    EdgeSetBuilder b;
    b.edges.reserve(m);
    for (VertexId v = 1; v < n; ++v) {
        std::uniform_int_distribution<VertexId> parent(0, v - 1);
        b.add(parent(rng), v);
    }
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    while (b.edges.size() < m) b.add(pick(rng), pick(rng));
    return b.edges;
}

std::vector<Edge> triangle_boosted_edge_set(std::size_t n, std::size_t m,
                                            double triangle_fraction, std::uint64_t seed) {
    check_capacity(n, m);
    if (n < 3) throw std::invalid_argument("need at least 3 vertices");
    Rng rng(seed);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    EdgeSetBuilder b;
    b.edges.reserve(m);
    while (b.edges.size() < m) {
        if (coin(rng) < triangle_fraction) {
            VertexId x = pick(rng), y = pick(rng), z = pick(rng);
            if (x == y || y == z || x == z) continue;
            b.add(x, y);
            if (b.edges.size() < m) b.add(y, z);
            if (b.edges.size() < m) b.add(x, z);
        } else {
            b.add(pick(rng), pick(rng));
        }
    }
    return b.edges;
}

std::vector<Edge> complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) edges.push_back(Edge{u, v});
    return edges;
}

std::vector<Edge> path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (VertexId v = 0; v + 1 < n; ++v) edges.push_back(Edge{v, v + 1});
    return edges;
}

std::vector<Edge> star_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (VertexId v = 1; v < n; ++v) edges.push_back(Edge{0, v});
    return edges;
}

}  // namespace streamtri

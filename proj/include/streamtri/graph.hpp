#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace streamtri {

// Vertex labels are arbitrary non-negative 64-bit integers; they need not be
// contiguous, and new labels appearing in a stream implicitly create vertices.
using VertexId = std::uint64_t;

// Canonical undirected edge: u < v always, never a self-loop.
struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Path of length two: edges {center,a} and {center,b}, endpoints stored a < b.
struct Wedge {
    VertexId center = 0;
    VertexId a = 0;
    VertexId b = 0;
    friend auto operator<=>(const Wedge&, const Wedge&) = default;

    // The edge whose arrival closes this wedge into a triangle.
    Edge closing_pair() const { return Edge{a, b}; }
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept;
};
struct WedgeHash {
    std::size_t operator()(const Wedge& w) const noexcept;
};

// Canonical edge from an unordered label pair; empty on a self-loop.
std::optional<Edge> normalize_edge(VertexId a, VertexId b);

// The wedge spanned by two edges sharing exactly one vertex; empty when the
// edges are identical or disjoint.
std::optional<Wedge> form_wedge(const Edge& e1, const Edge& e2);

// True iff e is the closing edge of w (w participates in a triangle with e).
bool closes(const Wedge& w, const Edge& e);

// Simple undirected graph as sorted adjacency lists, immutable once built.
class AdjacencyGraph {
  public:
    AdjacencyGraph() = default;

    // Deduplicates and drops self-loops; input edges need not be canonical.
    static AdjacencyGraph from_edges(std::span<const Edge> edges);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return m_; }
    std::size_t degree(VertexId v) const;
    const std::vector<VertexId>& neighbors(VertexId v) const;  // sorted
    bool has_edge(const Edge& e) const;

    const std::unordered_map<VertexId, std::vector<VertexId>>& adjacency() const {
        return adjacency_;
    }

  private:
    std::unordered_map<VertexId, std::vector<VertexId>> adjacency_;
    std::size_t m_ = 0;
};

struct ExactStats {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t W = 0;  // wedges, sum over v of C(d_v, 2)
    std::uint64_t T = 0;  // triangles, each counted once
    double kappa = 0.0;   // 3T/W, 0 when W = 0

    friend bool operator==(const ExactStats&, const ExactStats&) = default;
};

// Exact counts via degree-rank-ordered adjacency intersection; each triangle
// is found at its lowest-rank vertex. Handles multi-million-edge graphs.
ExactStats exact_count(const AdjacencyGraph& g);

// Independent oracle: enumerate all vertex triples. Cubic, small graphs only.
ExactStats brute_force_count(const AdjacencyGraph& g);

// A wedge together with the stream position at which its later edge arrived.
struct TimedWedge {
    Wedge wedge;
    std::uint64_t formed_at = 0;  // 1-based stream position
    friend auto operator<=>(const TimedWedge&, const TimedWedge&) = default;
};

// For each triangle whose edges arrive at positions i < j < k, the wedge
// {e_i, e_j} with formation time j. Exactly T wedges for a distinct-edge
// stream; their closing edges all arrive strictly later.
std::vector<TimedWedge> future_closed_wedges(std::span<const Edge> stream);

}  // namespace streamtri

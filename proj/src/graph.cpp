#include "streamtri/graph.hpp"

#include <algorithm>
#include <unordered_set>

namespace streamtri {

namespace {

// splitmix64 finalizer; good avalanche for packing two labels into one hash
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t binom2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

}  // namespace

std::size_t EdgeHash::operator()(const Edge& e) const noexcept {
    return static_cast<std::size_t>(mix64(e.u) ^ (mix64(e.v) << 1 | e.v >> 63));
}

std::size_t WedgeHash::operator()(const Wedge& w) const noexcept {
    return static_cast<std::size_t>(mix64(w.center ^ mix64(w.a + 1)) ^ mix64(w.b + 2));
}

std::optional<Edge> normalize_edge(VertexId a, VertexId b) {
    if (a == b) return std::nullopt;
    return a < b ? Edge{a, b} : Edge{b, a};
}

std::optional<Wedge> form_wedge(const Edge& e1, const Edge& e2) {
    if (e1 == e2) return std::nullopt;
    // Canonical edges that differ share at most one vertex.
    VertexId center, x, y;
    if (e1.u == e2.u) {
        center = e1.u; x = e1.v; y = e2.v;
    } else if (e1.u == e2.v) {
        center = e1.u; x = e1.v; y = e2.u;
    } else if (e1.v == e2.u) {
        center = e1.v; x = e1.u; y = e2.v;
    } else if (e1.v == e2.v) {
        center = e1.v; x = e1.u; y = e2.u;
    } else {
        return std::nullopt;
    }
    return x < y ? Wedge{center, x, y} : Wedge{center, y, x};
}

bool closes(const Wedge& w, const Edge& e) { return e == w.closing_pair(); }

AdjacencyGraph AdjacencyGraph::from_edges(std::span<const Edge> edges) {
    AdjacencyGraph g;
    std::unordered_set<Edge, EdgeHash> seen;
    seen.reserve(edges.size());
    for (const Edge& raw : edges) {
        auto e = normalize_edge(raw.u, raw.v);
        if (!e || !seen.insert(*e).second) continue;
        g.adjacency_[e->u].push_back(e->v);
        g.adjacency_[e->v].push_back(e->u);
        ++g.m_;
    }
    for (auto& [v, nbrs] : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

std::size_t AdjacencyGraph::degree(VertexId v) const {
    auto it = adjacency_.find(v);
    return it == adjacency_.end() ? 0 : it->second.size();
}

const std::vector<VertexId>& AdjacencyGraph::neighbors(VertexId v) const {
    static const std::vector<VertexId> kEmpty;
    auto it = adjacency_.find(v);
    return it == adjacency_.end() ? kEmpty : it->second;
}

bool AdjacencyGraph::has_edge(const Edge& e) const {
    auto it = adjacency_.find(e.u);
    if (it == adjacency_.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), e.v);
}

namespace {

// Rank vertices by (degree, label) and keep only higher-rank out-neighbors;
// every triangle then appears exactly once, at its lowest-rank vertex.
struct RankedGraph {
    std::vector<VertexId> vertex_of_rank;
    std::vector<std::vector<std::uint32_t>> out;  // ascending rank ids
};

RankedGraph build_ranked(const AdjacencyGraph& g) {
    RankedGraph r;
    r.vertex_of_rank.reserve(g.vertex_count());
    for (const auto& [v, nbrs] : g.adjacency()) r.vertex_of_rank.push_back(v);
    std::sort(r.vertex_of_rank.begin(), r.vertex_of_rank.end(),
              [&g](VertexId a, VertexId b) {
                  auto da = g.degree(a), db = g.degree(b);
                  return da != db ? da < db : a < b;
              });
    std::unordered_map<VertexId, std::uint32_t> rank;
    rank.reserve(r.vertex_of_rank.size());
    for (std::uint32_t i = 0; i < r.vertex_of_rank.size(); ++i)
        rank[r.vertex_of_rank[i]] = i;
    r.out.resize(r.vertex_of_rank.size());
    for (std::uint32_t ru = 0; ru < r.vertex_of_rank.size(); ++ru) {
        for (VertexId v : g.neighbors(r.vertex_of_rank[ru])) {
            std::uint32_t rv = rank[v];
            if (rv > ru) r.out[ru].push_back(rv);
        }
        std::sort(r.out[ru].begin(), r.out[ru].end());
    }
    return r;
}

template <typename OnTriangle>
void for_each_triangle(const RankedGraph& r, OnTriangle&& fn) {
    for (std::uint32_t ru = 0; ru < r.out.size(); ++ru) {
        for (std::uint32_t rv : r.out[ru]) {
            const auto& a = r.out[ru];
            const auto& b = r.out[rv];
            auto ia = a.begin(), ib = b.begin();
            while (ia != a.end() && ib != b.end()) {
                if (*ia < *ib) ++ia;
                else if (*ib < *ia) ++ib;
                else { fn(ru, rv, *ia); ++ia; ++ib; }
            }
        }
    }
}

}  // namespace

ExactStats exact_count(const AdjacencyGraph& g) {
    ExactStats s;
    s.n = g.vertex_count();
    s.m = g.edge_count();
    for (const auto& [v, nbrs] : g.adjacency()) s.W += binom2(nbrs.size());
    RankedGraph r = build_ranked(g);
    for_each_triangle(r, [&s](std::uint32_t, std::uint32_t, std::uint32_t) { ++s.T; });
    s.kappa = s.W > 0 ? 3.0 * static_cast<double>(s.T) / static_cast<double>(s.W) : 0.0;
    return s;
}

ExactStats brute_force_count(const AdjacencyGraph& g) {
    ExactStats s;
    s.n = g.vertex_count();
    s.m = g.edge_count();
    std::vector<VertexId> verts;
    verts.reserve(g.vertex_count());
    for (const auto& [v, nbrs] : g.adjacency()) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool ij = g.has_edge(Edge{verts[i], verts[j]});
            for (std::size_t k = j + 1; k < n; ++k) {
                int cnt = int(ij) + int(g.has_edge(Edge{verts[i], verts[k]})) +
                          int(g.has_edge(Edge{verts[j], verts[k]}));
                if (cnt == 2) s.W += 1;
                if (cnt == 3) { s.W += 3; s.T += 1; }
            }
        }
    }
    s.kappa = s.W > 0 ? 3.0 * static_cast<double>(s.T) / static_cast<double>(s.W) : 0.0;
    return s;
}

std::vector<TimedWedge> future_closed_wedges(std::span<const Edge> stream) {
    std::unordered_map<Edge, std::uint64_t, EdgeHash> arrival;
    arrival.reserve(stream.size());
    for (std::size_t i = 0; i < stream.size(); ++i)
        arrival.emplace(stream[i], static_cast<std::uint64_t>(i) + 1);

    AdjacencyGraph g = AdjacencyGraph::from_edges(stream);
    RankedGraph r = build_ranked(g);
    std::vector<TimedWedge> result;
    for_each_triangle(r, [&](std::uint32_t ru, std::uint32_t rv, std::uint32_t rw) {
        VertexId x = r.vertex_of_rank[ru];
        VertexId y = r.vertex_of_rank[rv];
        VertexId z = r.vertex_of_rank[rw];
        Edge sides[3] = {*normalize_edge(x, y), *normalize_edge(x, z), *normalize_edge(y, z)};
        std::sort(std::begin(sides), std::end(sides),
                  [&arrival](const Edge& a, const Edge& b) { return arrival[a] < arrival[b]; });
        result.push_back(TimedWedge{*form_wedge(sides[0], sides[1]), arrival[sides[1]]});
    });
    return result;
}

}  // namespace streamtri

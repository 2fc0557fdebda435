#include "streamtri/stream.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <iostream>
#include <queue>
#include <random>
#include <unordered_set>

namespace streamtri {

namespace {

using Rng = std::mt19937_64;

// Parses "u v" with arbitrary whitespace; returns false on a blank/comment
// line, throws ParseError on anything else that is not two u64 tokens.
bool parse_pair_line(std::string_view line, std::size_t line_no, VertexId& u, VertexId& v) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    };
    skip_ws();
    if (i == line.size() || line[i] == '#') return false;

    auto take_u64 = [&](VertexId& out) {
        const char* begin = line.data() + i;
        const char* end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc{} || ptr == begin)
            throw ParseError(line_no, "expected a non-negative integer vertex label");
        i = static_cast<std::size_t>(ptr - line.data());
    };
    take_u64(u);
    skip_ws();
    if (i == line.size()) throw ParseError(line_no, "expected two vertex labels, got one");
    take_u64(v);
    skip_ws();
    if (i != line.size()) throw ParseError(line_no, "trailing characters after edge");
    return true;
}

std::string_view chomp(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view ordering_name(OrderingKind k) {
    switch (k) {
        case OrderingKind::RandomPermutation: return "random";
        case OrderingKind::BfsThenRest: return "bfs";
        case OrderingKind::Dfs: return "dfs";
        case OrderingKind::DegreeSortedAsc: return "deg-asc";
        case OrderingKind::DegreeSortedDesc: return "deg-desc";
    }
    return "?";
}

std::optional<OrderingKind> parse_ordering(std::string_view s) {
    for (OrderingKind k : kAllOrderings)
        if (s == ordering_name(k)) return k;
    return std::nullopt;
}

std::vector<Edge> parse_edge_list(std::istream& in, ParseWarnings* warnings) {
    std::vector<Edge> edges;
    std::unordered_set<Edge, EdgeHash> seen;
    ParseWarnings local;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        VertexId u, v;
        if (!parse_pair_line(chomp(line), line_no, u, v)) continue;
        auto e = normalize_edge(u, v);
        if (!e) {
            ++local.self_loops;
            continue;
        }
        if (!seen.insert(*e).second) {
            ++local.duplicates;
            continue;
        }
        edges.push_back(*e);
    }
    if (warnings) *warnings = local;
    return edges;
}

std::vector<Edge> parse_edge_list(const std::string& path, ParseWarnings* warnings) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    return parse_edge_list(f, warnings);
}

namespace {

// Label-sorted vertex list and label-sorted adjacency, for deterministic
// traversal orders independent of hash-map iteration.
struct SortedAdjacency {
    std::vector<VertexId> verts;
    std::unordered_map<VertexId, std::vector<VertexId>> adj;

    explicit SortedAdjacency(std::span<const Edge> edges) {
        for (const Edge& e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        verts.reserve(adj.size());
        for (auto& [v, nbrs] : adj) {
            std::sort(nbrs.begin(), nbrs.end());
            verts.push_back(v);
        }
        std::sort(verts.begin(), verts.end());
    }
};

EdgeStream shuffled(std::vector<Edge> edges, Rng& rng) {
    std::shuffle(edges.begin(), edges.end(), rng);
    return edges;
}

// BFS forest from a random root, restarting at the lowest-labeled unvisited
// vertex; tree edges in discovery order, then non-tree edges shuffled.
// Callers pass label-sorted edges so the result depends only on the set.
EdgeStream bfs_then_rest(std::span<const Edge> edges, Rng& rng) {
    SortedAdjacency g(edges);
    EdgeStream out;
    out.reserve(edges.size());
    std::unordered_set<VertexId> visited;
    std::unordered_set<Edge, EdgeHash> emitted;

    auto bfs_from = [&](VertexId root) {
        std::queue<VertexId> q;
        visited.insert(root);
        q.push(root);
        while (!q.empty()) {
            VertexId u = q.front();
            q.pop();
            for (VertexId v : g.adj[u]) {
                if (visited.insert(v).second) {
                    Edge e = *normalize_edge(u, v);
                    emitted.insert(e);
                    out.push_back(e);
                    q.push(v);
                }
            }
        }
    };

    std::uniform_int_distribution<std::size_t> pick(0, g.verts.size() - 1);
    bfs_from(g.verts[pick(rng)]);
    for (VertexId v : g.verts)
        if (!visited.count(v)) bfs_from(v);

    std::vector<Edge> rest;
    for (const Edge& e : edges)
        if (!emitted.count(e)) rest.push_back(e);
    std::shuffle(rest.begin(), rest.end(), rng);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

// Edges in the order first examined by a depth-first traversal from a random
// root (restarting at the lowest-labeled unvisited vertex). The traversal
// visits every vertex, so it sees every edge.
EdgeStream dfs_order(std::span<const Edge> edges, Rng& rng) {
    SortedAdjacency g(edges);
    EdgeStream out;
    out.reserve(edges.size());
    std::unordered_set<VertexId> visited;
    std::unordered_set<Edge, EdgeHash> emitted;

    auto dfs_from = [&](VertexId root) {
        std::vector<std::pair<VertexId, std::size_t>> stack;  // (vertex, next neighbor idx)
        visited.insert(root);
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [u, idx] = stack.back();
            const auto& nbrs = g.adj[u];
            if (idx == nbrs.size()) {
                stack.pop_back();
                continue;
            }
            VertexId v = nbrs[idx++];
            Edge e = *normalize_edge(u, v);
            if (emitted.insert(e).second) out.push_back(e);
            if (visited.insert(v).second) stack.emplace_back(v, 0);
        }
    };

    std::uniform_int_distribution<std::size_t> pick(0, g.verts.size() - 1);
    dfs_from(g.verts[pick(rng)]);
    for (VertexId v : g.verts)
        if (!visited.count(v)) dfs_from(v);
    return out;
}

// Vertices sorted by degree (ties by label), each edge emitted at the earlier
// of its endpoints' positions. This is an incidence stream.
EdgeStream degree_sorted(std::span<const Edge> edges, bool ascending) {
    SortedAdjacency g(edges);
    std::stable_sort(g.verts.begin(), g.verts.end(), [&g, ascending](VertexId a, VertexId b) {
        std::size_t da = g.adj[a].size(), db = g.adj[b].size();
        if (da != db) return ascending ? da < db : da > db;
        return a < b;
    });
    EdgeStream out;
    out.reserve(edges.size());
    std::unordered_set<Edge, EdgeHash> emitted;
    for (VertexId v : g.verts)
        for (VertexId w : g.adj[v]) {
            Edge e = *normalize_edge(v, w);
            if (emitted.insert(e).second) out.push_back(e);
        }
    return out;
}

}  // namespace

EdgeStream order_stream(std::span<const Edge> edges, OrderingKind kind, std::uint64_t seed) {
    if (edges.empty()) return {};
    // Canonicalize so the stream is a function of the edge set, not of the
    // order the caller happened to list it in.
    std::vector<Edge> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end());
    Rng rng(seed);
    switch (kind) {
        case OrderingKind::RandomPermutation: return shuffled(std::move(sorted), rng);
        case OrderingKind::BfsThenRest: return bfs_then_rest(sorted, rng);
        case OrderingKind::Dfs: return dfs_order(sorted, rng);
        case OrderingKind::DegreeSortedAsc: return degree_sorted(sorted, true);
        case OrderingKind::DegreeSortedDesc: return degree_sorted(sorted, false);
    }
    return {};
}

void write_stream(std::span<const Edge> stream, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    for (const Edge& e : stream) f << e.u << ' ' << e.v << '\n';
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

EdgeStream read_stream(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    EdgeStream out;
    std::unordered_set<Edge, EdgeHash> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        VertexId u, v;
        if (!parse_pair_line(chomp(line), line_no, u, v)) continue;
        auto e = normalize_edge(u, v);
        if (!e) throw ParseError(line_no, "self-loop in stream file");
        if (!seen.insert(*e).second) throw ParseError(line_no, "duplicate edge in stream file");
        out.push_back(*e);
    }
    return out;
}

StreamReader::StreamReader(const std::string& path) {
    if (path == "-") {
        in_ = &std::cin;
    } else {
        file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
        if (!*file_) throw IoError("cannot open " + path);
        in_ = file_.get();
    }
}

std::optional<Edge> StreamReader::next() {
    std::string line;
    while (std::getline(*in_, line)) {
        ++line_no_;
        VertexId u, v;
        if (!parse_pair_line(chomp(line), line_no_, u, v)) continue;
        auto e = normalize_edge(u, v);
        if (!e) {
            ++self_loops_;
            continue;
        }
        return e;
    }
    return std::nullopt;
}

}  // namespace streamtri

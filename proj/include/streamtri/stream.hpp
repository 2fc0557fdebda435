#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "streamtri/graph.hpp"

namespace streamtri {

// A stream is an ordered sequence of distinct canonical edges; the 1-based
// position of an edge is its timestamp.
using EdgeStream = std::vector<Edge>;

enum class OrderingKind {
    RandomPermutation,
    BfsThenRest,
    Dfs,
    DegreeSortedAsc,
    DegreeSortedDesc,
};

inline constexpr OrderingKind kAllOrderings[] = {
    OrderingKind::RandomPermutation, OrderingKind::BfsThenRest, OrderingKind::Dfs,
    OrderingKind::DegreeSortedAsc, OrderingKind::DegreeSortedDesc};

std::string_view ordering_name(OrderingKind k);                 // "random", "bfs", ...
std::optional<OrderingKind> parse_ordering(std::string_view s);

// Malformed input line; `line` is 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

// File open / read / write failure.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ParseWarnings {
    std::uint64_t self_loops = 0;
    std::uint64_t duplicates = 0;
};

// Edge-list text format: "u v" per line, ASCII decimal, '#' starts a comment
// line, blank lines ignored. Self-loops and duplicate edges (either
// direction) are dropped and counted, not fatal. First-seen order preserved.
std::vector<Edge> parse_edge_list(std::istream& in, ParseWarnings* warnings = nullptr);
std::vector<Edge> parse_edge_list(const std::string& path, ParseWarnings* warnings = nullptr);

// Permutation of `edges` per ordering kind, a deterministic function of
// (edge set, kind, seed). PRNG is std::mt19937_64 seeded with `seed`.
EdgeStream order_stream(std::span<const Edge> edges, OrderingKind kind, std::uint64_t seed);

// Stream files: one "u v" line per edge in stream order, single space, '\n'.
void write_stream(std::span<const Edge> stream, const std::string& path);
EdgeStream read_stream(const std::string& path);  // rejects self-loops/duplicates

// Single-pass reader used by the CLI: yields canonical edges one at a time
// without buffering the stream. Path "-" reads standard input. Comments and
// blank lines are skipped; self-loops are skipped and counted; duplicates are
// not detected (the stream contract makes them the producer's bug).
class StreamReader {
  public:
    explicit StreamReader(const std::string& path);
    std::optional<Edge> next();  // nullopt at end of input
    std::uint64_t self_loops_skipped() const { return self_loops_; }

  private:
    std::unique_ptr<std::ifstream> file_;
    std::istream* in_;
    std::size_t line_no_ = 0;
    std::uint64_t self_loops_ = 0;
};

}  // namespace streamtri

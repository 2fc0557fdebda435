#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "streamtri/graph.hpp"

namespace streamtri {

struct EstimatorConfig {
    std::size_t edge_slots = 20000;   // s_e, >= 2
    std::size_t wedge_slots = 20000;  // s_w, >= 1
    std::uint64_t seed = 0;
};

// Running estimate emitted after each stream event. kappa_est = 3*rho and
// T_est = rho * W_est hold exactly; W_est = t^2 * tot_wedges / (s_e(s_e-1)).
struct EstimateSnapshot {
    std::uint64_t t = 0;
    std::size_t occupied_wedge_slots = 0;
    double rho = 0.0;
    double kappa_est = 0.0;
    double T_est = 0.0;
    double W_est = 0.0;
    std::int64_t tot_wedges = 0;
    bool warmup = true;

    // kappa_est can reach 3.0 numerically; above 1 it signals a reservoir far
    // too small for the graph.
    bool kappa_overflow() const { return kappa_est > 1.0; }
};

// Single-pass transitivity / triangle-count estimator. Maintains an edge
// reservoir (each slot independently replaced by e_t with probability 1/t)
// and a wedge reservoir sampled from the wedges the edge reservoir forms,
// with a closure bit per wedge. Single-owner; instances are independent.
class StreamingTriangles {
  public:
    explicit StreamingTriangles(const EstimatorConfig& cfg);  // throws std::invalid_argument

    // Processes the next stream edge. Caller contract: e has not appeared
    // earlier in this stream.
    EstimateSnapshot update(const Edge& e);

    EstimateSnapshot snapshot() const;

    std::uint64_t time() const { return t_; }
    std::int64_t tot_wedges() const { return tot_wedges_; }
    std::uint64_t edge_slot_replacements() const { return replacements_; }
    const EstimatorConfig& config() const { return cfg_; }

    // Read-only state access for verification.
    std::size_t edge_slot_count() const { return edge_slots_.size(); }
    std::optional<Edge> edge_slot(std::size_t i) const;
    std::size_t wedge_slot_count() const { return wedge_slots_.size(); }
    std::optional<Wedge> wedge_slot(std::size_t i) const;
    bool wedge_closed(std::size_t i) const { return wedge_closed_[i]; }
    // Occupied slots whose wedge e would close (what update() would mark).
    std::vector<std::size_t> slots_closed_by(const Edge& e) const;

  private:
    struct EdgeSlot {
        Edge e;
        std::uint32_t pos_u = 0;  // position in vertex_slots_[e.u]
        std::uint32_t pos_v = 0;  // position in vertex_slots_[e.v]
    };
    struct WedgeSlot {
        Wedge w;
        std::uint32_t bucket_pos = 0;  // position in open_pair_index_[closing_pair]
    };

    void remove_edge_slot(std::uint32_t i);
    void insert_edge_slot(std::uint32_t i, const Edge& e);
    void set_wedge_slot(std::uint32_t i, const Wedge& w);
    std::uint32_t binomial(std::uint32_t n, double p);

    EstimatorConfig cfg_;
    std::mt19937_64 rng_;
    std::uint64_t t_ = 0;
    std::uint64_t replacements_ = 0;

    // Edge reservoir with incidence bookkeeping for tot_wedges.
    std::vector<std::optional<EdgeSlot>> edge_slots_;
    std::unordered_map<VertexId, std::vector<std::uint32_t>> vertex_slots_;
    std::unordered_map<Edge, std::uint32_t, EdgeHash> edge_mult_;
    std::uint64_t dup_pairs_ = 0;
    std::int64_t tot_wedges_ = 0;

    // Wedge reservoir with closure bits and closing-pair index.
    std::vector<std::optional<WedgeSlot>> wedge_slots_;
    std::vector<char> wedge_closed_;
    std::unordered_map<Edge, std::vector<std::uint32_t>, EdgeHash> open_pair_index_;
    std::size_t occupied_wedges_ = 0;
    std::size_t closed_count_ = 0;

    // Persistent permutations for drawing k distinct slot indices in O(k).
    std::vector<std::uint32_t> edge_pick_;
    std::vector<std::uint32_t> wedge_pick_;
    std::vector<std::uint32_t> wedge_candidates_;  // scratch
};

}  // namespace streamtri

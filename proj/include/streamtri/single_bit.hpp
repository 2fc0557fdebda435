#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "streamtri/graph.hpp"

namespace streamtri {

// Idealized single-estimate algorithm: a reservoir of |R| i.i.d. edge slots,
// the full set W_t of wedges formed by slot pairs (rebuilt from scratch
// whenever the reservoir changes), and the subset C_t of W_t whose closing
// edge has been seen. Each step outputs one bit whose expectation approaches
// kappa/3. Reference implementation for validation; meant for small inputs.
class SingleBit {
  public:
    SingleBit(std::size_t reservoir_size, std::uint64_t seed);

    // Processes e_t and returns the output bit b_t.
    int step(const Edge& e);

    std::uint64_t time() const { return t_; }
    std::size_t wedge_count() const { return wedges_.size(); }      // |W_t|
    std::size_t detected_count() const { return detected_.size(); }  // |C_t|
    // Slot contents; empty before the first step fills every slot.
    std::span<const Edge> reservoir() const {
        return primed_ ? std::span<const Edge>(slots_) : std::span<const Edge>();
    }

    struct PairView {
        std::size_t i = 0;
        std::size_t j = 0;
        Wedge wedge;
        bool detected = false;
    };
    std::vector<PairView> pairs() const;  // current W_t with detection flags

  private:
    struct Entry {
        std::uint32_t i;
        std::uint32_t j;
        Wedge w;
    };
    std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) const {
        return static_cast<std::uint64_t>(i) * slots_.size() + j;
    }
    void rebuild(const std::vector<char>& replaced);

    std::mt19937_64 rng_;
    std::uint64_t t_ = 0;
    std::vector<Edge> slots_;
    bool primed_ = false;
    std::vector<Entry> wedges_;
    std::unordered_map<Edge, std::vector<std::uint32_t>, EdgeHash> closure_index_;
    std::unordered_set<std::uint64_t> detected_;  // pair keys; wedge identity is slot-pair identity
};

// Runs k independent instances over the stream and returns 3 * (fraction of
// final bits equal to 1). jobs > 1 distributes instances across threads;
// per-instance seeds derive from `seed`, so results do not depend on jobs.
double single_bit_ensemble(std::span<const Edge> stream, std::size_t reservoir_size,
                           std::size_t instances, std::uint64_t seed, std::size_t jobs = 1);

}  // namespace streamtri

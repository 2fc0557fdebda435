#include "streamtri/single_bit.hpp"

#include <stdexcept>
#include <thread>

namespace streamtri {

SingleBit::SingleBit(std::size_t reservoir_size, std::uint64_t seed) : rng_(seed) {
    if (reservoir_size < 2) throw std::invalid_argument("reservoir needs at least 2 slots");
    slots_.resize(reservoir_size);
}

void SingleBit::rebuild(const std::vector<char>& replaced) {
    // Wedge identity is slot-pair identity: a detected pair survives only if
    // neither member slot was replaced (its wedge value is then unchanged).
    for (auto it = detected_.begin(); it != detected_.end();) {
        auto i = static_cast<std::uint32_t>(*it / slots_.size());
        auto j = static_cast<std::uint32_t>(*it % slots_.size());
        if (replaced[i] || replaced[j]) it = detected_.erase(it);
        else ++it;
    }
    wedges_.clear();
    closure_index_.clear();
    const auto n = static_cast<std::uint32_t>(slots_.size());
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            auto w = form_wedge(slots_[i], slots_[j]);
            if (!w) continue;
            closure_index_[w->closing_pair()].push_back(
                static_cast<std::uint32_t>(wedges_.size()));
            wedges_.push_back(Entry{i, j, *w});
        }
    }
}

int SingleBit::step(const Edge& e) {
    ++t_;
    const auto n = static_cast<std::uint32_t>(slots_.size());

    // Per-slot reservoir replacement with probability 1/t.
    std::vector<char> replaced(n, 0);
    std::uint32_t count = 0;
    if (t_ == 1) {
        count = n;
        for (std::uint32_t i = 0; i < n; ++i) {
            slots_[i] = e;
            replaced[i] = 1;
        }
        primed_ = true;
    } else {
        double p = 1.0 / static_cast<double>(t_);
        count = std::binomial_distribution<std::uint32_t>(n, p)(rng_);
        std::uniform_int_distribution<std::uint32_t> any(0, n - 1);
        for (std::uint32_t done = 0; done < count;) {
            std::uint32_t i = any(rng_);
            if (replaced[i]) continue;
            replaced[i] = 1;
            slots_[i] = e;
            ++done;
        }
    }
    if (count > 0) rebuild(replaced);

    // Detection: wedges of W_t closed by e_t.
    if (auto it = closure_index_.find(e); it != closure_index_.end())
        for (std::uint32_t idx : it->second)
            detected_.insert(pair_key(wedges_[idx].i, wedges_[idx].j));

    if (wedges_.empty()) return 0;
    std::uniform_int_distribution<std::size_t> pick(0, wedges_.size() - 1);
    const Entry& w = wedges_[pick(rng_)];
    return detected_.count(pair_key(w.i, w.j)) ? 1 : 0;
}

std::vector<SingleBit::PairView> SingleBit::pairs() const {
    std::vector<PairView> out;
    out.reserve(wedges_.size());
    for (const Entry& e : wedges_)
        out.push_back(PairView{e.i, e.j, e.w, detected_.count(pair_key(e.i, e.j)) > 0});
    return out;
}

double single_bit_ensemble(std::span<const Edge> stream, std::size_t reservoir_size,
                           std::size_t instances, std::uint64_t seed, std::size_t jobs) {
    if (instances == 0) return 0.0;
    std::vector<std::uint64_t> seeds(instances);
    std::mt19937_64 master(seed);
    for (auto& s : seeds) s = master();

    std::vector<int> bits(instances, 0);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            SingleBit sb(reservoir_size, seeds[k]);
            int b = 0;
            for (const Edge& e : stream) b = sb.step(e);
            bits[k] = b;
        }
    };
    if (jobs <= 1) {
        run_range(0, instances);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (instances + jobs - 1) / jobs;
        for (std::size_t j = 0; j < jobs && j * chunk < instances; ++j)
            pool.emplace_back(run_range, j * chunk, std::min(instances, (j + 1) * chunk));
        for (auto& th : pool) th.join();
    }
    std::uint64_t ones = 0;
    for (int b : bits) ones += static_cast<std::uint64_t>(b);
    return 3.0 * static_cast<double>(ones) / static_cast<double>(instances);
}

}  // namespace streamtri

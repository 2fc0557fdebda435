#include "streamtri/estimator.hpp"

#include <cassert>
#include <stdexcept>

namespace streamtri {

StreamingTriangles::StreamingTriangles(const EstimatorConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.edge_slots < 2)
        throw std::invalid_argument("edge reservoir needs at least 2 slots");
    if (cfg.wedge_slots < 1)
        throw std::invalid_argument("wedge reservoir needs at least 1 slot");
    edge_slots_.resize(cfg.edge_slots);
    wedge_slots_.resize(cfg.wedge_slots);
    wedge_closed_.assign(cfg.wedge_slots, 0);
    edge_pick_.resize(cfg.edge_slots);
    wedge_pick_.resize(cfg.wedge_slots);
    for (std::uint32_t i = 0; i < edge_pick_.size(); ++i) edge_pick_[i] = i;
    for (std::uint32_t i = 0; i < wedge_pick_.size(); ++i) wedge_pick_[i] = i;
}

std::optional<Edge> StreamingTriangles::edge_slot(std::size_t i) const {
    if (!edge_slots_[i]) return std::nullopt;
    return edge_slots_[i]->e;
}

std::optional<Wedge> StreamingTriangles::wedge_slot(std::size_t i) const {
    if (!wedge_slots_[i]) return std::nullopt;
    return wedge_slots_[i]->w;
}

std::vector<std::size_t> StreamingTriangles::slots_closed_by(const Edge& e) const {
    std::vector<std::size_t> out;
    auto it = open_pair_index_.find(e);
    if (it != open_pair_index_.end()) out.assign(it->second.begin(), it->second.end());
    return out;
}

std::uint32_t StreamingTriangles::binomial(std::uint32_t n, double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return n;
    return std::binomial_distribution<std::uint32_t>(n, p)(rng_);
}

void StreamingTriangles::remove_edge_slot(std::uint32_t i) {
    const EdgeSlot slot = *edge_slots_[i];
    auto drop = [this, i](VertexId v, std::uint32_t pos) {
        auto& list = vertex_slots_[v];
        std::uint32_t moved = list.back();
        list[pos] = moved;
        list.pop_back();
        if (moved != i) {
            EdgeSlot& ms = *edge_slots_[moved];
            (edge_slots_[moved]->e.u == v ? ms.pos_u : ms.pos_v) = pos;
        }
        if (list.empty()) vertex_slots_.erase(v);
    };
    drop(slot.e.u, slot.pos_u);
    drop(slot.e.v, slot.pos_v);

    auto mit = edge_mult_.find(slot.e);
    std::uint32_t mult_after = --mit->second;
    if (mit->second == 0) edge_mult_.erase(mit);
    dup_pairs_ -= mult_after;

    auto inc = [this](VertexId v) -> std::int64_t {
        auto it = vertex_slots_.find(v);
        return it == vertex_slots_.end() ? 0 : static_cast<std::int64_t>(it->second.size());
    };
    tot_wedges_ -= inc(slot.e.u) + inc(slot.e.v) - 2 * static_cast<std::int64_t>(mult_after);
    edge_slots_[i].reset();
}

void StreamingTriangles::insert_edge_slot(std::uint32_t i, const Edge& e) {
    auto inc = [this](VertexId v) -> std::int64_t {
        auto it = vertex_slots_.find(v);
        return it == vertex_slots_.end() ? 0 : static_cast<std::int64_t>(it->second.size());
    };
    std::uint32_t mult_before = 0;
    if (auto mit = edge_mult_.find(e); mit != edge_mult_.end()) mult_before = mit->second;
    // The new slot pairs with every slot touching u or v, except slots
    // holding e itself (those pairs are duplicates, not wedges).
    tot_wedges_ += inc(e.u) + inc(e.v) - 2 * static_cast<std::int64_t>(mult_before);
    dup_pairs_ += mult_before;
    edge_mult_[e] = mult_before + 1;

    EdgeSlot slot;
    slot.e = e;
    auto& lu = vertex_slots_[e.u];
    slot.pos_u = static_cast<std::uint32_t>(lu.size());
    lu.push_back(i);
    auto& lv = vertex_slots_[e.v];
    slot.pos_v = static_cast<std::uint32_t>(lv.size());
    lv.push_back(i);
    edge_slots_[i] = slot;
}

void StreamingTriangles::set_wedge_slot(std::uint32_t i, const Wedge& w) {
    if (wedge_slots_[i]) {
        const WedgeSlot& old = *wedge_slots_[i];
        auto bit = open_pair_index_.find(old.w.closing_pair());
        auto& bucket = bit->second;
        std::uint32_t moved = bucket.back();
        bucket[old.bucket_pos] = moved;
        bucket.pop_back();
        if (moved != i) wedge_slots_[moved]->bucket_pos = old.bucket_pos;
        if (bucket.empty()) open_pair_index_.erase(bit);
        if (wedge_closed_[i]) --closed_count_;
    } else {
        ++occupied_wedges_;
    }
    auto& bucket = open_pair_index_[w.closing_pair()];
    wedge_slots_[i] = WedgeSlot{w, static_cast<std::uint32_t>(bucket.size())};
    bucket.push_back(i);
    wedge_closed_[i] = 0;
}

EstimateSnapshot StreamingTriangles::update(const Edge& e) {
    ++t_;

    // Closure pass: e arrives after every wedge currently in the reservoir,
    // so any slot whose closing pair equals e is now known closed.
    if (auto it = open_pair_index_.find(e); it != open_pair_index_.end()) {
        for (std::uint32_t i : it->second) {
            if (!wedge_closed_[i]) {
                wedge_closed_[i] = 1;
                ++closed_count_;
            }
        }
    }

    // Reservoir pass: each edge slot is independently replaced by e with
    // probability 1/t. Drawing the binomial count first and then that many
    // distinct slots is distributionally identical and O(count).
    const auto s_e = static_cast<std::uint32_t>(cfg_.edge_slots);
    std::uint32_t changed = t_ == 1 ? s_e : binomial(s_e, 1.0 / static_cast<double>(t_));
    if (changed > 0) {
        std::uniform_int_distribution<std::uint32_t> any;
        for (std::uint32_t i = 0; i < changed; ++i) {
            std::uint32_t j =
                any(rng_, std::uniform_int_distribution<std::uint32_t>::param_type(i, s_e - 1));
            std::swap(edge_pick_[i], edge_pick_[j]);
            std::uint32_t slot = edge_pick_[i];
            if (edge_slots_[slot]) remove_edge_slot(slot);
            insert_edge_slot(slot, e);
        }
        replacements_ += changed;

        // New wedges involve at least one slot now holding e: with k such
        // slots, each pairs with every slot touching e's endpoints except
        // the e-slots themselves.
        const auto k = static_cast<std::int64_t>(edge_mult_[e]);
        auto inc = [this](VertexId v) -> std::int64_t {
            auto it = vertex_slots_.find(v);
            return it == vertex_slots_.end() ? 0 : static_cast<std::int64_t>(it->second.size());
        };
        std::int64_t adjacent = inc(e.u) + inc(e.v) - 2 * k;
        std::int64_t new_wedges = k * adjacent;
        assert(new_wedges <= tot_wedges_);

        if (new_wedges > 0) {
            const auto s_w = static_cast<std::uint32_t>(cfg_.wedge_slots);
            double p = static_cast<double>(new_wedges) / static_cast<double>(tot_wedges_);
            std::uint32_t writes = binomial(s_w, p);
            if (writes > 0) {
                // A uniform slot pair from the new wedges projects to a
                // uniform choice among the slots adjacent to e.
                wedge_candidates_.clear();
                for (VertexId v : {e.u, e.v})
                    for (std::uint32_t slot : vertex_slots_[v])
                        if (edge_slots_[slot]->e != e) wedge_candidates_.push_back(slot);
                std::uniform_int_distribution<std::size_t> pick_cand(0,
                                                                     wedge_candidates_.size() - 1);
                for (std::uint32_t i = 0; i < writes; ++i) {
                    std::uint32_t j = any(
                        rng_, std::uniform_int_distribution<std::uint32_t>::param_type(i, s_w - 1));
                    std::swap(wedge_pick_[i], wedge_pick_[j]);
                    const Edge& other = edge_slots_[wedge_candidates_[pick_cand(rng_)]]->e;
                    set_wedge_slot(wedge_pick_[i], *form_wedge(e, other));
                }
            }
        }
    }
    return snapshot();
}

EstimateSnapshot StreamingTriangles::snapshot() const {
    EstimateSnapshot s;
    s.t = t_;
    s.occupied_wedge_slots = occupied_wedges_;
    s.tot_wedges = tot_wedges_;
    s.rho = static_cast<double>(closed_count_) /
            static_cast<double>(occupied_wedges_ > 0 ? occupied_wedges_ : 1);
    s.kappa_est = 3.0 * s.rho;
    const double t = static_cast<double>(t_);
    const double pairs =
        static_cast<double>(cfg_.edge_slots) * static_cast<double>(cfg_.edge_slots - 1);
    s.W_est = t * t * static_cast<double>(tot_wedges_) / pairs;
    s.T_est = s.rho * s.W_est;
    s.warmup = t_ < cfg_.edge_slots || occupied_wedges_ < cfg_.wedge_slots;
    return s;
}

}  // namespace streamtri

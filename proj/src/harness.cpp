#include "streamtri/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <random>
#include <thread>
#include <unordered_set>

#include "streamtri/single_bit.hpp"

namespace streamtri {

namespace {

// Runs fn(i) for i in [0, n), fanning out across up to `jobs` threads.
// Results must be written to disjoint, preallocated slots.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t j = 0; j < jobs && j * chunk < n; ++j) {
        std::size_t begin = j * chunk, end = std::min(n, begin + chunk);
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<std::uint64_t> derive_seeds(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 master(seed);
    std::vector<std::uint64_t> seeds(count);
    for (auto& s : seeds) s = master();
    return seeds;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double sum = 0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    return f;
}

}  // namespace

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

TrialResult run_trial(std::span<const Edge> stream, const EstimatorConfig& cfg,
                      const ExactStats& exact, const std::string& graph_id,
                      OrderingKind ordering) {
    TrialResult r;
    r.graph = graph_id;
    r.ordering = ordering;
    r.seed = cfg.seed;
    r.s_e = cfg.edge_slots;
    r.s_w = cfg.wedge_slots;
    r.kappa_exact = exact.kappa;
    r.T_exact = exact.T;

    auto start = std::chrono::steady_clock::now();
    StreamingTriangles est(cfg);
    EstimateSnapshot snap;
    for (const Edge& e : stream) snap = est.update(e);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    r.kappa_est = snap.kappa_est;
    r.T_est = snap.T_est;
    r.abs_err_kappa = std::abs(r.kappa_est - r.kappa_exact);
    if (exact.T > 0)
        r.rel_err_T = std::abs(r.T_est - static_cast<double>(exact.T)) /
                      static_cast<double>(exact.T);
    return r;
}

TrackingSeries run_tracking(std::span<const Edge> stream, const EstimatorConfig& cfg,
                            std::uint64_t checkpoint_every, bool exact_at_checkpoints) {
    TrackingSeries series;
    StreamingTriangles est(cfg);
    std::uint64_t t = 0;
    for (const Edge& e : stream) {
        EstimateSnapshot snap = est.update(e);
        ++t;
        if (t % checkpoint_every != 0) continue;
        TrackingPoint pt;
        pt.t = t;
        pt.kappa_est = snap.kappa_est;
        pt.T_est = snap.T_est;
        pt.warmup = snap.warmup;
        if (exact_at_checkpoints) {
            ExactStats prefix =
                exact_count(AdjacencyGraph::from_edges(stream.subspan(0, t)));
            pt.kappa_exact = prefix.kappa;
            pt.T_exact = prefix.T;
        }
        series.checkpoints.push_back(pt);
    }
    return series;
}

namespace {

// Shared loop for convergence and sweep: per-trial random ordering + run.
std::vector<TrialResult> trials_at(std::span<const Edge> edges, std::size_t s_e, std::size_t s_w,
                                   std::size_t trials, std::span<const std::uint64_t> seeds,
                                   const ExactStats& exact, std::size_t jobs) {
    std::vector<TrialResult> out(trials);
    parallel_for(trials, jobs, [&](std::size_t i) {
        EdgeStream stream = order_stream(edges, OrderingKind::RandomPermutation, seeds[i]);
        EstimatorConfig cfg{s_e, s_w, seeds[i] ^ 0x5eedf00dULL};
        out[i] = run_trial(stream, cfg, exact, "synthetic", OrderingKind::RandomPermutation);
    });
    return out;
}

}  // namespace

std::vector<ConvergenceRow> run_convergence(std::span<const Edge> edges,
                                            std::span<const std::size_t> sizes,
                                            std::size_t trials, std::uint64_t seed,
                                            const ExactStats& exact, std::size_t jobs) {
    std::vector<ConvergenceRow> rows;
    auto seeds = derive_seeds(seed, trials);
    for (std::size_t s : sizes) {
        auto results = trials_at(edges, s, s, trials, seeds, exact, jobs);
        ConvergenceRow row;
        row.s = s;
        std::vector<double> kerr, terr;
        for (const TrialResult& r : results) {
            kerr.push_back(r.abs_err_kappa);
            if (r.rel_err_T) terr.push_back(*r.rel_err_T);
        }
        row.mean_abs_err_kappa = mean_of(kerr);
        row.median_abs_err_kappa = median(kerr);
        row.mean_rel_err_T = mean_of(terr);
        row.median_rel_err_T = median(terr);
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> run_reservoir_sweep(std::span<const Edge> edges, FixedReservoir fixed,
                                          std::size_t fixed_value,
                                          std::span<const std::size_t> varying,
                                          std::size_t trials, std::uint64_t seed,
                                          const ExactStats& exact, std::size_t jobs) {
    std::vector<SweepRow> rows;
    auto seeds = derive_seeds(seed, trials);
    double kappa_sum = 0, t_sum = 0;
    for (std::size_t size : varying) {
        std::size_t s_e = fixed == FixedReservoir::Edges ? fixed_value : size;
        std::size_t s_w = fixed == FixedReservoir::Wedges ? fixed_value : size;
        auto results = trials_at(edges, s_e, s_w, trials, seeds, exact, jobs);
        SweepRow row;
        row.size = size;
        std::vector<double> kerr, terr;
        for (const TrialResult& r : results) {
            kerr.push_back(r.abs_err_kappa);
            if (r.rel_err_T) terr.push_back(*r.rel_err_T);
        }
        row.abs_err_kappa = mean_of(kerr);
        row.rel_err_T = mean_of(terr);
        kappa_sum += row.abs_err_kappa;
        t_sum += row.rel_err_T;
        row.running_avg_abs_err_kappa = kappa_sum / static_cast<double>(rows.size() + 1);
        row.running_avg_rel_err_T = t_sum / static_cast<double>(rows.size() + 1);
        rows.push_back(row);
    }
    return rows;
}

BirthdayReport verify_birthday(std::span<const Edge> stream, std::size_t s, std::uint64_t trials,
                               std::uint64_t seed) {
    BirthdayReport rep;
    rep.s = s;
    rep.trials = trials;

    AdjacencyGraph g = AdjacencyGraph::from_edges(stream);
    ExactStats exact = exact_count(g);
    const double m = static_cast<double>(exact.m);
    const double pair_factor = static_cast<double>(s) * static_cast<double>(s - 1);
    rep.analytic_all_wedges = pair_factor * static_cast<double>(exact.W) / (m * m);
    rep.analytic_future_closed = pair_factor * static_cast<double>(exact.T) / (m * m);

    std::unordered_set<Wedge, WedgeHash> future_closed;
    for (const TimedWedge& tw : future_closed_wedges(stream)) future_closed.insert(tw.wedge);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, stream.size() - 1);
    std::vector<Edge> sample(s);
    std::uint64_t total_all = 0, total_fc = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        for (std::size_t i = 0; i < s; ++i) sample[i] = stream[pick(rng)];
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = i + 1; j < s; ++j) {
                auto w = form_wedge(sample[i], sample[j]);
                if (!w) continue;
                ++total_all;
                if (future_closed.count(*w)) ++total_fc;
            }
        }
    }
    rep.empirical_all_wedges = static_cast<double>(total_all) / static_cast<double>(trials);
    rep.empirical_future_closed = static_cast<double>(total_fc) / static_cast<double>(trials);
    return rep;
}

std::vector<SingleBitComparisonRow> compare_singlebit(std::span<const Edge> stream,
                                                      std::size_t storage_budget,
                                                      std::span<const std::size_t> reservoir_sizes,
                                                      const ExactStats& exact, std::uint64_t seed,
                                                      bool reservoir_proxy, std::size_t jobs) {
    std::vector<SingleBitComparisonRow> rows;

    SingleBitComparisonRow st;
    st.method = "streaming-triangles";
    st.edge_storage = storage_budget / 2;
    st.wedge_storage = storage_budget - st.edge_storage;
    EstimatorConfig cfg{st.edge_storage, st.wedge_storage, seed};
    StreamingTriangles est(cfg);
    EstimateSnapshot snap;
    for (const Edge& e : stream) snap = est.update(e);
    st.kappa_est = snap.kappa_est;
    st.abs_err_kappa = std::abs(st.kappa_est - exact.kappa);
    rows.push_back(st);

    for (std::size_t r : reservoir_sizes) {
        SingleBitComparisonRow row;
        row.method = "single-bit";
        row.edge_storage = r;
        row.instances = std::max<std::size_t>(1, storage_budget / r);
        if (reservoir_proxy) {
            // Estimator with a single wedge slot; its closure bit is the
            // instance's output bit.
            auto seeds = derive_seeds(seed ^ r, row.instances);
            std::vector<int> bits(row.instances, 0);
            parallel_for(row.instances, jobs, [&](std::size_t i) {
                StreamingTriangles inst(EstimatorConfig{r, 1, seeds[i]});
                EstimateSnapshot s2;
                for (const Edge& e : stream) s2 = inst.update(e);
                bits[i] = s2.rho >= 1.0 ? 1 : 0;
            });
            std::uint64_t ones = 0;
            for (int b : bits) ones += static_cast<std::uint64_t>(b);
            row.kappa_est = 3.0 * static_cast<double>(ones) / static_cast<double>(row.instances);
        } else {
            row.kappa_est = single_bit_ensemble(stream, r, row.instances, seed ^ r, jobs);
        }
        row.abs_err_kappa = std::abs(row.kappa_est - exact.kappa);
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string csv_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_trials_csv(const std::string& path, std::span<const TrialResult> rows) {
    auto f = open_csv(path);
    f << "graph,ordering,seed,s_e,s_w,kappa_exact,kappa_est,T_exact,T_est,"
         "abs_err_kappa,rel_err_T,wall_time\n";
    for (const TrialResult& r : rows) {
        f << r.graph << ',' << ordering_name(r.ordering) << ',' << r.seed << ',' << r.s_e << ','
          << r.s_w << ',' << csv_cell(r.kappa_exact) << ',' << csv_cell(r.kappa_est) << ','
          << r.T_exact << ',' << csv_cell(r.T_est) << ',' << csv_cell(r.abs_err_kappa) << ','
          << (r.rel_err_T ? csv_cell(*r.rel_err_T) : "NA") << ',' << csv_cell(r.wall_time)
          << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

void write_tracking_csv(const std::string& path, const TrackingSeries& series) {
    auto f = open_csv(path);
    f << "t,kappa_est,T_est,kappa_exact,T_exact,warmup\n";
    for (const TrackingPoint& p : series.checkpoints) {
        f << p.t << ',' << csv_cell(p.kappa_est) << ',' << csv_cell(p.T_est) << ','
          << (p.kappa_exact ? csv_cell(*p.kappa_exact) : "NA") << ','
          << (p.T_exact ? std::to_string(*p.T_exact) : "NA") << ','
          << (p.warmup ? "true" : "false") << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

void write_convergence_csv(const std::string& path, std::span<const ConvergenceRow> rows) {
    auto f = open_csv(path);
    f << "s,mean_abs_err_kappa,median_abs_err_kappa,mean_rel_err_T,median_rel_err_T\n";
    for (const ConvergenceRow& r : rows)
        f << r.s << ',' << csv_cell(r.mean_abs_err_kappa) << ','
          << csv_cell(r.median_abs_err_kappa) << ',' << csv_cell(r.mean_rel_err_T) << ','
          << csv_cell(r.median_rel_err_T) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows) {
    auto f = open_csv(path);
    f << "size,abs_err_kappa,rel_err_T,running_avg_abs_err_kappa,running_avg_rel_err_T\n";
    for (const SweepRow& r : rows)
        f << r.size << ',' << csv_cell(r.abs_err_kappa) << ',' << csv_cell(r.rel_err_T) << ','
          << csv_cell(r.running_avg_abs_err_kappa) << ',' << csv_cell(r.running_avg_rel_err_T)
          << '\n';
    if (!f) throw IoError("write failed: " + path);
}

void write_birthday_csv(const std::string& path, const BirthdayReport& rep) {
    auto f = open_csv(path);
    f << "s,trials,analytic_all_wedges,empirical_all_wedges,analytic_future_closed,"
         "empirical_future_closed\n";
    f << rep.s << ',' << rep.trials << ',' << csv_cell(rep.analytic_all_wedges) << ','
      << csv_cell(rep.empirical_all_wedges) << ',' << csv_cell(rep.analytic_future_closed) << ','
      << csv_cell(rep.empirical_future_closed) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

void write_singlebit_csv(const std::string& path, std::span<const SingleBitComparisonRow> rows) {
    auto f = open_csv(path);
    f << "method,edge_storage,wedge_storage,instances,kappa_est,abs_err_kappa\n";
    for (const SingleBitComparisonRow& r : rows)
        f << r.method << ',' << r.edge_storage << ',' << r.wedge_storage << ',' << r.instances
          << ',' << csv_cell(r.kappa_est) << ',' << csv_cell(r.abs_err_kappa) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

std::string timestamped_csv_name(const std::string& experiment, const std::string& graph) {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%d%H%M%S", &tm);
    return experiment + "_" + graph + "_" + stamp + ".csv";
}

}  // namespace streamtri

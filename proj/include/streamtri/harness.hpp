#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streamtri/estimator.hpp"
#include "streamtri/graph.hpp"
#include "streamtri/stream.hpp"

namespace streamtri {

// One full estimator run measured against exact ground truth.
struct TrialResult {
    std::string graph;
    OrderingKind ordering = OrderingKind::RandomPermutation;
    std::uint64_t seed = 0;
    std::size_t s_e = 0;
    std::size_t s_w = 0;
    double kappa_exact = 0.0;
    double kappa_est = 0.0;
    std::uint64_t T_exact = 0;
    double T_est = 0.0;
    double abs_err_kappa = 0.0;
    std::optional<double> rel_err_T;  // empty when T_exact == 0
    double wall_time = 0.0;           // seconds
};

TrialResult run_trial(std::span<const Edge> stream, const EstimatorConfig& cfg,
                      const ExactStats& exact, const std::string& graph_id,
                      OrderingKind ordering);

struct TrackingPoint {
    std::uint64_t t = 0;
    double kappa_est = 0.0;
    double T_est = 0.0;
    std::optional<double> kappa_exact;
    std::optional<std::uint64_t> T_exact;
    bool warmup = true;
};

struct TrackingSeries {
    std::vector<TrackingPoint> checkpoints;  // t strictly increasing
};

// Snapshot every `checkpoint_every` events; optionally recompute exact stats
// on each prefix graph (expensive, meant for validation runs).
TrackingSeries run_tracking(std::span<const Edge> stream, const EstimatorConfig& cfg,
                            std::uint64_t checkpoint_every, bool exact_at_checkpoints);

struct ConvergenceRow {
    std::size_t s = 0;  // s_e = s_w
    double mean_abs_err_kappa = 0.0;
    double median_abs_err_kappa = 0.0;
    double mean_rel_err_T = 0.0;    // over trials with defined rel error
    double median_rel_err_T = 0.0;
};

// Error vs reservoir size with s_e = s_w = s; each trial gets a fresh random
// ordering and estimator seed derived from `seed`.
std::vector<ConvergenceRow> run_convergence(std::span<const Edge> edges,
                                            std::span<const std::size_t> sizes,
                                            std::size_t trials, std::uint64_t seed,
                                            const ExactStats& exact, std::size_t jobs = 1);

enum class FixedReservoir { Edges, Wedges };

struct SweepRow {
    std::size_t size = 0;  // the varying reservoir's size
    double abs_err_kappa = 0.0;
    double rel_err_T = 0.0;
    double running_avg_abs_err_kappa = 0.0;  // prefix mean over the sweep
    double running_avg_rel_err_T = 0.0;
};

// Varies one reservoir size while the other stays fixed; per-size errors are
// means over `trials`. The running-average columns give the mean error over
// sweep positions 1..x, the usual way these curves are plotted.
std::vector<SweepRow> run_reservoir_sweep(std::span<const Edge> edges, FixedReservoir fixed,
                                          std::size_t fixed_value,
                                          std::span<const std::size_t> varying,
                                          std::size_t trials, std::uint64_t seed,
                                          const ExactStats& exact, std::size_t jobs = 1);

struct BirthdayReport {
    std::size_t s = 0;
    std::uint64_t trials = 0;
    double analytic_all_wedges = 0.0;       // s(s-1) W / m^2
    double empirical_all_wedges = 0.0;
    double analytic_future_closed = 0.0;    // s(s-1) T / m^2
    double empirical_future_closed = 0.0;
};

// Draws s i.i.d. uniform edges per trial and counts slot pairs forming
// (a) any wedge and (b) a future-closed wedge of the given stream, against
// the analytic expectations.
BirthdayReport verify_birthday(std::span<const Edge> stream, std::size_t s, std::uint64_t trials,
                               std::uint64_t seed);

struct SingleBitComparisonRow {
    std::string method;        // "streaming-triangles" or "single-bit"
    std::size_t edge_storage = 0;   // s_e or |R|
    std::size_t wedge_storage = 0;  // s_w (0 for single-bit)
    std::size_t instances = 1;
    double kappa_est = 0.0;
    double abs_err_kappa = 0.0;
};

// At equal total edge storage: one reservoir-reuse run with
// s_e = s_w = budget/2 versus single-bit ensembles of budget/|R| instances
// for each |R| in `reservoir_sizes`. With `reservoir_proxy` each ensemble
// member is a streaming estimator with s_w = 1, whose closure bit stands in
// for the output bit; the literal single-bit algorithm rebuilds its wedge
// set on every reservoir change and is only practical on smaller inputs.
std::vector<SingleBitComparisonRow> compare_singlebit(std::span<const Edge> stream,
                                                      std::size_t storage_budget,
                                                      std::span<const std::size_t> reservoir_sizes,
                                                      const ExactStats& exact, std::uint64_t seed,
                                                      bool reservoir_proxy = false,
                                                      std::size_t jobs = 1);

// CSV output: UTF-8, comma separated, header row, '\n' line ends. Headers of
// the trial CSV match TrialResult field names; undefined values print as NA.
void write_trials_csv(const std::string& path, std::span<const TrialResult> rows);
void write_tracking_csv(const std::string& path, const TrackingSeries& series);
void write_convergence_csv(const std::string& path, std::span<const ConvergenceRow> rows);
void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows);
void write_birthday_csv(const std::string& path, const BirthdayReport& report);
void write_singlebit_csv(const std::string& path, std::span<const SingleBitComparisonRow> rows);

// "<experiment>_<graph>_<timestamp>.csv" with a UTC timestamp.
std::string timestamped_csv_name(const std::string& experiment, const std::string& graph);

double median(std::vector<double> values);  // empty -> 0

}  // namespace streamtri

// streamtri: single-pass transitivity and triangle-count estimation for
// edge streams, with exact counting, stream ordering generation, and an
// experiment suite that emits CSV.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "streamtri/estimator.hpp"
#include "streamtri/graph.hpp"
#include "streamtri/harness.hpp"
#include "streamtri/single_bit.hpp"
#include "streamtri/stream.hpp"

namespace {

using namespace streamtri;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;  // bad flags, config, malformed input
constexpr int kExitIo = 3;     // unreadable/unwritable files

struct Options {
    std::string input;
    std::string output;
    std::size_t s_e = 20000;
    std::size_t s_w = 20000;
    std::uint64_t seed = 0;
    std::size_t trials = 1;
    std::uint64_t every = 1;
    std::string ordering = "random";
    std::size_t jobs = 1;
};

std::string input_stem(const std::string& path) {
    if (path == "-") return "stdin";
    return std::filesystem::path(path).stem().string();
}

std::vector<Edge> load_edges(const std::string& path, ParseWarnings* warnings) {
    if (path == "-") return parse_edge_list(std::cin, warnings);
    return parse_edge_list(path, warnings);
}

void report_warnings(const ParseWarnings& w) {
    if (w.self_loops > 0)
        std::cerr << "warning: dropped " << w.self_loops << " self-loop(s)\n";
    if (w.duplicates > 0)
        std::cerr << "warning: dropped " << w.duplicates << " duplicate edge(s)\n";
}

int cmd_exact(const Options& opt) {
    ParseWarnings warnings;
    auto edges = load_edges(opt.input, &warnings);
    report_warnings(warnings);
    ExactStats s = exact_count(AdjacencyGraph::from_edges(edges));
    std::printf("n=%llu m=%llu W=%llu T=%llu kappa=%f\n",
                static_cast<unsigned long long>(s.n), static_cast<unsigned long long>(s.m),
                static_cast<unsigned long long>(s.W), static_cast<unsigned long long>(s.T),
                s.kappa);
    return kExitOk;
}

int cmd_estimate(const Options& opt) {
    std::printf("config: se=%zu sw=%zu seed=%llu input=%s\n", opt.s_e, opt.s_w,
                static_cast<unsigned long long>(opt.seed), opt.input.c_str());
    StreamingTriangles est(EstimatorConfig{opt.s_e, opt.s_w, opt.seed});
    StreamReader reader(opt.input);
    EstimateSnapshot snap;
    while (auto e = reader.next()) snap = est.update(*e);
    if (reader.self_loops_skipped() > 0)
        std::cerr << "warning: skipped " << reader.self_loops_skipped() << " self-loop(s)\n";
    std::printf("t=%llu kappa_est=%f T_est=%.1f W_est=%.1f warmup=%s\n",
                static_cast<unsigned long long>(snap.t), snap.kappa_est, snap.T_est, snap.W_est,
                snap.warmup ? "true" : "false");
    if (snap.kappa_overflow())
        std::cerr << "warning: kappa_est > 1; reservoirs are too small for this stream\n";
    return kExitOk;
}

int cmd_track(const Options& opt) {
    std::printf("config: se=%zu sw=%zu seed=%llu every=%llu input=%s\n", opt.s_e, opt.s_w,
                static_cast<unsigned long long>(opt.seed),
                static_cast<unsigned long long>(opt.every), opt.input.c_str());
    StreamingTriangles est(EstimatorConfig{opt.s_e, opt.s_w, opt.seed});
    StreamReader reader(opt.input);
    TrackingSeries series;
    std::uint64_t t = 0;
    while (auto e = reader.next()) {
        EstimateSnapshot snap = est.update(*e);
        ++t;
        if (t % opt.every != 0) continue;
        series.checkpoints.push_back(
            TrackingPoint{t, snap.kappa_est, snap.T_est, std::nullopt, std::nullopt, snap.warmup});
    }
    std::string path = opt.output.empty()
                           ? timestamped_csv_name("tracking", input_stem(opt.input))
                           : opt.output;
    write_tracking_csv(path, series);
    std::printf("wrote %zu checkpoints to %s\n", series.checkpoints.size(), path.c_str());
    return kExitOk;
}

int cmd_order(const Options& opt) {
    auto kind = parse_ordering(opt.ordering);
    if (!kind) {
        std::cerr << "error: unknown ordering '" << opt.ordering
                  << "' (valid: random, bfs, dfs, deg-asc, deg-desc)\n";
        return kExitUsage;
    }
    std::printf("config: ordering=%s seed=%llu input=%s\n", opt.ordering.c_str(),
                static_cast<unsigned long long>(opt.seed), opt.input.c_str());
    ParseWarnings warnings;
    auto edges = load_edges(opt.input, &warnings);
    report_warnings(warnings);
    EdgeStream stream = order_stream(edges, *kind, opt.seed);
    write_stream(stream, opt.output);
    std::printf("wrote %zu edges to %s\n", stream.size(), opt.output.c_str());
    return kExitOk;
}

const std::vector<std::string> kExperiments = {"convergence", "sweep",    "orderings",
                                               "singlebit",   "birthday", "tracking"};

struct ExperimentOptions {
    std::vector<std::size_t> sizes = {100, 1000, 10000};
    std::string fixed = "se";
    std::size_t fixed_value = 10000;
    std::vector<std::size_t> vary = {1000, 5000, 10000, 20000};
    std::size_t samples = 2;
    std::uint64_t birthday_trials = 100000;
    std::vector<std::size_t> rsizes = {5000};
    std::size_t budget = 250000;
    bool proxy = false;
    bool exact_checkpoints = false;
};

int cmd_experiment(const std::string& name, const Options& opt, const ExperimentOptions& ex) {
    if (std::find(kExperiments.begin(), kExperiments.end(), name) == kExperiments.end()) {
        std::cerr << "error: unknown experiment '" << name << "'; valid names:";
        for (const auto& n : kExperiments) std::cerr << ' ' << n;
        std::cerr << '\n';
        return kExitUsage;
    }
    std::printf("config: experiment=%s seed=%llu trials=%zu jobs=%zu input=%s\n", name.c_str(),
                static_cast<unsigned long long>(opt.seed), opt.trials, opt.jobs,
                opt.input.c_str());

    ParseWarnings warnings;
    auto edges = load_edges(opt.input, &warnings);
    report_warnings(warnings);
    if (edges.empty()) {
        std::cerr << "error: no edges in input\n";
        return kExitUsage;
    }
    const std::string graph_id = input_stem(opt.input);
    std::string path = opt.output.empty() ? timestamped_csv_name(name, graph_id) : opt.output;

    if (name == "birthday") {
        BirthdayReport rep = verify_birthday(edges, ex.samples, ex.birthday_trials, opt.seed);
        write_birthday_csv(path, rep);
        std::printf("s=%zu analytic=%f empirical=%f (all wedges)\n", rep.s,
                    rep.analytic_all_wedges, rep.empirical_all_wedges);
        std::printf("s=%zu analytic=%f empirical=%f (future-closed)\n", rep.s,
                    rep.analytic_future_closed, rep.empirical_future_closed);
        std::printf("wrote %s\n", path.c_str());
        return kExitOk;
    }
    if (name == "tracking") {
        EdgeStream stream = order_stream(edges, OrderingKind::RandomPermutation, opt.seed);
        TrackingSeries series = run_tracking(stream, EstimatorConfig{opt.s_e, opt.s_w, opt.seed},
                                             opt.every, ex.exact_checkpoints);
        write_tracking_csv(path, series);
        std::printf("wrote %zu checkpoints to %s\n", series.checkpoints.size(), path.c_str());
        return kExitOk;
    }

    ExactStats exact = exact_count(AdjacencyGraph::from_edges(edges));
    if (name == "orderings") {
        std::vector<TrialResult> rows;
        std::mt19937_64 master(opt.seed);
        for (OrderingKind kind : kAllOrderings) {
            for (std::size_t trial = 0; trial < opt.trials; ++trial) {
                std::uint64_t s = master();
                EdgeStream stream = order_stream(edges, kind, s);
                rows.push_back(run_trial(stream, EstimatorConfig{opt.s_e, opt.s_w, s}, exact,
                                         graph_id, kind));
            }
        }
        write_trials_csv(path, rows);
        std::printf("wrote %zu trials to %s\n", rows.size(), path.c_str());
        return kExitOk;
    }
    if (name == "convergence") {
        auto rows = run_convergence(edges, ex.sizes, opt.trials, opt.seed, exact, opt.jobs);
        write_convergence_csv(path, rows);
        std::printf("wrote %zu sizes to %s\n", rows.size(), path.c_str());
        return kExitOk;
    }
    if (name == "sweep") {
        FixedReservoir fixed = ex.fixed == "sw" ? FixedReservoir::Wedges : FixedReservoir::Edges;
        auto rows = run_reservoir_sweep(edges, fixed, ex.fixed_value, ex.vary, opt.trials,
                                        opt.seed, exact, opt.jobs);
        write_sweep_csv(path, rows);
        std::printf("wrote %zu sizes to %s\n", rows.size(), path.c_str());
        return kExitOk;
    }
    // singlebit
    EdgeStream stream = order_stream(edges, OrderingKind::RandomPermutation, opt.seed);
    auto rows =
        compare_singlebit(stream, ex.budget, ex.rsizes, exact, opt.seed, ex.proxy, opt.jobs);
    write_singlebit_csv(path, rows);
    std::printf("wrote %zu rows to %s\n", rows.size(), path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming transitivity and triangle-count estimation"};
    app.require_subcommand(1);

    Options opt;
    ExperimentOptions ex;
    std::string experiment_name;

    auto add_reservoir_flags = [&opt](CLI::App* cmd) {
        cmd->add_option("--se", opt.s_e, "edge reservoir slots")->capture_default_str();
        cmd->add_option("--sw", opt.s_w, "wedge reservoir slots")->capture_default_str();
        cmd->add_option("--seed", opt.seed, "PRNG seed")->capture_default_str();
    };

    CLI::App* exact = app.add_subcommand("exact", "exact n, m, W, T and transitivity");
    exact->add_option("input", opt.input, "edge list file, or - for stdin")->required();

    CLI::App* estimate =
        app.add_subcommand("estimate", "single-pass estimate over an edge stream");
    estimate->add_option("input", opt.input, "stream file, or - for stdin")->required();
    add_reservoir_flags(estimate);

    CLI::App* track = app.add_subcommand("track", "running estimates to a CSV series");
    track->add_option("input", opt.input, "stream file, or - for stdin")->required();
    add_reservoir_flags(track);
    track->add_option("--every", opt.every, "checkpoint interval")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    track->add_option("--output", opt.output, "CSV path (default: timestamped)");

    CLI::App* order = app.add_subcommand("order", "write a stream ordering of an edge list");
    order->add_option("input", opt.input, "edge list file, or - for stdin")->required();
    order->add_option("--ordering", opt.ordering, "random|bfs|dfs|deg-asc|deg-desc")
        ->capture_default_str();
    order->add_option("--seed", opt.seed, "PRNG seed")->capture_default_str();
    order->add_option("--output", opt.output, "stream file to write")->required();

    CLI::App* experiment = app.add_subcommand("experiment", "run an experiment, emit CSV");
    experiment
        ->add_option("name", experiment_name,
                     "convergence|sweep|orderings|singlebit|birthday|tracking")
        ->required();
    experiment->add_option("--input", opt.input, "edge list file")->required();
    add_reservoir_flags(experiment);
    experiment->add_option("--trials", opt.trials, "trials per configuration")
        ->capture_default_str();
    experiment->add_option("--jobs", opt.jobs, "parallel trial fan-out")->capture_default_str();
    experiment->add_option("--output", opt.output, "CSV path (default: timestamped)");
    experiment->add_option("--every", opt.every, "tracking checkpoint interval")
        ->capture_default_str();
    experiment->add_option("--sizes", ex.sizes, "convergence: s values (s_e = s_w = s)")
        ->delimiter(',');
    experiment->add_option("--fixed", ex.fixed, "sweep: which reservoir stays fixed (se|sw)")
        ->check(CLI::IsMember({"se", "sw"}))
        ->capture_default_str();
    experiment->add_option("--fixed-value", ex.fixed_value, "sweep: fixed reservoir size")
        ->capture_default_str();
    experiment->add_option("--vary", ex.vary, "sweep: sizes for the varying reservoir")
        ->delimiter(',');
    experiment->add_option("--samples", ex.samples, "birthday: edges drawn per trial")
        ->capture_default_str();
    experiment->add_option("--birthday-trials", ex.birthday_trials, "birthday: trial count")
        ->capture_default_str();
    experiment->add_option("--rsizes", ex.rsizes, "singlebit: reservoir sizes |R|")
        ->delimiter(',');
    experiment->add_option("--budget", ex.budget, "singlebit: total edge storage")
        ->capture_default_str();
    experiment->add_flag("--proxy", ex.proxy, "singlebit: use s_w=1 estimator instances");
    experiment->add_flag("--exact-checkpoints", ex.exact_checkpoints,
                         "tracking: recompute exact stats per prefix (slow)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (exact->parsed()) return cmd_exact(opt);
        if (estimate->parsed()) return cmd_estimate(opt);
        if (track->parsed()) return cmd_track(opt);
        if (order->parsed()) return cmd_order(opt);
        return cmd_experiment(experiment_name, opt, ex);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

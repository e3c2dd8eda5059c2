#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "esnfb/closed_loop.hpp"
#include "esnfb/experiments.hpp"
#include "esnfb/metrics.hpp"

namespace esnfb {

struct RunOptions {
    std::optional<std::size_t> n_seeds;  // defaults to the experiment's n_seeds
    std::uint64_t base_seed = 0;
    std::size_t threads = 0;  // 0 = hardware concurrency
};

struct EpisodeMetrics {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    bool ok = true;
    std::string failure;
    double alpha = 0.0;
    double lambda = 0.0;
    double k_p = 0.0;
    double k_d = 0.0;
    double final_rmse = 0.0;          // RMSE of e~ over the final window
    double final_mean_abs_err = 0.0;  // mean |e~| over the final window
    double feedback_abs = 0.0;        // mean |u_bar - u_f| over the trailing feedback fraction
    double control_abs = 0.0;         // mean |u_bar| over the same window
    std::optional<std::size_t> recovery;  // convergence step after convergence_from
};

struct ArmResult {
    std::string label;
    ControlMethod method = ControlMethod::EsnFb;
    std::vector<EpisodeMetrics> episodes;
    std::optional<AggregateSeries> aggregate;  // over successful episodes only

    [[nodiscard]] std::vector<std::size_t> failed_seeds() const;
    // Metric over successful episodes, in index order.
    [[nodiscard]] std::vector<double> collect(double EpisodeMetrics::*field) const;
    // Recovery steps with "never" mapped to `never_value`.
    [[nodiscard]] std::vector<double> recoveries(double never_value) const;
};

struct ExperimentResult {
    std::string name;
    std::uint64_t base_seed = 0;
    std::size_t n_seeds = 0;
    EvaluationSpec evaluation;
    std::vector<ArmResult> arms;

    [[nodiscard]] const ArmResult* arm(std::string_view label) const;
};

// Episode `index` of `arm`: seeds a generator from derive_seed(base_seed,
// index), applies the arm's randomization with it, and hands back both. The
// generator continues into run_episode.
std::pair<EpisodeConfig, Rng> resolve_episode(const Arm& arm, std::uint64_t base_seed, std::size_t index);

EpisodeMetrics score_episode(const RunTrace& trace, const EvaluationSpec& eval);

// Runs every arm for n_seeds episodes. Episodes execute concurrently; a
// numerical failure marks that seed and the sweep continues.
ExperimentResult run_experiment(const Experiment& exp, const RunOptions& opts = {});

// Writes <out_dir>/<experiment>/<arm>.csv, episodes.json and summary.json.
// Throws std::runtime_error on I/O failure.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& out_dir);

nlohmann::json summarize(const ExperimentResult& result);

// Aggregate CSV: step,ref,y_mean,y_std,err_mean,err_std,uf_mean,uf_std,ub_mean,ub_std,ubar_mean,ubar_std
void write_aggregate_csv(std::ostream& os, const AggregateSeries& agg);

// Single-trace CSV: step,yd,y,ytilde,etilde,uf,ub,u,ubar,eesn
void write_trace_csv(std::ostream& os, const RunTrace& trace);

// Shortest round-trip-safe rendering with 17 significant digits.
std::string format_number(double v);

/**
 * Applies a run configuration document to an experiment. Recognized keys:
 *   "seeds"      integer, replaces n_seeds
 *   "base_seed"  integer, returned through `base_seed`
 *   "episode"    object merge-patched onto every arm's config
 * Unknown keys are rejected.
 */
void apply_run_config(const nlohmann::json& doc, Experiment& exp, std::optional<std::uint64_t>& base_seed);

}  // namespace esnfb

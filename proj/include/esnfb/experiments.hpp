#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esnfb/closed_loop.hpp"
#include "esnfb/rng.hpp"

namespace esnfb {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Per-episode hyperparameter draws, made before the network is initialized.
// Draw order is alpha, lambda, k_p, k_d; one uniform draw per present entry.
struct Randomization {
    std::optional<Interval> log10_alpha;             // alpha = 10^U(lo, hi)
    std::optional<Interval> log10_one_minus_lambda;  // lambda = 1 - 10^U(lo, hi)
    std::optional<Interval> k_p;                     // K_P = U(lo, hi)
    std::optional<Interval> k_d;                     // K_D = U(lo, hi)

    [[nodiscard]] bool empty() const noexcept { return !log10_alpha && !log10_one_minus_lambda && !k_p && !k_d; }

    friend bool operator==(const Randomization&, const Randomization&) = default;
};

void apply_randomization(const Randomization& rand, EpisodeConfig& cfg, Rng& rng);

// One configuration run across all seeds of an experiment.
struct Arm {
    std::string label;
    EpisodeConfig config;
    Randomization randomization;

    friend bool operator==(const Arm&, const Arm&) = default;
};

// How each episode is scored.
struct EvaluationSpec {
    std::size_t final_window = 200;               // trailing steps for RMSE / mean |e|
    double feedback_fraction = 0.2;               // trailing share for the feedback-element ratio
    std::optional<std::size_t> convergence_from;  // scan start for recovery; unset disables
    double convergence_tol = 0.1;
    std::size_t convergence_hold = 200;

    friend bool operator==(const EvaluationSpec&, const EvaluationSpec&) = default;
};

struct Experiment {
    std::string name;
    std::string description;
    std::vector<Arm> arms;
    std::size_t n_seeds = 100;
    EvaluationSpec evaluation;

    friend bool operator==(const Experiment&, const Experiment&) = default;
};

// Nominal per-method settings on top of which experiments are built.
EpisodeConfig nominal_config(ControlMethod method, ReferenceSignal signal);

inline constexpr std::size_t kStepHorizon = 2000;
inline constexpr std::size_t kTrackingHorizon = 6000;
inline constexpr std::size_t kDisturbanceHorizon = 8000;
inline constexpr std::size_t kDisturbanceSwitch = 2000;
// Recovery tolerance as a fraction of the reference amplitude.
inline constexpr double kDefaultTolFraction = 0.1;

// Every registered experiment, in figure order. Names are unique.
const std::vector<Experiment>& registry();

const Experiment* find_experiment(std::string_view name);

}  // namespace esnfb

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "esnfb/closed_loop.hpp"

namespace esnfb {

// Root-mean-square of e~ over [from, to). Throws InvalidArgument on an empty
// or out-of-range window.
double window_rmse(const RunTrace& trace, std::size_t from, std::size_t to);
double window_rmse(std::span<const double> errors, std::size_t from, std::size_t to);

// Mean of |e~| over [from, to).
double window_mean_abs(std::span<const double> values, std::size_t from, std::size_t to);

// Smallest k with |e_j| < tol for every j in [k, k + hold); nullopt if none.
// Throws InvalidArgument unless tol > 0 and hold >= 1.
std::optional<std::size_t> convergence_step(std::span<const double> errors, double tol, std::size_t hold);
std::optional<std::size_t> convergence_step(const RunTrace& trace, double tol, std::size_t hold);

inline constexpr double kDefaultConvergenceTol = 0.1;
inline constexpr std::size_t kDefaultConvergenceHold = 200;

// Per-step cross-seed mean and population standard deviation of every channel.
struct AggregateSeries {
    std::size_t n_seeds = 0;
    std::array<std::vector<double>, kChannelCount> mean;
    std::array<std::vector<double>, kChannelCount> std;

    [[nodiscard]] std::size_t size() const noexcept { return mean[0].size(); }
    [[nodiscard]] std::span<const double> mean_of(Channel c) const noexcept {
        return mean[static_cast<std::size_t>(c)];
    }
    [[nodiscard]] std::span<const double> std_of(Channel c) const noexcept {
        return std[static_cast<std::size_t>(c)];
    }
};

// Throws InvalidArgument for an empty list and ShapeError for unequal horizons.
AggregateSeries aggregate(std::span<const RunTrace> traces);

// Summary statistics over a sample; median averages the two middle values.
struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double std = 0.0;  // population
    double median = 0.0;
};
SampleStats describe(std::span<const double> values);

}  // namespace esnfb

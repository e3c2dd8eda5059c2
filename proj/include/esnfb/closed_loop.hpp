#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "esnfb/control.hpp"
#include "esnfb/esn.hpp"
#include "esnfb/plant.hpp"
#include "esnfb/rls.hpp"
#include "esnfb/signals.hpp"

namespace esnfb {

struct RlsSettings {
    double alpha = 1.0;
    double lambda = 1.0 - 1e-3;

    friend bool operator==(const RlsSettings&, const RlsSettings&) = default;
};

// Pre-training on random saturated inputs, used by the Tesn method.
struct PretrainSpec {
    std::size_t steps = 100;
    double input_mean = 1.0;
    double input_std = 0.3;

    friend bool operator==(const PretrainSpec&, const PretrainSpec&) = default;
};

struct ScheduleEntry {
    std::size_t start = 0;
    PlantVariant variant = PlantVariant::A;

    friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

struct EpisodeConfig {
    ControlMethod method = ControlMethod::EsnFb;
    EsnSpec esn;
    RlsSettings rls;
    PdGains gains;
    ReferenceSignal signal;  // signal.horizon is the episode length
    std::vector<ScheduleEntry> plant_schedule{{0, PlantVariant::A}};
    double noise_std = 0.01;
    std::optional<PretrainSpec> pretrain;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t horizon() const noexcept { return signal.horizon; }
    [[nodiscard]] PlantVariant variant_at(std::size_t k) const noexcept;

    friend bool operator==(const EpisodeConfig&, const EpisodeConfig&) = default;
};

// Throws InvalidArgument describing the first violated constraint.
void validate(const EpisodeConfig& cfg);

enum class Channel : std::size_t { YD, Y, YTilde, ETilde, UF, UB, U, UBar, EEsn };
inline constexpr std::size_t kChannelCount = 9;
inline constexpr std::array<Channel, kChannelCount> kAllChannels{
    Channel::YD, Channel::Y, Channel::YTilde, Channel::ETilde, Channel::UF,
    Channel::UB, Channel::U,  Channel::UBar,  Channel::EEsn};

std::string_view channel_name(Channel c) noexcept;

// Per-step record of one episode. e_esn is 0 on steps without an RLS update.
struct RunTrace {
    std::vector<double> y_d, y, y_tilde, e_tilde, u_f, u_b, u, u_bar, e_esn;

    explicit RunTrace(std::size_t horizon = 0);

    [[nodiscard]] std::size_t size() const noexcept { return y_d.size(); }
    [[nodiscard]] std::span<const double> channel(Channel c) const noexcept;
    [[nodiscard]] std::span<double> channel(Channel c) noexcept;
};

struct RlsEvent {
    std::size_t step = 0;
    std::size_t target_step = 0;  // index whose saturated input served as target
    double target = 0.0;
    const Readout* readout = nullptr;  // after the update
};

// Test seams. Unset members cost nothing.
struct EpisodeHooks {
    // Replaces the controller-net output u_f at step k.
    std::function<double(std::size_t k, double u_f)> feedforward_override;
    // Observes the readout the controller net used at step k.
    std::function<void(std::size_t k, const Readout&)> on_feedforward;
    std::function<void(const RlsEvent&)> on_rls_update;
};

struct PretrainResult {
    EsnState learner;
    Readout readout;
    RlsState rls;
};

/**
 * Runs the learner net and RLS over `spec.steps` random inputs from a resting
 * plant A. Per step t: u_bar = saturate(normal(mean, std)); y~ = sense(y);
 * plant step; learner step on the y~ window ending at t; for t >= tap size an
 * RLS update with target u_bar[t - tap]. Two normal() calls per step.
 */
PretrainResult pretrain_tesn(const PretrainSpec& spec, const EsnParams& params, EsnState learner,
                             Readout readout, RlsState rls, Rng& rng, double noise_std);

/**
 * Simulates one episode. Draw order on `rng`: init_esn, then pre-training
 * (Tesn only), then one sensor draw per control step. Every method draws the
 * network, so equal seeds give equal reservoirs and equal noise across
 * methods that do not pre-train.
 *
 * Per step k:
 *   1. y~[k] = sense(y[k])
 *   2. e~[k] = y_d[k] - y~[k];  u_b[k] = P-D law (y~[-1] = 0)
 *   3. controller net absorbs future_window(k); u_f[k] = w . x_C with the
 *      readout from the update at k-1
 *   4. u[k] from the method's composition rule (u_bar[-1] = u_f[-1] = 0);
 *      u_bar[k] = saturate(u[k])
 *   5. plant step with u_bar[k] under the scheduled variant
 *   6. learner net absorbs [y~[k-tap+1] .. y~[k]] (zeros before k = 0)
 *   7. for k >= tap: RLS update with target u_bar[k - tap]
 * Fb skips 3, 6 and 7 and records u_f = 0.
 *
 * Throws NumericalFailure carrying the step index if a signal goes non-finite.
 */
RunTrace run_episode(const EpisodeConfig& cfg, Rng& rng, const EpisodeHooks& hooks = {});

// Same, with a generator seeded from cfg.seed.
RunTrace run_episode(const EpisodeConfig& cfg, const EpisodeHooks& hooks = {});

}  // namespace esnfb

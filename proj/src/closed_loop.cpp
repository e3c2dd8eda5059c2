#include "esnfb/closed_loop.hpp"

#include <cmath>
#include <string>

#include "esnfb/error.hpp"

namespace esnfb {

PlantVariant EpisodeConfig::variant_at(std::size_t k) const noexcept {
    PlantVariant v = PlantVariant::A;
    for (const auto& entry : plant_schedule) {
        if (entry.start > k) break;
        v = entry.variant;
    }
    return v;
}

void validate(const EpisodeConfig& cfg) {
    if (cfg.horizon() == 0) throw InvalidArgument("episode horizon must be positive");
    if (cfg.plant_schedule.empty() || cfg.plant_schedule.front().start != 0)
        throw InvalidArgument("plant schedule must start at step 0");
    for (std::size_t i = 1; i < cfg.plant_schedule.size(); ++i)
        if (cfg.plant_schedule[i].start <= cfg.plant_schedule[i - 1].start)
            throw InvalidArgument("plant schedule indices must be strictly increasing");
    if (cfg.pretrain.has_value() != (cfg.method == ControlMethod::Tesn))
        throw InvalidArgument("a pre-training block is required for tesn and only for tesn");
    if (cfg.pretrain && !(cfg.pretrain->input_std >= 0.0))
        throw InvalidArgument("pre-training input std must be non-negative");
    if (!(cfg.noise_std >= 0.0)) throw InvalidArgument("noise std must be non-negative");
    if (!(cfg.rls.alpha > 0.0)) throw InvalidArgument("RLS learning rate must be positive");
    if (!(cfg.rls.lambda > 0.0 && cfg.rls.lambda <= 1.0))
        throw InvalidArgument("RLS forgetting factor must lie in (0, 1]");
    if (cfg.esn.tap_size == 0 || cfg.esn.reservoir_size == 0)
        throw InvalidArgument("reservoir and tap sizes must be positive");
    validate(cfg.gains);
}

std::string_view channel_name(Channel c) noexcept {
    switch (c) {
        case Channel::YD: return "yd";
        case Channel::Y: return "y";
        case Channel::YTilde: return "ytilde";
        case Channel::ETilde: return "etilde";
        case Channel::UF: return "uf";
        case Channel::UB: return "ub";
        case Channel::U: return "u";
        case Channel::UBar: return "ubar";
        case Channel::EEsn: return "eesn";
    }
    return "";
}

RunTrace::RunTrace(std::size_t horizon)
    : y_d(horizon), y(horizon), y_tilde(horizon), e_tilde(horizon), u_f(horizon), u_b(horizon),
      u(horizon), u_bar(horizon), e_esn(horizon) {}

std::span<double> RunTrace::channel(Channel c) noexcept {
    switch (c) {
        case Channel::YD: return y_d;
        case Channel::Y: return y;
        case Channel::YTilde: return y_tilde;
        case Channel::ETilde: return e_tilde;
        case Channel::UF: return u_f;
        case Channel::UB: return u_b;
        case Channel::U: return u;
        case Channel::UBar: return u_bar;
        case Channel::EEsn: return e_esn;
    }
    return {};
}

std::span<const double> RunTrace::channel(Channel c) const noexcept {
    return const_cast<RunTrace*>(this)->channel(c);
}

namespace {

// window[i] = history[k - tap + 1 + i], zero for negative indices
void fill_history_window(std::span<const double> history, std::size_t k, std::span<double> window) {
    const std::size_t tap = window.size();
    for (std::size_t i = 0; i < tap; ++i) {
        const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(k + 1 + i) - static_cast<std::ptrdiff_t>(tap);
        window[i] = idx >= 0 ? history[static_cast<std::size_t>(idx)] : 0.0;
    }
}

}  // namespace

PretrainResult pretrain_tesn(const PretrainSpec& spec, const EsnParams& params, EsnState learner,
                             Readout readout, RlsState rls, Rng& rng, double noise_std) {
    const std::size_t tap = params.tap_size;
    std::vector<double> inputs(spec.steps), sensed(spec.steps);
    Vector window(tap), scratch(params.reservoir_size);
    PlantState plant;
    for (std::size_t t = 0; t < spec.steps; ++t) {
        inputs[t] = saturate(normal(rng, spec.input_mean, spec.input_std));
        sensed[t] = sense(plant.y_curr, rng, noise_std);
        plant = plant_step(plant, inputs[t]);
        fill_history_window(sensed, t, window);
        esn_step_inplace(params, learner.x, window, scratch);
        if (t >= tap) rls_update(rls, readout, learner.x, inputs[t - tap]);
    }
    return {std::move(learner), std::move(readout), std::move(rls)};
}

RunTrace run_episode(const EpisodeConfig& cfg, Rng& rng, const EpisodeHooks& hooks) {
    validate(cfg);
    const std::size_t horizon = cfg.horizon();
    const std::size_t tap = cfg.esn.tap_size;
    const bool uses_esn = cfg.method != ControlMethod::Fb;

    EsnInit net = init_esn(rng, cfg.esn);
    EsnState controller = net.state;
    EsnState learner = net.state;
    Readout readout = std::move(net.readout);
    RlsState rls = rls_init(cfg.rls.alpha, cfg.esn.reservoir_size, cfg.rls.lambda);

    if (cfg.pretrain) {
        auto pre = pretrain_tesn(*cfg.pretrain, net.params, std::move(learner), std::move(readout),
                                 std::move(rls), rng, cfg.noise_std);
        learner = std::move(pre.learner);
        readout = std::move(pre.readout);
        rls = std::move(pre.rls);
    }

    RunTrace trace(horizon);
    PlantState plant;
    Vector ref_window(tap), y_window(tap), scratch(cfg.esn.reservoir_size);
    double u_f_prev = 0.0;
    double u_bar_prev = 0.0;

    for (std::size_t k = 0; k < horizon; ++k) {
        plant.variant = cfg.variant_at(k);

        const double y_tilde = sense(plant.y_curr, rng, cfg.noise_std);
        const double y_tilde_prev = k > 0 ? trace.y_tilde[k - 1] : 0.0;
        const double y_d = reference_at(cfg.signal, k);
        const double e_tilde = y_d - y_tilde;
        const double u_b = pd_output(cfg.gains, e_tilde, y_tilde_prev, y_tilde);

        double u_f = 0.0;
        if (uses_esn) {
            for (std::size_t i = 0; i < tap; ++i) ref_window[i] = reference_at(cfg.signal, k + 1 + i);
            esn_step_inplace(net.params, controller.x, ref_window, scratch);
            if (hooks.on_feedforward) hooks.on_feedforward(k, readout);
            u_f = dot(readout.w, controller.x);
        }
        if (hooks.feedforward_override) u_f = hooks.feedforward_override(k, u_f);

        const double u = compose_output(cfg.method, u_bar_prev, u_f, u_f_prev, u_b);
        const double u_bar = saturate(u);
        if (!std::isfinite(u)) throw NumericalFailure("run_episode: non-finite control output", k);

        trace.y_d[k] = y_d;
        trace.y[k] = plant.y_curr;
        trace.y_tilde[k] = y_tilde;
        trace.e_tilde[k] = e_tilde;
        trace.u_f[k] = u_f;
        trace.u_b[k] = u_b;
        trace.u[k] = u;
        trace.u_bar[k] = u_bar;

        try {
            plant = plant_step(plant, u_bar);
            if (uses_esn) {
                fill_history_window(trace.y_tilde, k, y_window);
                esn_step_inplace(net.params, learner.x, y_window, scratch);
                if (k >= tap) {
                    const double target = trace.u_bar[k - tap];
                    trace.e_esn[k] = rls_update(rls, readout, learner.x, target).error;
                    if (hooks.on_rls_update) hooks.on_rls_update({k, k - tap, target, &readout});
                }
            }
        } catch (const NumericalFailure& err) {
            throw NumericalFailure(err.what(), k);
        }

        u_f_prev = u_f;
        u_bar_prev = u_bar;
    }
    return trace;
}

RunTrace run_episode(const EpisodeConfig& cfg, const EpisodeHooks& hooks) {
    Rng rng(cfg.seed);
    return run_episode(cfg, rng, hooks);
}

}  // namespace esnfb

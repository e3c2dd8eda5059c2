#include "esnfb/config_json.hpp"

#include <string>

#include "esnfb/error.hpp"

namespace esnfb {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end() && !it->is_null()) it->get_to(out);
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out) {
    if (auto it = j.find(key); it != j.end()) {
        if (it->is_null()) {
            out.reset();
        } else {
            T value = out.value_or(T{});
            it->get_to(value);
            out = value;
        }
    }
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string_view variant_name(PlantVariant v) {
    return v == PlantVariant::A ? "A" : "B";
}

PlantVariant parse_variant(const std::string& s) {
    if (s == "A") return PlantVariant::A;
    if (s == "B") return PlantVariant::B;
    throw InvalidArgument("unknown plant variant '" + s + "'");
}

json signal_json(const ReferenceSignal& sig) {
    if (const auto* s = std::get_if<StepParams>(&sig.shape))
        return {{"kind", "step"}, {"rise_step", s->rise_step}, {"amplitude", s->amplitude}};
    const auto& c = std::get<ComplexParams>(sig.shape);
    return {{"kind", "complex"}, {"offset", c.offset}, {"amp1", c.amp1},     {"period1", c.period1},
            {"amp2", c.amp2},    {"period2", c.period2}, {"phase2", c.phase2}};
}

void read_signal(const json& j, ReferenceSignal& sig) {
    std::string kind = std::holds_alternative<StepParams>(sig.shape) ? "step" : "complex";
    read(j, "kind", kind);
    if (kind == "step") {
        StepParams p = std::holds_alternative<StepParams>(sig.shape) ? std::get<StepParams>(sig.shape) : StepParams{};
        read(j, "rise_step", p.rise_step);
        read(j, "amplitude", p.amplitude);
        sig.shape = p;
    } else if (kind == "complex") {
        ComplexParams p =
            std::holds_alternative<ComplexParams>(sig.shape) ? std::get<ComplexParams>(sig.shape) : ComplexParams{};
        read(j, "offset", p.offset);
        read(j, "amp1", p.amp1);
        read(j, "period1", p.period1);
        read(j, "amp2", p.amp2);
        read(j, "period2", p.period2);
        read(j, "phase2", p.phase2);
        sig.shape = p;
    } else {
        throw InvalidArgument("unknown signal kind '" + kind + "'");
    }
}

}  // namespace

void to_json(json& j, const EsnSpec& v) {
    j = {{"reservoir_size", v.reservoir_size}, {"tap_size", v.tap_size},
         {"leak_rate", v.leak_rate},           {"spectral_target", v.spectral_target},
         {"input_scale", v.input_scale},       {"output_init_scale", v.output_init_scale},
         {"washout_steps", v.washout_steps}};
}

void from_json(const json& j, EsnSpec& v) {
    read(j, "reservoir_size", v.reservoir_size);
    read(j, "tap_size", v.tap_size);
    read(j, "leak_rate", v.leak_rate);
    read(j, "spectral_target", v.spectral_target);
    read(j, "input_scale", v.input_scale);
    read(j, "output_init_scale", v.output_init_scale);
    read(j, "washout_steps", v.washout_steps);
}

void to_json(json& j, const RlsSettings& v) { j = {{"alpha", v.alpha}, {"lambda", v.lambda}}; }

void from_json(const json& j, RlsSettings& v) {
    read(j, "alpha", v.alpha);
    read(j, "lambda", v.lambda);
}

void to_json(json& j, const PdGains& v) { j = {{"k_p", v.k_p}, {"k_d", v.k_d}}; }

void from_json(const json& j, PdGains& v) {
    read(j, "k_p", v.k_p);
    read(j, "k_d", v.k_d);
}

void to_json(json& j, const PretrainSpec& v) {
    j = {{"steps", v.steps}, {"input_mean", v.input_mean}, {"input_std", v.input_std}};
}

void from_json(const json& j, PretrainSpec& v) {
    read(j, "steps", v.steps);
    read(j, "input_mean", v.input_mean);
    read(j, "input_std", v.input_std);
}

void to_json(json& j, const ScheduleEntry& v) { j = {{"start", v.start}, {"variant", variant_name(v.variant)}}; }

void from_json(const json& j, ScheduleEntry& v) {
    read(j, "start", v.start);
    if (auto it = j.find("variant"); it != j.end()) v.variant = parse_variant(it->get<std::string>());
}

void to_json(json& j, const EpisodeConfig& v) {
    j = {{"method", to_string(v.method)},
         {"esn", v.esn},
         {"rls", v.rls},
         {"gains", v.gains},
         {"signal", signal_json(v.signal)},
         {"horizon", v.signal.horizon},
         {"plant_variant_schedule", v.plant_schedule},
         {"noise_std", v.noise_std},
         {"pretrain", optional_json(v.pretrain)},
         {"seed", v.seed}};
}

void from_json(const json& j, EpisodeConfig& v) {
    if (auto it = j.find("method"); it != j.end()) {
        const auto name = it->get<std::string>();
        const auto m = parse_method(name);
        if (!m) throw InvalidArgument("unknown control method '" + name + "'");
        v.method = *m;
    }
    read(j, "esn", v.esn);
    read(j, "rls", v.rls);
    read(j, "gains", v.gains);
    if (auto it = j.find("signal"); it != j.end()) read_signal(*it, v.signal);
    read(j, "horizon", v.signal.horizon);
    read(j, "plant_variant_schedule", v.plant_schedule);
    read(j, "noise_std", v.noise_std);
    read_optional(j, "pretrain", v.pretrain);
    read(j, "seed", v.seed);
}

void to_json(json& j, const Interval& v) { j = json::array({v.lo, v.hi}); }

void from_json(const json& j, Interval& v) {
    if (!j.is_array() || j.size() != 2) throw InvalidArgument("interval must be a [lo, hi] pair");
    v.lo = j[0].get<double>();
    v.hi = j[1].get<double>();
}

void to_json(json& j, const Randomization& v) {
    j = {{"log10_alpha", optional_json(v.log10_alpha)},
         {"log10_one_minus_lambda", optional_json(v.log10_one_minus_lambda)},
         {"k_p", optional_json(v.k_p)},
         {"k_d", optional_json(v.k_d)}};
}

void from_json(const json& j, Randomization& v) {
    read_optional(j, "log10_alpha", v.log10_alpha);
    read_optional(j, "log10_one_minus_lambda", v.log10_one_minus_lambda);
    read_optional(j, "k_p", v.k_p);
    read_optional(j, "k_d", v.k_d);
}

void to_json(json& j, const Arm& v) {
    j = {{"label", v.label}, {"config", v.config}, {"randomization", v.randomization}};
}

void from_json(const json& j, Arm& v) {
    read(j, "label", v.label);
    read(j, "config", v.config);
    read(j, "randomization", v.randomization);
}

void to_json(json& j, const EvaluationSpec& v) {
    j = {{"final_window", v.final_window},
         {"feedback_fraction", v.feedback_fraction},
         {"convergence_from", optional_json(v.convergence_from)},
         {"convergence_tol", v.convergence_tol},
         {"convergence_hold", v.convergence_hold}};
}

void from_json(const json& j, EvaluationSpec& v) {
    read(j, "final_window", v.final_window);
    read(j, "feedback_fraction", v.feedback_fraction);
    read_optional(j, "convergence_from", v.convergence_from);
    read(j, "convergence_tol", v.convergence_tol);
    read(j, "convergence_hold", v.convergence_hold);
}

void to_json(json& j, const Experiment& v) {
    j = {{"name", v.name},
         {"description", v.description},
         {"n_seeds", v.n_seeds},
         {"evaluation", v.evaluation},
         {"arms", v.arms}};
}

void from_json(const json& j, Experiment& v) {
    read(j, "name", v.name);
    read(j, "description", v.description);
    read(j, "n_seeds", v.n_seeds);
    read(j, "evaluation", v.evaluation);
    read(j, "arms", v.arms);
}

}  // namespace esnfb

#include "esnfb/experiments.hpp"

#include <cmath>

namespace esnfb {

void apply_randomization(const Randomization& rand, EpisodeConfig& cfg, Rng& rng) {
    if (rand.log10_alpha) cfg.rls.alpha = std::pow(10.0, uniform(rng, rand.log10_alpha->lo, rand.log10_alpha->hi));
    if (rand.log10_one_minus_lambda) {
        const auto& iv = *rand.log10_one_minus_lambda;
        cfg.rls.lambda = 1.0 - std::pow(10.0, uniform(rng, iv.lo, iv.hi));
    }
    if (rand.k_p) cfg.gains.k_p = uniform(rng, rand.k_p->lo, rand.k_p->hi);
    if (rand.k_d) cfg.gains.k_d = uniform(rng, rand.k_d->lo, rand.k_d->hi);
}

EpisodeConfig nominal_config(ControlMethod method, ReferenceSignal signal) {
    EpisodeConfig cfg;
    cfg.method = method;
    cfg.signal = std::move(signal);
    if (method == ControlMethod::Esn || method == ControlMethod::Tesn) cfg.gains = {0.0, 0.0};
    if (method == ControlMethod::Tesn) cfg.pretrain = PretrainSpec{};
    return cfg;
}

namespace {

constexpr ControlMethod kAllMethods[] = {ControlMethod::EsnFb, ControlMethod::Esn, ControlMethod::Tesn,
                                         ControlMethod::Fb};

Arm method_arm(ControlMethod m, const ReferenceSignal& sig) {
    return {std::string(to_string(m)), nominal_config(m, sig), {}};
}

Arm pretrained_arm(double mean, double std, const ReferenceSignal& sig, std::string label) {
    Arm arm = method_arm(ControlMethod::Tesn, sig);
    arm.label = std::move(label);
    arm.config.pretrain = PretrainSpec{100, mean, std};
    return arm;
}

Randomization random_rls() {
    Randomization r;
    r.log10_alpha = Interval{-1.0, 1.0};
    r.log10_one_minus_lambda = Interval{-4.0, -2.0};
    return r;
}

Randomization random_pd() {
    Randomization r;
    r.k_p = Interval{0.0, 0.01};
    r.k_d = Interval{0.0, 1e-4};
    return r;
}

EpisodeConfig with_switch(EpisodeConfig cfg) {
    cfg.plant_schedule = {{0, PlantVariant::A}, {kDisturbanceSwitch, PlantVariant::B}};
    return cfg;
}

EvaluationSpec final_window_eval(std::size_t window) {
    EvaluationSpec e;
    e.final_window = window;
    return e;
}

EvaluationSpec step_eval() { return final_window_eval(200); }

EvaluationSpec tracking_eval() { return final_window_eval(1000); }

EvaluationSpec disturbance_eval(const ReferenceSignal& sig) {
    EvaluationSpec e;
    e.final_window = 1000;
    e.convergence_from = kDisturbanceSwitch;
    e.convergence_tol = kDefaultTolFraction * sig.amplitude();
    e.convergence_hold = 200;
    return e;
}

std::vector<Experiment> build_registry() {
    const ReferenceSignal step = step_signal(kStepHorizon);
    const ReferenceSignal tracking = complex_signal(kTrackingHorizon);
    const ReferenceSignal disturbed = complex_signal(kDisturbanceHorizon);

    std::vector<Experiment> reg;

    {
        Experiment e{"step", "Step response, four methods", {}, 100, step_eval()};
        for (auto m : kAllMethods) e.arms.push_back(method_arm(m, step));
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"tracking", "Complex reference tracking, four methods", {}, 100, tracking_eval()};
        for (auto m : kAllMethods) e.arms.push_back(method_arm(m, tracking));
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"decomposition", "Feedforward and feedback elements of esnfb on both tasks", {}, 100,
                     tracking_eval()};
        Arm s = method_arm(ControlMethod::EsnFb, step);
        s.label = "esnfb-step";
        Arm c = method_arm(ControlMethod::EsnFb, tracking);
        c.label = "esnfb-complex";
        e.arms = {s, c};
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"disturbance", "Plant switch A -> B at step 2000, esnfb vs tesn", {}, 100,
                     disturbance_eval(disturbed)};
        for (auto m : {ControlMethod::EsnFb, ControlMethod::Tesn}) {
            Arm a = method_arm(m, disturbed);
            a.config = with_switch(a.config);
            e.arms.push_back(std::move(a));
        }
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"rand-rls", "esnfb tracking with randomized RLS alpha and lambda", {}, 100, tracking_eval()};
        Arm a = method_arm(ControlMethod::EsnFb, tracking);
        a.randomization = random_rls();
        e.arms.push_back(std::move(a));
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"rand-pd", "esnfb tracking with randomized P-D gains", {}, 100, tracking_eval()};
        Arm a = method_arm(ControlMethod::EsnFb, tracking);
        a.randomization = random_pd();
        e.arms.push_back(std::move(a));
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"rand-rls-esn", "esn and tesn tracking with randomized RLS alpha and lambda", {}, 100,
                     tracking_eval()};
        for (auto m : {ControlMethod::Esn, ControlMethod::Tesn}) {
            Arm a = method_arm(m, tracking);
            a.randomization = random_rls();
            e.arms.push_back(std::move(a));
        }
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"tesn-dist-step", "tesn on the step task, pre-training distribution sweep", {}, 100,
                     step_eval()};
        e.arms = {pretrained_arm(0.15, 0.05, step, "tesn-n0.15"), pretrained_arm(1.0, 0.3, step, "tesn-n1.0"),
                  pretrained_arm(2.4, 0.8, step, "tesn-n2.4")};
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"tesn-dist-complex", "tesn on the complex task, pre-training distribution sweep", {}, 100,
                     tracking_eval()};
        e.arms = {pretrained_arm(0.24, 0.08, tracking, "tesn-n0.24"),
                  pretrained_arm(1.0, 0.3, tracking, "tesn-n1.0"),
                  pretrained_arm(1.5, 0.5, tracking, "tesn-n1.5")};
        reg.push_back(std::move(e));
    }
    {
        Experiment e{"tesn-dist-robustness", "tesn pre-trained on N(0.24, 0.08): plant switch and random RLS", {},
                     100, disturbance_eval(disturbed)};
        Arm d = pretrained_arm(0.24, 0.08, disturbed, "tesn-n0.24-disturbance");
        d.config = with_switch(d.config);
        // arms have different horizons; each is aggregated on its own
        Arm r = pretrained_arm(0.24, 0.08, tracking, "tesn-n0.24-rand-rls");
        r.randomization = random_rls();
        e.arms = {d, r};
        reg.push_back(std::move(e));
    }
    return reg;
}

}  // namespace

const std::vector<Experiment>& registry() {
    static const std::vector<Experiment> reg = build_registry();
    return reg;
}

const Experiment* find_experiment(std::string_view name) {
    for (const auto& e : registry())
        if (e.name == name) return &e;
    return nullptr;
}

}  // namespace esnfb

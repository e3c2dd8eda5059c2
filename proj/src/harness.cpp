#include "esnfb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "esnfb/config_json.hpp"
#include "esnfb/error.hpp"

namespace esnfb {

using nlohmann::json;

std::vector<std::size_t> ArmResult::failed_seeds() const {
    std::vector<std::size_t> out;
    for (const auto& e : episodes)
        if (!e.ok) out.push_back(e.index);
    return out;
}

std::vector<double> ArmResult::collect(double EpisodeMetrics::*field) const {
    std::vector<double> out;
    for (const auto& e : episodes)
        if (e.ok) out.push_back(e.*field);
    return out;
}

std::vector<double> ArmResult::recoveries(double never_value) const {
    std::vector<double> out;
    for (const auto& e : episodes)
        if (e.ok) out.push_back(e.recovery ? static_cast<double>(*e.recovery) : never_value);
    return out;
}

const ArmResult* ExperimentResult::arm(std::string_view label) const {
    for (const auto& a : arms)
        if (a.label == label) return &a;
    return nullptr;
}

std::pair<EpisodeConfig, Rng> resolve_episode(const Arm& arm, std::uint64_t base_seed, std::size_t index) {
    EpisodeConfig cfg = arm.config;
    cfg.seed = derive_seed(base_seed, index);
    Rng rng(cfg.seed);
    apply_randomization(arm.randomization, cfg, rng);
    return {std::move(cfg), std::move(rng)};
}

EpisodeMetrics score_episode(const RunTrace& trace, const EvaluationSpec& eval) {
    EpisodeMetrics m;
    const std::size_t horizon = trace.size();
    const std::size_t window = std::min(eval.final_window, horizon);
    m.final_rmse = window_rmse(trace, horizon - window, horizon);
    m.final_mean_abs_err = window_mean_abs(trace.e_tilde, horizon - window, horizon);

    const auto tail = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(eval.feedback_fraction * static_cast<double>(horizon))));
    double fb = 0.0, ctl = 0.0;
    for (std::size_t k = horizon - std::min(tail, horizon); k < horizon; ++k) {
        fb += std::abs(trace.u_bar[k] - trace.u_f[k]);
        ctl += std::abs(trace.u_bar[k]);
    }
    m.feedback_abs = fb / static_cast<double>(std::min(tail, horizon));
    m.control_abs = ctl / static_cast<double>(std::min(tail, horizon));

    if (eval.convergence_from && *eval.convergence_from < horizon) {
        const std::span<const double> after(trace.e_tilde.data() + *eval.convergence_from,
                                            horizon - *eval.convergence_from);
        m.recovery = convergence_step(after, eval.convergence_tol, eval.convergence_hold);
    }
    return m;
}

ExperimentResult run_experiment(const Experiment& exp, const RunOptions& opts) {
    ExperimentResult result;
    result.name = exp.name;
    result.base_seed = opts.base_seed;
    result.n_seeds = opts.n_seeds.value_or(exp.n_seeds);
    result.evaluation = exp.evaluation;
    if (result.n_seeds == 0) throw InvalidArgument("run_experiment: at least one seed is required");

    const std::size_t n_arms = exp.arms.size();
    const std::size_t n = result.n_seeds;
    const std::size_t total = n_arms * n;

    std::vector<std::vector<std::optional<RunTrace>>> traces(n_arms, std::vector<std::optional<RunTrace>>(n));
    result.arms.resize(n_arms);
    for (std::size_t a = 0; a < n_arms; ++a) {
        result.arms[a].label = exp.arms[a].label;
        result.arms[a].method = exp.arms[a].config.method;
        result.arms[a].episodes.resize(n);
    }

    // Each task writes only its own (arm, index) slot.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            const std::size_t a = task / n;
            const std::size_t i = task % n;
            auto [cfg, rng] = resolve_episode(exp.arms[a], opts.base_seed, i);
            EpisodeMetrics m;
            try {
                RunTrace trace = run_episode(cfg, rng);
                m = score_episode(trace, exp.evaluation);
                traces[a][i] = std::move(trace);
            } catch (const NumericalFailure& err) {
                m.ok = false;
                m.failure = err.what();
            }
            m.index = i;
            m.seed = cfg.seed;
            m.alpha = cfg.rls.alpha;
            m.lambda = cfg.rls.lambda;
            m.k_p = cfg.gains.k_p;
            m.k_d = cfg.gains.k_d;
            result.arms[a].episodes[i] = std::move(m);
        }
    };

    std::size_t threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, total);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (std::size_t a = 0; a < n_arms; ++a) {
        std::vector<RunTrace> ok;
        for (auto& t : traces[a])
            if (t) ok.push_back(std::move(*t));
        if (!ok.empty()) result.arms[a].aggregate = aggregate(ok);
    }
    return result;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_aggregate_csv(std::ostream& os, const AggregateSeries& agg) {
    constexpr std::pair<Channel, const char*> columns[] = {
        {Channel::Y, "y"}, {Channel::ETilde, "err"}, {Channel::UF, "uf"}, {Channel::UB, "ub"}, {Channel::UBar, "ubar"}};
    os << "step,ref";
    for (const auto& [ch, name] : columns) os << ',' << name << "_mean," << name << "_std";
    os << '\n';
    const auto ref = agg.mean_of(Channel::YD);
    for (std::size_t k = 0; k < agg.size(); ++k) {
        os << k << ',' << format_number(ref[k]);
        for (const auto& [ch, name] : columns)
            os << ',' << format_number(agg.mean_of(ch)[k]) << ',' << format_number(agg.std_of(ch)[k]);
        os << '\n';
    }
}

void write_trace_csv(std::ostream& os, const RunTrace& trace) {
    os << "step";
    for (auto ch : kAllChannels) os << ',' << channel_name(ch);
    os << '\n';
    for (std::size_t k = 0; k < trace.size(); ++k) {
        os << k;
        for (auto ch : kAllChannels) os << ',' << format_number(trace.channel(ch)[k]);
        os << '\n';
    }
}

namespace {

json stats_json(std::span<const double> values) {
    if (values.empty()) return nullptr;
    const auto st = describe(values);
    return {{"n", st.n}, {"mean", st.mean}, {"std", st.std}, {"median", st.median}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

json summarize(const ExperimentResult& result) {
    json arms = json::array();
    for (const auto& a : result.arms) {
        json entry = {{"label", a.label},
                      {"method", to_string(a.method)},
                      {"failed_seeds", a.failed_seeds()},
                      {"final_rmse", stats_json(a.collect(&EpisodeMetrics::final_rmse))},
                      {"final_mean_abs_err", stats_json(a.collect(&EpisodeMetrics::final_mean_abs_err))},
                      {"feedback_abs", stats_json(a.collect(&EpisodeMetrics::feedback_abs))},
                      {"control_abs", stats_json(a.collect(&EpisodeMetrics::control_abs))}};
        if (result.evaluation.convergence_from) {
            std::vector<double> rec;
            std::size_t never = 0;
            for (const auto& e : a.episodes) {
                if (!e.ok) continue;
                if (e.recovery) rec.push_back(static_cast<double>(*e.recovery));
                else ++never;
            }
            entry["recovery"] = stats_json(rec);
            entry["never_recovered"] = never;
        }
        arms.push_back(std::move(entry));
    }
    return {{"experiment", result.name},
            {"base_seed", result.base_seed},
            {"n_seeds", result.n_seeds},
            {"evaluation", result.evaluation},
            {"arms", std::move(arms)}};
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& out_dir) {
    const auto dir = out_dir / result.name;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    json episodes = json::object();
    for (const auto& a : result.arms) {
        if (a.aggregate) {
            std::ofstream out(dir / (a.label + ".csv"), std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + (dir / (a.label + ".csv")).string());
            write_aggregate_csv(out, *a.aggregate);
            if (!out) throw std::runtime_error("write failed for " + (dir / (a.label + ".csv")).string());
        }
        json list = json::array();
        for (const auto& e : a.episodes) {
            json item = {{"index", e.index}, {"seed", e.seed}, {"ok", e.ok},
                         {"alpha", e.alpha}, {"lambda", e.lambda}, {"k_p", e.k_p}, {"k_d", e.k_d}};
            if (e.ok) {
                item["final_rmse"] = e.final_rmse;
                item["final_mean_abs_err"] = e.final_mean_abs_err;
                item["feedback_abs"] = e.feedback_abs;
                item["control_abs"] = e.control_abs;
                if (result.evaluation.convergence_from)
                    item["recovery"] = e.recovery ? json(*e.recovery) : json(nullptr);
            } else {
                item["failure"] = e.failure;
            }
            list.push_back(std::move(item));
        }
        episodes[a.label] = std::move(list);
    }
    write_text(dir / "episodes.json", episodes.dump(2) + "\n");
    write_text(dir / "summary.json", summarize(result).dump(2) + "\n");
}

void apply_run_config(const json& doc, Experiment& exp, std::optional<std::uint64_t>& base_seed) {
    if (!doc.is_object()) throw InvalidArgument("run configuration must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "seeds") {
            exp.n_seeds = value.get<std::size_t>();
        } else if (key == "base_seed") {
            base_seed = value.get<std::uint64_t>();
        } else if (key == "episode") {
            for (auto& arm : exp.arms) {
                json cfg = arm.config;
                cfg.merge_patch(value);
                EpisodeConfig patched;
                cfg.get_to(patched);
                validate(patched);
                arm.config = std::move(patched);
            }
        } else {
            throw InvalidArgument("unknown run configuration key '" + key + "'");
        }
    }
}

}  // namespace esnfb

// Command-line front end: list / run / trace.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "esnfb/config_json.hpp"
#include "esnfb/harness.hpp"

namespace {

using namespace esnfb;

Experiment load_experiment(const std::string& name, const std::string& config_path,
                           std::optional<std::uint64_t>& base_seed) {
    const Experiment* found = find_experiment(name);
    if (!found) throw std::runtime_error("unknown experiment '" + name + "' (see `esnfb list`)");
    Experiment exp = *found;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot read config file " + config_path);
        apply_run_config(nlohmann::json::parse(in), exp, base_seed);
    }
    return exp;
}

int cmd_list(bool as_json) {
    if (as_json) {
        std::cout << nlohmann::json(registry()).dump(2) << '\n';
        return 0;
    }
    for (const auto& e : registry()) {
        std::cout << e.name << "  (" << e.n_seeds << " seeds)  " << e.description << '\n';
        for (const auto& a : e.arms)
            std::cout << "    " << a.label << "  method=" << to_string(a.config.method)
                      << " horizon=" << a.config.horizon() << '\n';
    }
    return 0;
}

int cmd_run(const std::string& name, std::optional<std::size_t> seeds, std::optional<std::uint64_t> base_seed_flag,
            const std::string& out, const std::string& config_path, std::size_t threads) {
    std::optional<std::uint64_t> base_seed;
    Experiment exp = load_experiment(name, config_path, base_seed);
    if (base_seed_flag) base_seed = base_seed_flag;

    RunOptions opts;
    opts.n_seeds = seeds;
    opts.base_seed = base_seed.value_or(0);
    opts.threads = threads;
    const ExperimentResult result = run_experiment(exp, opts);
    write_experiment(result, out);

    const auto summary = summarize(result);
    for (const auto& arm : summary["arms"]) {
        std::cout << result.name << '/' << arm["label"].get<std::string>();
        if (!arm["final_rmse"].is_null())
            std::cout << "  final_rmse mean=" << arm["final_rmse"]["mean"].get<double>()
                      << " std=" << arm["final_rmse"]["std"].get<double>()
                      << " median=" << arm["final_rmse"]["median"].get<double>();
        std::cout << "  failed=" << arm["failed_seeds"].size() << '\n';
    }
    std::cout << "wrote " << (std::filesystem::path(out) / result.name).string() << '\n';
    return 0;
}

int cmd_trace(const std::string& name, std::size_t index, const std::string& method,
              std::optional<std::uint64_t> base_seed_flag, const std::string& config_path, const std::string& out) {
    std::optional<std::uint64_t> base_seed;
    Experiment exp = load_experiment(name, config_path, base_seed);
    if (base_seed_flag) base_seed = base_seed_flag;

    const Arm* arm = nullptr;
    for (const auto& a : exp.arms)
        if (a.label == method) arm = &a;
    if (!arm)
        for (const auto& a : exp.arms)
            if (to_string(a.config.method) == method && !arm) arm = &a;
    if (!arm) throw std::runtime_error("experiment '" + name + "' has no arm or method '" + method + "'");

    auto [cfg, rng] = resolve_episode(*arm, base_seed.value_or(0), index);
    const RunTrace trace = run_episode(cfg, rng);
    if (out.empty()) {
        write_trace_csv(std::cout, trace);
    } else {
        std::ofstream file(out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + out + " for writing");
        write_trace_csv(file, trace);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online-learning ESN control with P-D feedback: closed-loop simulation suite"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "Print the experiment registry");
    bool list_json = false;
    list->add_flag("--json", list_json, "Print full experiment definitions as JSON");

    auto* run = app.add_subcommand("run", "Run a seeded Monte Carlo experiment");
    std::string run_name, run_out = "results", run_config;
    std::optional<std::size_t> run_seeds;
    std::optional<std::uint64_t> run_base_seed;
    std::size_t run_threads = 0;
    run->add_option("--experiment", run_name, "Registered experiment name")->required();
    run->add_option("--seeds", run_seeds, "Episodes per arm (default 100; 1000 for full scale)");
    run->add_option("--base-seed", run_base_seed, "Base seed for per-episode seed derivation (default 0)");
    run->add_option("--out", run_out, "Output directory")->capture_default_str();
    run->add_option("--config", run_config, "JSON run configuration file");
    run->add_option("--threads", run_threads, "Worker threads (0 = all cores)")->capture_default_str();

    auto* trace = app.add_subcommand("trace", "Dump one episode's full trace as CSV");
    std::string trace_name, trace_method, trace_config, trace_out;
    std::size_t trace_seed = 0;
    std::optional<std::uint64_t> trace_base_seed;
    trace->add_option("--experiment", trace_name, "Registered experiment name")->required();
    trace->add_option("--seed", trace_seed, "Episode index within the sweep")->required();
    trace->add_option("--method", trace_method, "Arm label or method name (esnfb, esn, tesn, fb)")->required();
    trace->add_option("--base-seed", trace_base_seed, "Base seed of the sweep (default 0)");
    trace->add_option("--config", trace_config, "JSON run configuration file");
    trace->add_option("--out", trace_out, "Write to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) return cmd_list(list_json);
        if (*run) return cmd_run(run_name, run_seeds, run_base_seed, run_out, run_config, run_threads);
        if (*trace) return cmd_trace(trace_name, trace_seed, trace_method, trace_base_seed, trace_config, trace_out);
    } catch (const std::exception& err) {
        std::cerr << "esnfb: " << err.what() << '\n';
        return 1;
    }
    return 0;
}

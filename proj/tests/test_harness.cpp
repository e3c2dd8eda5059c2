#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "esnfb/config_json.hpp"
#include "esnfb/error.hpp"
#include "esnfb/experiments.hpp"
#include "esnfb/harness.hpp"

using namespace esnfb;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

Experiment shortened(const std::string& name, std::size_t horizon) {
    Experiment exp = *find_experiment(name);
    for (auto& arm : exp.arms) {
        if (std::holds_alternative<StepParams>(arm.config.signal.shape)) arm.config.signal = step_signal(horizon);
        else arm.config.signal = complex_signal(horizon);
    }
    exp.evaluation.final_window = std::min(exp.evaluation.final_window, horizon / 4);
    return exp;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("registry names are unique and discoverable") {
    std::set<std::string> names;
    for (const auto& exp : registry()) {
        CHECK(names.insert(exp.name).second);
        CHECK(find_experiment(exp.name) == &exp);
        CHECK_FALSE(exp.arms.empty());
        std::set<std::string> labels;
        for (const auto& arm : exp.arms) {
            CHECK(labels.insert(arm.label).second);
            CHECK_NOTHROW(validate(arm.config));
        }
    }
    for (const char* n : {"step", "tracking", "decomposition", "disturbance", "rand-rls", "rand-pd", "rand-rls-esn",
                          "tesn-dist-step", "tesn-dist-complex", "tesn-dist-robustness"})
        CHECK_MESSAGE(names.count(n) == 1, n);
    CHECK(find_experiment("nope") == nullptr);
}

TEST_CASE("registry entries carry their configuration") {
    const auto* dist = find_experiment("disturbance");
    REQUIRE(dist);
    for (const auto& arm : dist->arms) {
        REQUIRE(arm.config.plant_schedule.size() == 2);
        CHECK(arm.config.plant_schedule[0].start == 0);
        CHECK(arm.config.plant_schedule[0].variant == PlantVariant::A);
        CHECK(arm.config.plant_schedule[1].start == 2000);
        CHECK(arm.config.plant_schedule[1].variant == PlantVariant::B);
    }
    CHECK(dist->evaluation.convergence_from == 2000u);
    CHECK(dist->evaluation.convergence_hold == 200);

    const auto* dc = find_experiment("tesn-dist-complex");
    REQUIRE(dc);
    const auto* low = dc->arms.data();
    REQUIRE(low->config.pretrain.has_value());
    CHECK(low->config.pretrain->input_mean == 0.24);
    CHECK(low->config.pretrain->input_std == 0.08);

    const auto* step = find_experiment("step");
    REQUIRE(step);
    CHECK(step->arms.size() == 4);
    CHECK(step->evaluation.final_window == 200);
    for (const auto& arm : step->arms) CHECK(arm.config.horizon() == 2000);

    const auto* tracking = find_experiment("tracking");
    REQUIRE(tracking);
    CHECK(tracking->evaluation.final_window == 1000);
    for (const auto& arm : tracking->arms) CHECK(arm.config.horizon() == 6000);
}

TEST_CASE("experiments round-trip through JSON") {
    for (const auto& exp : registry()) {
        const json j = exp;
        const Experiment back = j.get<Experiment>();
        CHECK_MESSAGE(back == exp, exp.name);
        CHECK(json(back) == j);
    }
}

TEST_CASE("randomized hyperparameters stay in range") {
    const auto* rls = find_experiment("rand-rls");
    const auto* pd = find_experiment("rand-pd");
    REQUIRE(rls);
    REQUIRE(pd);
    bool alpha_low = false, alpha_high = false;
    for (std::size_t i = 0; i < 500; ++i) {
        const auto [cfg, rng] = resolve_episode(rls->arms[0], 3, i);
        CHECK(cfg.rls.alpha >= 0.1);
        CHECK(cfg.rls.alpha <= 10.0);
        CHECK(1.0 - cfg.rls.lambda >= 1e-4 * (1 - 1e-9));
        CHECK(1.0 - cfg.rls.lambda <= 1e-2 * (1 + 1e-9));
        alpha_low = alpha_low || cfg.rls.alpha < 0.3;
        alpha_high = alpha_high || cfg.rls.alpha > 3.0;

        const auto [cfg2, rng2] = resolve_episode(pd->arms[0], 3, i);
        CHECK(cfg2.gains.k_p >= 0.0);
        CHECK(cfg2.gains.k_p <= 0.01);
        CHECK(cfg2.gains.k_d >= 0.0);
        CHECK(cfg2.gains.k_d <= 1e-4);
    }
    CHECK(alpha_low);
    CHECK(alpha_high);
}

TEST_CASE("episode seeds depend on index only") {
    const auto* step = find_experiment("step");
    REQUIRE(step);
    std::set<std::uint64_t> seen;
    for (std::size_t i = 0; i < 200; ++i) {
        const auto seed = resolve_episode(step->arms[0], 11, i).first.seed;
        CHECK(seen.insert(seed).second);
        for (const auto& arm : step->arms) CHECK(resolve_episode(arm, 11, i).first.seed == seed);
    }
    CHECK(resolve_episode(step->arms[0], 12, 0).first.seed != resolve_episode(step->arms[0], 11, 0).first.seed);
}

TEST_CASE("single-seed step run yields a full-length aggregate with zero spread") {
    RunOptions opts;
    opts.n_seeds = 1;
    const auto result = run_experiment(*find_experiment("step"), opts);
    REQUIRE(result.arms.size() == 4);
    for (const auto& arm : result.arms) {
        REQUIRE(arm.aggregate.has_value());
        std::ostringstream os;
        write_aggregate_csv(os, *arm.aggregate);
        std::istringstream is(os.str());
        std::string line;
        std::getline(is, line);
        CHECK(line == "step,ref,y_mean,y_std,err_mean,err_std,uf_mean,uf_std,ub_mean,ub_std,ubar_mean,ubar_std");
        std::size_t rows = 0;
        while (std::getline(is, line)) {
            const auto cells = split(line);
            REQUIRE(cells.size() == 12);
            CHECK(std::stoul(cells[0]) == rows);
            for (std::size_t c = 3; c < 12; c += 2) CHECK(std::stod(cells[c]) == 0.0);
            ++rows;
        }
        CHECK(rows == 2000);
    }
}

TEST_CASE("write_experiment is byte-identical across reruns and thread counts") {
    TempDir dir("esnfb_test_harness_rerun");
    const Experiment exp = shortened("step", 300);
    for (std::size_t threads : {1u, 3u}) {
        RunOptions opts;
        opts.n_seeds = 5;
        opts.base_seed = 17;
        opts.threads = threads;
        write_experiment(run_experiment(exp, opts), dir.path / std::to_string(threads));
    }
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir.path / "1" / "step")) {
        CHECK(slurp(entry.path()) == slurp(dir.path / "3" / "step" / entry.path().filename()));
        ++files;
    }
    CHECK(files == 6);

    const json summary = json::parse(slurp(dir.path / "1" / "step" / "summary.json"));
    CHECK(summary["experiment"] == "step");
    CHECK(summary["n_seeds"] == 5);
    CHECK(summary["base_seed"] == 17);
    CHECK(summary["arms"].size() == 4);

    const json episodes = json::parse(slurp(dir.path / "1" / "step" / "episodes.json"));
    CHECK(episodes["esnfb"].size() == 5);
    CHECK(episodes["esnfb"][0]["ok"] == true);
}

TEST_CASE("trace CSV layout") {
    auto cfg = nominal_config(ControlMethod::EsnFb, step_signal(50));
    const auto trace = run_episode(cfg);
    std::ostringstream os;
    write_trace_csv(os, trace);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "step,yd,y,ytilde,etilde,uf,ub,u,ubar,eesn");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        const auto cells = split(line);
        REQUIRE(cells.size() == 10);
        CHECK(std::stod(cells[2]) == trace.y[rows]);
        ++rows;
    }
    CHECK(rows == 50);
}

TEST_CASE("format_number round-trips doubles") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-2.5) == "-2.5");
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const double v = normal(rng, 0.0, 1.0) * std::pow(10.0, uniform(rng, -12, 12));
        const auto s = format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("apply_run_config") {
    Experiment exp = *find_experiment("tracking");
    std::optional<std::uint64_t> base;
    apply_run_config(json::parse(R"({"seeds": 7, "base_seed": 99, "episode": {"noise_std": 0.02,
                                     "gains": {"k_p": 0.002}}})"),
                     exp, base);
    CHECK(exp.n_seeds == 7);
    CHECK(base == 99u);
    for (const auto& arm : exp.arms) {
        CHECK(arm.config.noise_std == 0.02);
        CHECK(arm.config.gains.k_p == 0.002);
        CHECK(arm.config.horizon() == 6000);
    }
    CHECK(exp.arms[0].config.gains.k_d == 1e-5);

    Experiment untouched = *find_experiment("tracking");
    CHECK_THROWS_AS(apply_run_config(json::parse(R"({"seed": 3})"), untouched, base), InvalidArgument);
    CHECK_THROWS_AS(apply_run_config(json::parse("[1, 2]"), untouched, base), InvalidArgument);
    CHECK_THROWS_AS(apply_run_config(json::parse(R"({"episode": {"noise_std": -1}})"), untouched, base),
                    InvalidArgument);
}

TEST_CASE("numerical failures are recorded per seed") {
    Experiment exp = shortened("step", 200);
    exp.arms.resize(1);
    exp.arms[0].config.rls.alpha = 1e-320;
    RunOptions opts;
    opts.n_seeds = 3;
    const auto result = run_experiment(exp, opts);
    const auto& arm = result.arms[0];
    CHECK(arm.failed_seeds() == std::vector<std::size_t>{0, 1, 2});
    CHECK_FALSE(arm.aggregate.has_value());
    CHECK(arm.collect(&EpisodeMetrics::final_rmse).empty());
    for (const auto& e : arm.episodes) CHECK_FALSE(e.failure.empty());
}

TEST_CASE("run_experiment rejects zero seeds") {
    RunOptions opts;
    opts.n_seeds = 0;
    CHECK_THROWS_AS(run_experiment(*find_experiment("step"), opts), InvalidArgument);
}

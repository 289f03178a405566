#include "jamsim/config.hpp"
#include "jamsim/errors.hpp"
#include "jamsim/estimators.hpp"
#include "jamsim/selfcheck.hpp"
#include "jamsim/sim_runner.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace jamsim;

struct RunFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<std::string> out;
    int parallel = 1;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "Master seed override");
    cmd->add_option("--runs", f.runs, "Run count override")->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "Output directory override");
    cmd->add_option("--parallel", f.parallel, "Episodes simulated concurrently")->check(CLI::PositiveNumber);
}

ExperimentConfig load_with_overrides(const RunFlags& f) {
    auto config = load_config(f.config);
    if (f.seed) config.seed = *f.seed;
    if (f.runs) config.runs = *f.runs;
    if (f.out) config.out_dir = *f.out;
    validate(config);
    return config;
}

void print_summary(const RunSummary& s) {
    fmt::print("{:<24} {:<7} K={:<3} N={:<3} J={:<3} runs={:<4} regret={:.2f} (se {:.2f}) correct={:.3f}\n",
               s.config, to_string(s.algorithm), s.k, s.n, s.j, s.runs, s.final_regret, s.stderr_final_regret,
               s.correct_estimate_fraction);
}

int cmd_run(const RunFlags& f) {
    const auto config = load_with_overrides(f);
    const auto result = run_experiment(config, {f.parallel, false});
    emit_results({result}, config.out_dir);
    print_summary(result.summary);
    return 0;
}

int cmd_sweep(const RunFlags& f, const std::string& param, const std::vector<int>& values) {
    const auto base = load_with_overrides(f);
    int max_value = 0;
    for (int v : values) max_value = std::max(max_value, v);
    const auto digits = std::to_string(max_value).size();
    std::vector<ExperimentResult> results;
    for (int v : values) {
        auto config = base;
        if (param == "n") {
            config.n = v;
        } else if (param == "j") {
            config.j = v;
        } else {
            config.k = v;
            config.p = generator_probabilities(v);
        }
        config.name = fmt::format("{}_{}{:0{}}", base.name, param, v, digits);
        validate(config);
        results.push_back(run_experiment(config, {f.parallel, false}));
        print_summary(results.back().summary);
    }
    emit_results(results, base.out_dir);
    return 0;
}

int cmd_phase_lengths(int k, double theta, const LearningParams& params, const std::vector<std::string>& algorithms) {
    fmt::print("{:<6} {:>12} {:>10} {:>10} {:>12}\n", "algo", "t_c", "t_o", "t_j", "learning");
    for (const auto& name : algorithms) {
        const Algorithm a = parse_algorithm(name);
        const auto s = phase_lengths(a, k, theta, params);
        fmt::print("{:<6} {:>12} {:>10} {:>10} {:>12}\n", name, s.t_c, s.t_o, s.t_j, s.learning());
        fmt::print("       eps1={:.6g} eps2={:.6g}\n", epsilon1(a, params, k), epsilon2(a, params, k));
    }
    return 0;
}

int cmd_selfcheck(std::int64_t slots, std::uint64_t seed) {
    bool ok = true;
    for (const auto& r : run_selfcheck(slots, seed)) {
        fmt::print("[{}] {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-user channel access simulator with jammers"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Run one experiment config");
    add_run_flags(run, run_flags);

    RunFlags sweep_flags;
    std::string param;
    std::vector<int> values;
    auto* sweep = app.add_subcommand("sweep", "Vary n, k or j over a list of values");
    add_run_flags(sweep, sweep_flags);
    sweep->add_option("--param", param, "Parameter to vary")->required()->check(CLI::IsMember({"n", "k", "j"}));
    sweep->add_option("--values", values, "Values to sweep")->required()->delimiter(',');

    int k = 8;
    double theta = 0.45;
    LearningParams params;
    std::vector<std::string> algorithms{"cdj", "cnj", "cuj"};
    auto* phases = app.add_subcommand("phase-lengths", "Print theorem phase lengths");
    phases->add_option("--k", k, "Channel count")->check(CLI::Range(2, 100000));
    phases->add_option("--theta", theta, "Availability floor");
    phases->add_option("--delta", params.delta, "Confidence parameter");
    phases->add_option("--epsilon", params.epsilon, "Ranking tolerance");
    phases->add_option("--gamma", params.gamma, "Estimation slack");
    phases->add_option("--algorithm", algorithms, "Algorithms to report")->delimiter(',');

    std::int64_t slots = 1000000;
    std::uint64_t seed = 2024;
    auto* check = app.add_subcommand("selfcheck", "Inversion identities and Monte Carlo collision checks");
    check->add_option("--slots", slots, "Monte Carlo slots per case")->check(CLI::PositiveNumber);
    check->add_option("--seed", seed, "Seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*run) return cmd_run(run_flags);
        if (*sweep) return cmd_sweep(sweep_flags, param, values);
        if (*phases) return cmd_phase_lengths(k, theta, params, algorithms);
        if (*check) return cmd_selfcheck(slots, seed);
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error ({}): {}\n", to_string(e.kind()), e.what());
        return 2;
    } catch (const IoError& e) {
        fmt::print(stderr, "io error: {}\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        fmt::print(stderr, "runtime error: {}\n", e.what());
        return 4;
    }
    return 0;
}

#pragma once

#include "jamsim/config.hpp"
#include "jamsim/su_agent.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace jamsim {

struct AgentSummary {
    int n_hat = 0;
    int j_hat = 0;
    int total_hat = 0;
    int n_star = 0;
    bool degraded = false;
    bool ranking_correct = false;
    std::int64_t settle_slot = -1;
    std::vector<ChannelIndex> window;

    bool operator==(const AgentSummary&) const = default;
};

struct Trajectory {
    std::uint64_t seed = 0;
    std::string config_digest;
    // Per slot; the four counts add up to N.
    std::vector<std::uint16_t> successes;
    std::vector<std::uint16_t> su_collisions;
    std::vector<std::uint16_t> jammer_collisions;
    std::vector<std::uint16_t> busy;
    std::vector<AgentSummary> agents;

    bool estimates_correct = false;
    bool ranking_correct = false;
    bool all_settled = false;
    // Largest settle slot over agents (horizon when someone never settled).
    std::int64_t last_settle = 0;
    std::int64_t su_collisions_after_settle = 0;
    // Every agent hops over the same ordered window.
    bool shared_window = false;

    bool operator==(const Trajectory&) const = default;
};

Trajectory run_episode(const ExperimentConfig& config, std::uint64_t seed);

// Expected total successes per slot for the best sequential-hopping policy.
double oracle_throughput(const ChannelModel& model, int n, int j, JamMode mode);
double oracle_throughput(const ExperimentConfig& config);

// Jammer behaviour seen by the SUs of this config.
JamMode effective_jam_mode(const ExperimentConfig& config);

struct RegretCurve {
    std::vector<double> mean_regret;
    std::vector<double> stderr_regret;
    std::vector<double> mean_throughput;
};

/// Order-independent accumulator of per-slot cumulative successes.
class RegretAccumulator {
public:
    RegretAccumulator(std::string digest, std::int64_t horizon, double oracle_rate);

    void add(const Trajectory& trajectory);
    void merge(const RegretAccumulator& other);

    std::int64_t runs() const noexcept { return runs_; }
    RegretCurve curve() const;

private:
    std::string digest_;
    double rate_;
    std::int64_t runs_ = 0;
    std::vector<std::int64_t> sum_;
    std::vector<std::int64_t> sum_sq_;
};

RegretCurve regret_curve(const std::vector<Trajectory>& trajectories, double oracle_rate);

struct RunSummary {
    std::string config;
    Algorithm algorithm = Algorithm::cnj;
    int k = 0;
    int n = 0;
    int j = 0;
    int runs = 0;
    double final_regret = 0.0;
    double stderr_final_regret = 0.0;
    double correct_estimate_fraction = 0.0;
    double mean_settle_slot = 0.0;
    std::int64_t su_collisions_after_settle = 0;
    double ranking_correct_fraction = 0.0;
    int degraded_runs = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    PhaseSchedule schedule;
    RegretCurve curve;
    RunSummary summary;
    // Only filled when requested.
    std::vector<Trajectory> trajectories;
};

struct RunOptions {
    int parallel = 1;
    bool keep_trajectories = false;
};

std::uint64_t run_seed(std::uint64_t master, std::int64_t run_index);

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

// Writes regret.csv, summary.csv and config.json. Several results share one
// summary.csv (sorted by config name); regret.csv and config.json come from
// the first result, or go to per-config subdirectories when there are many.
void emit_results(const std::vector<ExperimentResult>& results, const std::filesystem::path& out_dir);

std::string regret_csv(const RegretCurve& curve);
std::string summary_csv(std::vector<RunSummary> summaries);

}  // namespace jamsim

#pragma once

#include "jamsim/algorithm.hpp"
#include "jamsim/estimators.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace jamsim {

struct ScheduleSpec {
    bool theorem = false;
    // Used when !theorem.
    std::int64_t t_c = 0;
    std::int64_t t_o = 0;
    std::int64_t t_j = 0;
    // Used when theorem; epsilon also sets the ranking tolerance.
    LearningParams params;
    std::optional<double> theta;

    bool operator==(const ScheduleSpec&) const = default;
};

struct ExperimentConfig {
    std::string name;
    Algorithm algorithm = Algorithm::cnj;
    int k = 8;
    int n = 4;
    int j = 2;
    std::vector<double> p;
    std::int64_t horizon = 7000;
    ScheduleSpec schedule;
    JamMode jammers = JamMode::coordinated;
    int runs = 50;
    std::uint64_t seed = 1;
    std::string out_dir = "results";

    bool operator==(const ExperimentConfig&) const = default;
};

// p_i = 0.5 + 0.06 (i - ceil(K/2)), i = 1..K. Throws when a value leaves [0, 1].
std::vector<double> generator_probabilities(int k);

// Throws ConfigError with the matching kind.
void validate(const ExperimentConfig& config);

// Phase lengths the agents will actually run with.
PhaseSchedule resolve_schedule(const ExperimentConfig& config);

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Includes the resolved schedule, which parse_config ignores.
std::string serialize_config(const ExperimentConfig& config);

// Stable hash of the simulation-relevant fields (runs and out_dir excluded).
std::string config_digest(const ExperimentConfig& config);

}  // namespace jamsim

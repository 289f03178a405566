#pragma once

#include "jamsim/algorithm.hpp"
#include "jamsim/channel_env.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace jamsim {

// Channel indices sorted by ascending estimate; ties keep the lower index first.
std::vector<ChannelIndex> rank_channels(std::span<const double> p_hat);

// True when every pair whose true busy probabilities differ by more than eps
// appears in the right order.
bool is_epsilon_correct(std::span<const ChannelIndex> ranking, std::span<const double> p, double eps);

// Probability that a transmitting SU collides, given its channel is idle and
// everyone hops uniformly over all k channels.
double collision_prob(JamMode mode, int n, int j, int k);

// num/den capped at 1 - 1/(2 den). Returns nullopt when den <= 0.
std::optional<double> clamped_fraction(double num, double den);

// Round half away from zero, then clamp to [lo, hi].
int round_clamped(double x, int lo, int hi);

int invert_n_given_j(double p_c_hat, int j, int k);
int invert_n_plus_j(double p_c_hat, int k);

std::optional<int> j_from_fraction(double c_j, double f, int k);

// Per-channel JE counters, indexed by channel.
std::optional<int> j_sequential(std::span<const double> o, std::span<const double> c,
                                std::span<const double> f, double t_j, int k);

// Jammer count when the SUs hop over the top `total_hat` channels and every
// jammer hits one channel among those: Jhat = log(1 - pbar)/log(1 - 1/total_hat),
// pbar the occupancy-weighted mean of C_i/F_i.
std::optional<int> j_from_window(std::span<const double> o, std::span<const double> c,
                                 std::span<const double> f, double t_j, int total_hat, int k);

std::optional<int> jammer_invert_n(double c, double b, int j, double t_c, int k);

struct WindowChoice {
    int m = 0;
    double objective = 0.0;

    bool operator==(const WindowChoice&) const = default;
};

// Per-SU throughput when N SUs hop over the top n + w channels.
double window_objective(JamMode mode, int n, int j, std::span<const double> p_sorted, int w);

// Exhaustive scan over w in [0, K - n]; smallest maximizer wins.
WindowChoice optimize_window(JamMode mode, int n, int j, std::span<const double> p_sorted);

struct LearningParams {
    double delta = 0.3;
    double epsilon = 0.05;
    double gamma = 0.4;

    bool operator==(const LearningParams&) const = default;
};

double epsilon1(Algorithm a, const LearningParams& params, int k);
double epsilon2(Algorithm a, const LearningParams& params, int k);

enum class ScheduleSource { explicit_config, theorem };

std::string_view to_string(ScheduleSource s) noexcept;

struct PhaseSchedule {
    std::int64_t t_c = 0;
    std::int64_t t_o = 0;
    std::int64_t t_j = 0;
    ScheduleSource source = ScheduleSource::explicit_config;

    std::int64_t learning() const noexcept { return t_c + t_o + t_j; }
    bool operator==(const PhaseSchedule&) const = default;
};

// Only cdj, cnj and cuj have theorem schedules.
PhaseSchedule phase_lengths(Algorithm a, int k, double theta, const LearningParams& params);

void validate(const LearningParams& params);

}  // namespace jamsim

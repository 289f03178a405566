#pragma once

#include "jamsim/algorithm.hpp"
#include "jamsim/channel_env.hpp"
#include "jamsim/estimators.hpp"
#include "jamsim/rng.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace jamsim {

enum class Phase {
    channel_ranking,
    orthogonalize_learn,
    jammer_estimation,
    orthogonalize_final,
    locked,
};

std::string_view to_string(Phase p) noexcept;

/// Full protocol state of one secondary user. Mutated only through the free
/// functions below; holds nothing about other agents.
struct SuAgentState {
    Algorithm algorithm = Algorithm::cnj;
    int k = 0;
    PhaseSchedule schedule;
    Phase phase = Phase::channel_ranking;
    std::int64_t t = 0;

    // Uniform-hopping counters.
    std::vector<std::int64_t> o;
    std::vector<std::int64_t> b;
    std::int64_t f = 0;
    std::int64_t c = 0;
    std::int64_t c_j = 0;

    // Sequential-hopping counters, per channel.
    std::vector<std::int64_t> je_o;
    std::vector<std::int64_t> je_c;
    std::vector<std::int64_t> je_f;

    std::vector<double> p_hat;
    std::vector<ChannelIndex> pi;
    int n_hat = 1;
    int j_hat = 0;
    int total_hat = 1;
    int n_star = 1;

    // Channels in play for the current phase (top `width` of pi).
    int width = 0;
    bool settled = false;
    int x = 0;
    int i0 = 0;
    bool degraded = false;
    // Slot at which the agent settled in its final phase; -1 until then.
    std::int64_t settle_slot = -1;

    std::optional<ChannelIndex> pending;
};

SuAgentState make_su_agent(Algorithm algorithm, int k, const PhaseSchedule& schedule);

// Starts already settled at position `index` of the true ranking, hopping
// over the optimal window for the true N and J.
SuAgentState make_oracle_agent(const ChannelModel& model, int n, int j, JamMode mode, int index);

ChannelIndex su_select(SuAgentState& s, Rng& rng);

// Throws ConsistencyError when the outcome is not for the pending selection.
void su_observe(SuAgentState& s, const AgentOutcome& outcome);

// Consume the previous slot's feedback (if any), then pick the next channel.
ChannelIndex su_step(SuAgentState& s, const std::optional<AgentOutcome>& feedback, Rng& rng);

// Baselines share the protocol machinery; kept as a named entry point.
ChannelIndex baseline_step(SuAgentState& s, const std::optional<AgentOutcome>& feedback, Rng& rng);

void finalize_cr(SuAgentState& s);
void finalize_je(SuAgentState& s);

}  // namespace jamsim

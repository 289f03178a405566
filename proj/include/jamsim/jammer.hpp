#pragma once

#include "jamsim/algorithm.hpp"
#include "jamsim/channel_env.hpp"
#include "jamsim/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace jamsim {

// A coordinated state drives the whole fleet (J distinct channels per slot);
// an uncoordinated state drives a single jammer.
struct JammerState {
    JamMode mode = JamMode::coordinated;
    int k = 0;
    int fleet = 0;
    std::int64_t t_c = 0;
    std::int64_t t = 0;
    bool attacking = false;

    std::vector<std::int64_t> o;
    std::vector<std::int64_t> b;
    std::int64_t busy_total = 0;
    std::int64_t free_total = 0;
    std::int64_t collisions = 0;

    std::vector<double> p_hat;
    std::vector<ChannelIndex> pi;
    int n_hat = 1;
    int width = 1;
    bool degraded = false;

    std::vector<ChannelIndex> pending;

    int emits() const noexcept { return mode == JamMode::coordinated ? fleet : 1; }
};

struct JammerFeedback {
    ChannelIndex channel = 0;
    bool busy = false;
    // Another transmitter shared the channel.
    bool collided = false;
};

JammerState make_jammer(JamMode mode, int k, int fleet, std::int64_t t_c);

// Attacking from slot 0 with the true ranking and population.
JammerState make_informed_jammer(JamMode mode, const ChannelModel& model, int n, int fleet);

// Emits `emits()` channels; the view stays valid until the next call.
std::span<const ChannelIndex> jammer_select(JammerState& s, Rng& rng);

// One entry per emitted channel, in emission order.
void jammer_observe(JammerState& s, std::span<const JammerFeedback> feedback);

void jammer_finalize(JammerState& s);

// Top-of-list sampling helper: `count` distinct positions from [0, width).
void sample_distinct(Rng& rng, int width, int count, std::vector<int>& scratch, std::vector<ChannelIndex>& out,
                     std::span<const ChannelIndex> map);

}  // namespace jamsim

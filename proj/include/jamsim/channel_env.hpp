#pragma once

#include "jamsim/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jamsim {

// Zero-based channel index.
using ChannelIndex = std::size_t;

// One flag per channel; nonzero means a primary user occupies it this slot.
using BusyMask = std::vector<std::uint8_t>;

// 1 - (sum p_i)/K. Throws ConfigError when the channels are never usable
// on average (sum p_i >= K) or the vector is empty.
double availability_floor(std::span<const double> busy_probabilities);

/// Primary-user occupancy model: channel i is busy with probability p_i,
/// independently across channels and slots.
class ChannelModel {
public:
    explicit ChannelModel(std::vector<double> busy_probabilities);

    std::size_t size() const noexcept { return busy_.size(); }
    std::span<const double> busy() const noexcept { return busy_; }
    double busy(ChannelIndex i) const { return busy_.at(i); }

    // Tight availability floor theta.
    double availability_floor() const noexcept { return theta_; }

    // Gap between the n-th and (n+1)-th best channel, p_{pi_{n+1}} - p_{pi_n}.
    double gap(std::size_t n) const;

    // Busy probabilities sorted ascending (best channel first).
    std::vector<double> sorted_busy() const;

    bool operator==(const ChannelModel&) const = default;

private:
    std::vector<double> busy_;
    double theta_ = 0.0;
};

void draw_occupancy(const ChannelModel& model, Rng& rng, BusyMask& out);
BusyMask draw_occupancy(const ChannelModel& model, Rng& rng);

// What a single SU learns about its own transmission attempt.
struct AgentOutcome {
    ChannelIndex channel = 0;
    bool busy = false;
    bool transmitted = false;
    bool success = false;
    bool collision = false;
    // Only ever set in distinguishable mode.
    bool jammer_involved = false;
};

struct SlotOutcome {
    std::vector<AgentOutcome> su;
    // Selections per channel, counted before the busy check.
    std::vector<std::uint16_t> su_load;
    std::vector<std::uint16_t> jammer_load;
};

// Resolves one slot. Jammer selections on busy channels are inert; several
// jammers on one channel count as a single jamming presence.
void resolve_slot(const BusyMask& busy, std::span<const ChannelIndex> su_selections,
                  std::span<const ChannelIndex> jammer_selections, bool distinguishable,
                  SlotOutcome& out);

SlotOutcome resolve_slot(const BusyMask& busy, std::span<const ChannelIndex> su_selections,
                         std::span<const ChannelIndex> jammer_selections, bool distinguishable);

}  // namespace jamsim

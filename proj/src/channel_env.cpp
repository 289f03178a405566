#include "jamsim/channel_env.hpp"

#include "jamsim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jamsim {

std::string_view to_string(ConfigErrorKind kind) noexcept {
    switch (kind) {
    case ConfigErrorKind::malformed: return "malformed";
    case ConfigErrorKind::missing_field: return "missing_field";
    case ConfigErrorKind::range_violation: return "range_violation";
    case ConfigErrorKind::schedule_overflow: return "schedule_overflow";
    }
    return "unknown";
}

double availability_floor(std::span<const double> busy_probabilities) {
    if (busy_probabilities.empty()) {
        throw ConfigError(ConfigErrorKind::range_violation, "channel model needs at least one channel");
    }
    const double total = std::accumulate(busy_probabilities.begin(), busy_probabilities.end(), 0.0);
    const auto k = static_cast<double>(busy_probabilities.size());
    if (!(total < k)) {
        throw ConfigError(ConfigErrorKind::range_violation,
                          fmt::format("sum of busy probabilities ({}) must be below K ({})", total, k));
    }
    return 1.0 - total / k;
}

ChannelModel::ChannelModel(std::vector<double> busy_probabilities)
    : busy_(std::move(busy_probabilities)) {
    for (std::size_t i = 0; i < busy_.size(); ++i) {
        const double p = busy_[i];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw ConfigError(ConfigErrorKind::range_violation,
                              fmt::format("busy probability p[{}] = {} is outside [0, 1]", i, p));
        }
    }
    theta_ = jamsim::availability_floor(busy_);
}

double ChannelModel::gap(std::size_t n) const {
    if (n == 0 || n >= busy_.size()) {
        throw ConfigError(ConfigErrorKind::range_violation,
                          fmt::format("gap needs 1 <= N < K, got N={} K={}", n, busy_.size()));
    }
    const auto sorted = sorted_busy();
    return sorted[n] - sorted[n - 1];
}

std::vector<double> ChannelModel::sorted_busy() const {
    auto sorted = busy_;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

void draw_occupancy(const ChannelModel& model, Rng& rng, BusyMask& out) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    out.resize(model.size());
    const auto p = model.busy();
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] = unit(rng) < p[i] ? 1 : 0;
    }
}

BusyMask draw_occupancy(const ChannelModel& model, Rng& rng) {
    BusyMask mask;
    draw_occupancy(model, rng, mask);
    return mask;
}

void resolve_slot(const BusyMask& busy, std::span<const ChannelIndex> su_selections,
                  std::span<const ChannelIndex> jammer_selections, bool distinguishable,
                  SlotOutcome& out) {
    const std::size_t k = busy.size();
    out.su_load.assign(k, 0);
    out.jammer_load.assign(k, 0);
    for (ChannelIndex c : su_selections) {
        if (c >= k) {
            throw ConfigError(ConfigErrorKind::range_violation,
                              fmt::format("SU selected channel {} but K = {}", c, k));
        }
        ++out.su_load[c];
    }
    for (ChannelIndex c : jammer_selections) {
        if (c >= k) {
            throw ConfigError(ConfigErrorKind::range_violation,
                              fmt::format("jammer selected channel {} but K = {}", c, k));
        }
        ++out.jammer_load[c];
    }

    out.su.resize(su_selections.size());
    for (std::size_t n = 0; n < su_selections.size(); ++n) {
        const ChannelIndex c = su_selections[n];
        AgentOutcome& o = out.su[n];
        o = AgentOutcome{};
        o.channel = c;
        if (busy[c] != 0) {
            o.busy = true;
            continue;
        }
        o.transmitted = true;
        const bool jammed = out.jammer_load[c] > 0;
        o.collision = jammed || out.su_load[c] > 1;
        o.success = !o.collision;
        o.jammer_involved = distinguishable && jammed;
    }
}

SlotOutcome resolve_slot(const BusyMask& busy, std::span<const ChannelIndex> su_selections,
                         std::span<const ChannelIndex> jammer_selections, bool distinguishable) {
    SlotOutcome out;
    resolve_slot(busy, su_selections, jammer_selections, distinguishable, out);
    return out;
}

}  // namespace jamsim

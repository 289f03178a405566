#include "jamsim/jammer.hpp"

#include "jamsim/errors.hpp"
#include "jamsim/estimators.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace jamsim {

namespace {

void check_shape(int k, int fleet) {
    if (k < 1 || fleet < 1 || fleet > k) {
        throw ConfigError(ConfigErrorKind::range_violation,
                          fmt::format("jammer needs 1 <= J <= K (got J={} K={})", fleet, k));
    }
}

std::vector<ChannelIndex> identity(int k) {
    std::vector<ChannelIndex> v(static_cast<std::size_t>(k));
    std::iota(v.begin(), v.end(), ChannelIndex{0});
    return v;
}

}  // namespace

void sample_distinct(Rng& rng, int width, int count, std::vector<int>& scratch, std::vector<ChannelIndex>& out,
                     std::span<const ChannelIndex> map) {
    scratch.resize(static_cast<std::size_t>(width));
    std::iota(scratch.begin(), scratch.end(), 0);
    out.clear();
    for (int i = 0; i < count; ++i) {
        const auto r = i + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(width - i)));
        std::swap(scratch[static_cast<std::size_t>(i)], scratch[static_cast<std::size_t>(r)]);
        out.push_back(map[static_cast<std::size_t>(scratch[static_cast<std::size_t>(i)])]);
    }
}

JammerState make_jammer(JamMode mode, int k, int fleet, std::int64_t t_c) {
    check_shape(k, fleet);
    if (t_c < 0) throw ConfigError(ConfigErrorKind::range_violation, "jammer learning length must be >= 0");
    JammerState s;
    s.mode = mode;
    s.k = k;
    s.fleet = fleet;
    s.t_c = t_c;
    s.o.assign(static_cast<std::size_t>(k), 0);
    s.b.assign(static_cast<std::size_t>(k), 0);
    s.pi = identity(k);
    if (t_c == 0) jammer_finalize(s);
    return s;
}

JammerState make_informed_jammer(JamMode mode, const ChannelModel& model, int n, int fleet) {
    const int k = static_cast<int>(model.size());
    check_shape(k, fleet);
    JammerState s;
    s.mode = mode;
    s.k = k;
    s.fleet = fleet;
    s.attacking = true;
    s.p_hat.assign(model.busy().begin(), model.busy().end());
    s.pi = rank_channels(s.p_hat);
    s.n_hat = n;
    s.width = mode == JamMode::coordinated ? std::max(n, fleet) : std::max(1, n + fleet - 1);
    s.width = std::min(s.width, k);
    return s;
}

std::span<const ChannelIndex> jammer_select(JammerState& s, Rng& rng) {
    thread_local std::vector<int> scratch;
    const int width = s.attacking ? s.width : s.k;
    if (s.mode == JamMode::coordinated) {
        sample_distinct(rng, width, s.fleet, scratch, s.pending, s.pi);
    } else {
        s.pending.assign(1, s.pi[uniform_index(rng, static_cast<std::size_t>(width))]);
    }
    return s.pending;
}

void jammer_observe(JammerState& s, std::span<const JammerFeedback> feedback) {
    if (feedback.size() != s.pending.size()) {
        throw ConsistencyError(fmt::format("jammer emitted {} channels but got {} feedback entries",
                                           s.pending.size(), feedback.size()));
    }
    for (std::size_t i = 0; i < feedback.size(); ++i) {
        if (feedback[i].channel != s.pending[i]) {
            throw ConsistencyError(fmt::format("jammer feedback for channel {} but it selected {}",
                                               feedback[i].channel, s.pending[i]));
        }
    }
    s.pending.clear();
    if (s.attacking) {
        ++s.t;
        return;
    }
    for (const auto& fb : feedback) {
        ++s.o[fb.channel];
        if (fb.busy) {
            ++s.b[fb.channel];
            ++s.busy_total;
        } else {
            ++s.free_total;
            if (fb.collided) ++s.collisions;
        }
    }
    ++s.t;
    if (s.t >= s.t_c) jammer_finalize(s);
}

void jammer_finalize(JammerState& s) {
    s.p_hat.assign(static_cast<std::size_t>(s.k), 1.0);
    for (std::size_t i = 0; i < s.p_hat.size(); ++i) {
        if (s.o[i] > 0) s.p_hat[i] = static_cast<double>(s.b[i]) / static_cast<double>(s.o[i]);
    }
    s.pi = rank_channels(s.p_hat);
    s.attacking = true;

    if (s.mode == JamMode::coordinated) {
        const auto n = jammer_invert_n(static_cast<double>(s.collisions), static_cast<double>(s.busy_total),
                                       s.fleet, static_cast<double>(s.t), s.k);
        s.degraded = !n;
        s.n_hat = n.value_or(1);
        s.width = std::min(std::max(s.n_hat, s.fleet), s.k);
        return;
    }
    const auto pc = clamped_fraction(static_cast<double>(s.collisions), static_cast<double>(s.free_total));
    s.degraded = !pc;
    const int total = pc ? invert_n_plus_j(*pc, s.k) : 2;
    s.n_hat = std::max(1, total - s.fleet);
    s.width = std::clamp(total - 1, 1, s.k);
}

}  // namespace jamsim

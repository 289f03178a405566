#include "jamsim/su_agent.hpp"

#include "jamsim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace jamsim {

namespace {

std::vector<double> as_doubles(const std::vector<std::int64_t>& v) {
    return {v.begin(), v.end()};
}

std::vector<double> sorted_estimates(const SuAgentState& s) {
    std::vector<double> out;
    out.reserve(s.pi.size());
    for (ChannelIndex c : s.pi) out.push_back(s.p_hat[c]);
    return out;
}

int position_in_ranking(const SuAgentState& s, ChannelIndex channel) {
    const auto it = std::find(s.pi.begin(), s.pi.end(), channel);
    return static_cast<int>(it - s.pi.begin());
}

void mark_degraded(SuAgentState& s) {
    s.degraded = true;
    s.n_hat = 1;
    s.j_hat = 0;
    s.n_star = 1;
}

void set_window(SuAgentState& s) {
    const int j = std::min(s.j_hat, s.n_hat);
    const JamMode mode = s.algorithm == Algorithm::cuj ? JamMode::uncoordinated : JamMode::coordinated;
    s.n_star = s.n_hat + optimize_window(mode, s.n_hat, j, sorted_estimates(s)).m;
}

void enter_or(SuAgentState& s, Phase phase, int width) {
    s.phase = phase;
    s.width = std::clamp(width, 1, s.k);
    s.settled = false;
    s.x = 0;
}

void enter_je(SuAgentState& s) {
    s.phase = Phase::jammer_estimation;
    s.i0 = s.settled ? s.x : -1;
    s.x = s.i0;
    s.width = s.algorithm == Algorithm::cuj ? std::clamp(s.total_hat, 1, s.k) : s.k;
    s.settled = false;
    s.je_o.assign(static_cast<std::size_t>(s.k), 0);
    s.je_c.assign(static_cast<std::size_t>(s.k), 0);
    s.je_f.assign(static_cast<std::size_t>(s.k), 0);
}

void advance(SuAgentState& s) {
    const std::int64_t end_cr = s.schedule.t_c;
    const std::int64_t end_or = end_cr + s.schedule.t_o;
    const std::int64_t end_je = end_or + s.schedule.t_j;
    for (;;) {
        switch (s.phase) {
        case Phase::channel_ranking:
            if (s.t < end_cr) return;
            finalize_cr(s);
            switch (s.algorithm) {
            case Algorithm::cnj: enter_or(s, Phase::orthogonalize_learn, s.k); break;
            case Algorithm::cuj: enter_or(s, Phase::orthogonalize_learn, s.total_hat); break;
            case Algorithm::myopic:
            case Algorithm::mc: enter_or(s, Phase::orthogonalize_final, s.total_hat); break;
            default: enter_or(s, Phase::orthogonalize_final, s.n_star); break;
            }
            break;
        case Phase::orthogonalize_learn:
            if (s.t < end_or) return;
            enter_je(s);
            break;
        case Phase::jammer_estimation:
            if (s.t < end_je) return;
            finalize_je(s);
            enter_or(s, Phase::orthogonalize_final, s.n_star);
            break;
        default: return;
        }
    }
}

}  // namespace

std::string_view to_string(Phase p) noexcept {
    switch (p) {
    case Phase::channel_ranking: return "channel_ranking";
    case Phase::orthogonalize_learn: return "orthogonalize_learn";
    case Phase::jammer_estimation: return "jammer_estimation";
    case Phase::orthogonalize_final: return "orthogonalize_final";
    case Phase::locked: return "locked";
    }
    return "unknown";
}

SuAgentState make_su_agent(Algorithm algorithm, int k, const PhaseSchedule& schedule) {
    if (k < 1) throw ConfigError(ConfigErrorKind::range_violation, "agent needs K >= 1");
    if (algorithm == Algorithm::oracle) {
        throw ConfigError(ConfigErrorKind::range_violation, "oracle agents are built with make_oracle_agent");
    }
    if (schedule.t_c < 0 || schedule.t_o < 0 || schedule.t_j < 0) {
        throw ConfigError(ConfigErrorKind::range_violation, "phase lengths must be nonnegative");
    }
    SuAgentState s;
    s.algorithm = algorithm;
    s.k = k;
    s.schedule = schedule;
    if (algorithm != Algorithm::cnj && algorithm != Algorithm::cuj) {
        s.schedule.t_o = 0;
        s.schedule.t_j = 0;
    }
    s.o.assign(static_cast<std::size_t>(k), 0);
    s.b.assign(static_cast<std::size_t>(k), 0);
    s.width = k;
    advance(s);
    return s;
}

SuAgentState make_oracle_agent(const ChannelModel& model, int n, int j, JamMode mode, int index) {
    const auto sorted = model.sorted_busy();
    SuAgentState s;
    s.algorithm = Algorithm::oracle;
    s.k = static_cast<int>(model.size());
    s.p_hat.assign(model.busy().begin(), model.busy().end());
    s.pi = rank_channels(s.p_hat);
    s.n_hat = n;
    s.j_hat = j;
    s.total_hat = n + j;
    s.n_star = n + optimize_window(mode, n, j, sorted).m;
    s.phase = Phase::orthogonalize_final;
    s.width = s.n_star;
    s.settled = true;
    s.x = (index % s.width + s.width - 1) % s.width;
    s.settle_slot = 0;
    return s;
}

ChannelIndex su_select(SuAgentState& s, Rng& rng) {
    ChannelIndex choice = 0;
    switch (s.phase) {
    case Phase::channel_ranking:
        choice = uniform_index(rng, static_cast<std::size_t>(s.k));
        break;
    case Phase::orthogonalize_learn:
    case Phase::orthogonalize_final:
        if (s.settled) {
            s.x = (s.x + 1) % s.width;
            choice = s.pi[static_cast<std::size_t>(s.x)];
        } else {
            choice = s.pi[uniform_index(rng, static_cast<std::size_t>(s.width))];
        }
        break;
    case Phase::jammer_estimation:
        if (s.x < 0) {
            s.i0 = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(s.width)));
            s.x = s.i0;
        }
        s.x = (s.x + 1) % s.width;
        choice = s.pi[static_cast<std::size_t>(s.x)];
        break;
    case Phase::locked:
        choice = s.pi[static_cast<std::size_t>(s.x)];
        break;
    }
    s.pending = choice;
    return choice;
}

void su_observe(SuAgentState& s, const AgentOutcome& outcome) {
    if (!s.pending) throw ConsistencyError("feedback delivered without a pending selection");
    if (*s.pending != outcome.channel) {
        throw ConsistencyError(
            fmt::format("feedback for channel {} but agent selected {}", outcome.channel, *s.pending));
    }
    s.pending.reset();
    const ChannelIndex ch = outcome.channel;
    switch (s.phase) {
    case Phase::channel_ranking:
        ++s.o[ch];
        if (outcome.busy) {
            ++s.b[ch];
        } else {
            ++s.f;
            if (outcome.collision) {
                ++s.c;
                if (s.algorithm == Algorithm::cdj && outcome.jammer_involved) ++s.c_j;
            }
        }
        break;
    case Phase::orthogonalize_learn:
    case Phase::orthogonalize_final:
        if (!s.settled && outcome.success) {
            s.settled = true;
            s.x = position_in_ranking(s, ch);
            if (s.phase == Phase::orthogonalize_final) {
                s.settle_slot = s.t;
                if (s.algorithm == Algorithm::mc) s.phase = Phase::locked;
            }
        }
        break;
    case Phase::jammer_estimation:
        ++s.je_o[ch];
        if (!outcome.busy) {
            ++s.je_f[ch];
            if (outcome.collision) ++s.je_c[ch];
        }
        break;
    case Phase::locked:
        break;
    }
    ++s.t;
    advance(s);
}

ChannelIndex su_step(SuAgentState& s, const std::optional<AgentOutcome>& feedback, Rng& rng) {
    if (feedback) su_observe(s, *feedback);
    return su_select(s, rng);
}

ChannelIndex baseline_step(SuAgentState& s, const std::optional<AgentOutcome>& feedback, Rng& rng) {
    if (!is_baseline(s.algorithm)) {
        throw ConfigError(ConfigErrorKind::range_violation,
                          fmt::format("'{}' is not a baseline algorithm", to_string(s.algorithm)));
    }
    return su_step(s, feedback, rng);
}

void finalize_cr(SuAgentState& s) {
    s.p_hat.assign(static_cast<std::size_t>(s.k), 1.0);
    for (std::size_t i = 0; i < s.p_hat.size(); ++i) {
        if (s.o[i] > 0) s.p_hat[i] = static_cast<double>(s.b[i]) / static_cast<double>(s.o[i]);
    }
    s.pi = rank_channels(s.p_hat);
    const auto pc = clamped_fraction(static_cast<double>(s.c), static_cast<double>(s.f));

    switch (s.algorithm) {
    case Algorithm::cdj: {
        const auto j = j_from_fraction(static_cast<double>(s.c_j), static_cast<double>(s.f), s.k);
        if (!pc || !j) {
            mark_degraded(s);
            return;
        }
        s.j_hat = *j;
        s.n_hat = invert_n_given_j(*pc, s.j_hat, s.k);
        s.total_hat = s.n_hat + s.j_hat;
        set_window(s);
        return;
    }
    case Algorithm::cnj:
        return;
    case Algorithm::cuj:
    case Algorithm::myopic:
    case Algorithm::mc:
        if (!pc) {
            mark_degraded(s);
            s.total_hat = 1;
            return;
        }
        s.total_hat = invert_n_plus_j(*pc, s.k);
        if (is_baseline(s.algorithm)) {
            s.n_hat = s.total_hat;
            s.n_star = s.total_hat;
        }
        return;
    case Algorithm::oracle:
        return;
    }
}

void finalize_je(SuAgentState& s) {
    const auto o = as_doubles(s.je_o);
    const auto c = as_doubles(s.je_c);
    const auto f = as_doubles(s.je_f);
    const auto t_j = static_cast<double>(s.schedule.t_j);

    if (s.algorithm == Algorithm::cnj) {
        const auto pc = clamped_fraction(static_cast<double>(s.c), static_cast<double>(s.f));
        const auto j = j_sequential(o, c, f, t_j, s.k);
        if (!pc || !j) {
            mark_degraded(s);
            return;
        }
        s.j_hat = *j;
        s.n_hat = invert_n_given_j(*pc, s.j_hat, s.k);
        s.total_hat = s.n_hat + s.j_hat;
    } else if (s.algorithm == Algorithm::cuj) {
        if (s.degraded) return;
        const auto j = j_from_window(o, c, f, t_j, s.total_hat, s.k);
        if (!j) {
            mark_degraded(s);
            return;
        }
        s.j_hat = std::min(*j, s.total_hat - 1);
        s.n_hat = s.total_hat - s.j_hat;
    } else {
        return;
    }
    set_window(s);
}

}  // namespace jamsim

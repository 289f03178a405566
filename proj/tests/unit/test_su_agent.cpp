#include "jamsim/errors.hpp"
#include "jamsim/su_agent.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace jamsim;

namespace {

AgentOutcome idle_success(ChannelIndex c) {
    AgentOutcome o;
    o.channel = c;
    o.transmitted = true;
    o.success = true;
    return o;
}

AgentOutcome collided(ChannelIndex c, bool jammer) {
    AgentOutcome o;
    o.channel = c;
    o.transmitted = true;
    o.collision = true;
    o.jammer_involved = jammer;
    return o;
}

AgentOutcome busy(ChannelIndex c) {
    AgentOutcome o;
    o.channel = c;
    o.busy = true;
    return o;
}

SuAgentState settled_agent(int width, int x) {
    SuAgentState s = make_su_agent(Algorithm::cdj, 8, {0, 0, 0, ScheduleSource::explicit_config});
    s.pi = {3, 1, 4, 0, 5, 2, 7, 6};
    s.width = width;
    s.settled = true;
    s.x = x;
    return s;
}

}  // namespace

TEST_CASE("settled agent hops to the next ranked channel") {
    auto s = settled_agent(5, 2);
    Rng rng(1);
    CHECK(su_select(s, rng) == s.pi[3]);
    CHECK(s.x == 3);
}

TEST_CASE("settle needs an idle channel without collision") {
    auto s = settled_agent(5, 0);
    s.settled = false;
    Rng rng(3);
    auto c = su_select(s, rng);
    su_observe(s, busy(c));
    CHECK_FALSE(s.settled);
    c = su_select(s, rng);
    su_observe(s, collided(c, false));
    CHECK_FALSE(s.settled);
    c = su_select(s, rng);
    su_observe(s, idle_success(c));
    CHECK(s.settled);
    CHECK(s.pi[static_cast<std::size_t>(s.x)] == c);
}

TEST_CASE("first ranking selection is replayable") {
    const PhaseSchedule sched{100, 10, 10, ScheduleSource::explicit_config};
    auto a = make_su_agent(Algorithm::cnj, 8, sched);
    auto b = make_su_agent(Algorithm::cnj, 8, sched);
    Rng ra(77), rb(77), ref(77);
    const auto expected = uniform_index(ref, 8);
    CHECK(su_select(a, ra) == expected);
    CHECK(su_select(b, rb) == expected);
}

TEST_CASE("finalize_cr estimates") {
    SUBCASE("ranking from busy counts") {
        auto s = make_su_agent(Algorithm::cnj, 2, {5, 0, 0, ScheduleSource::explicit_config});
        s.o = {10, 10};
        s.b = {1, 9};
        finalize_cr(s);
        CHECK(s.p_hat[0] == doctest::Approx(0.1));
        CHECK(s.p_hat[1] == doctest::Approx(0.9));
        CHECK(s.pi == std::vector<ChannelIndex>{0, 1});
    }
    SUBCASE("never-observed channel ranks last") {
        auto s = make_su_agent(Algorithm::cnj, 3, {5, 0, 0, ScheduleSource::explicit_config});
        s.o = {4, 0, 4};
        s.b = {4, 0, 3};
        finalize_cr(s);
        CHECK(s.p_hat[1] == 1.0);
        CHECK(s.pi.back() == 1);
    }
    SUBCASE("CDJ recovers N and J at the expectation") {
        auto s = make_su_agent(Algorithm::cdj, 16, {5, 0, 0, ScheduleSource::explicit_config});
        s.o.assign(16, 10);
        s.b.assign(16, 0);
        s.f = 100000;
        s.c = std::llround(100000 * collision_prob(JamMode::coordinated, 8, 4, 16));
        s.c_j = 25000;
        finalize_cr(s);
        CHECK(s.j_hat == 4);
        CHECK(s.n_hat == 8);
        CHECK(s.n_star >= s.n_hat);
        CHECK_FALSE(s.degraded);
    }
    SUBCASE("CUJ recovers N+J") {
        auto s = make_su_agent(Algorithm::cuj, 8, {5, 1, 1, ScheduleSource::explicit_config});
        s.o.assign(8, 10);
        s.b.assign(8, 0);
        s.f = 1000000;
        s.c = std::llround(1000000 * (1.0 - std::pow(0.875, 5)));
        finalize_cr(s);
        CHECK(s.total_hat == 6);
    }
    SUBCASE("no free slots degrades") {
        auto s = make_su_agent(Algorithm::cdj, 8, {5, 0, 0, ScheduleSource::explicit_config});
        s.o.assign(8, 1);
        s.b.assign(8, 1);
        finalize_cr(s);
        CHECK(s.degraded);
        CHECK(s.n_hat == 1);
        CHECK(s.j_hat == 0);
        CHECK(s.n_star == 1);
    }
}

TEST_CASE("finalize_je estimates") {
    SUBCASE("CNJ with uniform jammer ratio gives J") {
        auto s = make_su_agent(Algorithm::cnj, 8, {5, 1, 800, ScheduleSource::explicit_config});
        s.p_hat = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        s.pi = rank_channels(s.p_hat);
        s.f = 100000;
        s.c = std::llround(100000 * collision_prob(JamMode::coordinated, 4, 2, 8));
        s.je_o.assign(8, 100);
        s.je_f.assign(8, 80);
        s.je_c.assign(8, 20);
        finalize_je(s);
        CHECK(s.j_hat == 2);
        CHECK(s.n_hat == 4);
        CHECK(s.n_star == 5);
    }
    SUBCASE("CUJ subtracts the jammer estimate") {
        auto s = make_su_agent(Algorithm::cuj, 8, {5, 1, 6000, ScheduleSource::explicit_config});
        s.p_hat = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
        s.pi = rank_channels(s.p_hat);
        s.total_hat = 6;
        s.je_o.assign(8, 0);
        s.je_f.assign(8, 0);
        s.je_c.assign(8, 0);
        for (int i = 0; i < 6; ++i) {
            s.je_o[i] = 1000;
            s.je_f[i] = 1000;
            s.je_c[i] = std::llround(1000 * (1.0 - std::pow(5.0 / 6.0, 2)));
        }
        finalize_je(s);
        CHECK(s.j_hat == 2);
        CHECK(s.n_hat == 4);
        CHECK(s.n_star == 4);
    }
    SUBCASE("no free JE slots degrades") {
        auto s = make_su_agent(Algorithm::cnj, 8, {5, 1, 10, ScheduleSource::explicit_config});
        s.f = 10;
        s.je_o.assign(8, 1);
        s.je_f.assign(8, 0);
        s.je_c.assign(8, 0);
        finalize_je(s);
        CHECK(s.degraded);
        CHECK(s.n_star == 1);
    }
}

TEST_CASE("phase boundaries and counter conservation") {
    const PhaseSchedule sched{200, 30, 80, ScheduleSource::explicit_config};
    auto s = make_su_agent(Algorithm::cnj, 6, sched);
    Rng rng(11);
    Rng env(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 400; ++t) {
        const Phase expected = t < 200   ? Phase::channel_ranking
                               : t < 230 ? Phase::orthogonalize_learn
                               : t < 310 ? Phase::jammer_estimation
                                         : Phase::orthogonalize_final;
        CHECK(s.phase == expected);
        const auto c = su_select(s, rng);
        AgentOutcome o;
        o.channel = c;
        o.busy = u(env) < 0.1 * static_cast<double>(c);
        o.transmitted = !o.busy;
        o.collision = o.transmitted && u(env) < 0.3;
        o.success = o.transmitted && !o.collision;
        if (t == 199) {
            CHECK(std::accumulate(s.o.begin(), s.o.end(), std::int64_t{0}) == 199);
        }
        su_observe(s, o);
        if (t == 199) {
            CHECK(std::accumulate(s.o.begin(), s.o.end(), std::int64_t{0}) == 200);
            CHECK(s.f + std::accumulate(s.b.begin(), s.b.end(), std::int64_t{0}) == 200);
            for (int i = 0; i < 6; ++i) CHECK(s.b[i] <= s.o[i]);
            CHECK(s.c <= s.f);
            CHECK(s.c_j == 0);
        }
    }
}

TEST_CASE("jammer collisions only counted by the distinguishable algorithm") {
    for (auto a : {Algorithm::cdj, Algorithm::cnj}) {
        auto s = make_su_agent(a, 4, {10, 0, 0, ScheduleSource::explicit_config});
        Rng rng(2);
        for (int t = 0; t < 6; ++t) {
            const auto c = su_select(s, rng);
            su_observe(s, collided(c, t % 2 == 0));
        }
        CHECK(s.c == 6);
        CHECK(s.c_j == (a == Algorithm::cdj ? 3 : 0));
    }
}

TEST_CASE("mismatched feedback is a consistency fault") {
    auto s = make_su_agent(Algorithm::cnj, 4, {10, 0, 0, ScheduleSource::explicit_config});
    Rng rng(2);
    CHECK_THROWS_AS(su_observe(s, busy(0)), ConsistencyError);
    const auto c = su_select(s, rng);
    CHECK_THROWS_AS(su_observe(s, busy((c + 1) % 4)), ConsistencyError);
}

TEST_CASE("baselines") {
    SUBCASE("uniform hopping before the learning boundary") {
        auto s = make_su_agent(Algorithm::mc, 5, {50, 0, 0, ScheduleSource::explicit_config});
        Rng rng(4);
        std::vector<int> seen(5, 0);
        std::optional<AgentOutcome> fb;
        for (int t = 0; t < 50; ++t) {
            CHECK(s.phase == Phase::channel_ranking);
            const auto c = baseline_step(s, fb, rng);
            ++seen[c];
            fb = busy(c);
        }
        for (int v : seen) CHECK(v > 0);
    }
    SUBCASE("musical chairs locks on its first success") {
        auto s = make_su_agent(Algorithm::mc, 8, {0, 0, 0, ScheduleSource::explicit_config});
        s.pi = {2, 0, 1, 3, 4, 5, 6, 7};
        s.width = 6;
        Rng rng(9);
        const auto c = su_select(s, rng);
        su_observe(s, idle_success(c));
        CHECK(s.phase == Phase::locked);
        std::optional<AgentOutcome> fb;
        for (int t = 0; t < 100; ++t) {
            CHECK(baseline_step(s, fb, rng) == c);
            fb = t % 2 ? busy(c) : collided(c, true);
        }
    }
    SUBCASE("myopic wraps around its window") {
        auto s = make_su_agent(Algorithm::myopic, 8, {0, 0, 0, ScheduleSource::explicit_config});
        s.pi = {2, 0, 1, 3, 4, 5, 6, 7};
        s.width = 6;
        s.settled = true;
        s.x = 5;
        Rng rng(9);
        CHECK(su_select(s, rng) == s.pi[0]);
    }
    SUBCASE("baseline_step rejects protocol agents") {
        auto s = make_su_agent(Algorithm::cnj, 8, {10, 0, 0, ScheduleSource::explicit_config});
        Rng rng(1);
        CHECK_THROWS_AS(baseline_step(s, std::nullopt, rng), ConfigError);
    }
}

TEST_CASE("agent is a function of its own feedback stream") {
    const PhaseSchedule sched{60, 10, 30, ScheduleSource::explicit_config};
    auto a = make_su_agent(Algorithm::cuj, 6, sched);
    Rng ra(21);
    Rng env(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<AgentOutcome> stream;
    std::vector<ChannelIndex> picks;
    std::optional<AgentOutcome> fb;
    for (int t = 0; t < 200; ++t) {
        const auto c = su_step(a, fb, ra);
        picks.push_back(c);
        AgentOutcome o;
        o.channel = c;
        o.busy = u(env) < 0.3;
        o.transmitted = !o.busy;
        o.collision = o.transmitted && u(env) < 0.4;
        o.success = o.transmitted && !o.collision;
        stream.push_back(o);
        fb = o;
    }
    auto b = make_su_agent(Algorithm::cuj, 6, sched);
    Rng rb(21);
    fb.reset();
    for (std::size_t t = 0; t < stream.size(); ++t) {
        CHECK(su_step(b, fb, rb) == picks[t]);
        fb = stream[t];
    }
}

TEST_CASE("oracle agents start orthogonal") {
    const ChannelModel m({0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    std::vector<SuAgentState> agents;
    for (int i = 0; i < 4; ++i) agents.push_back(make_oracle_agent(m, 4, 2, JamMode::coordinated, i));
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        std::vector<ChannelIndex> picks;
        for (auto& a : agents) picks.push_back(su_select(a, rng));
        std::sort(picks.begin(), picks.end());
        CHECK(std::adjacent_find(picks.begin(), picks.end()) == picks.end());
        for (std::size_t i = 0; i < agents.size(); ++i) su_observe(agents[i], busy(*agents[i].pending));
    }
    CHECK(agents[0].n_star == 5);
}

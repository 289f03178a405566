#include "jamsim/errors.hpp"
#include "jamsim/sim_runner.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace jamsim;

namespace {

ExperimentConfig base_config(Algorithm a) {
    ExperimentConfig c;
    c.name = std::string(to_string(a));
    c.algorithm = a;
    c.k = 8;
    c.n = 4;
    c.j = 2;
    c.p = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    c.horizon = 2500;
    c.schedule.t_c = 1200;
    c.schedule.t_o = 50;
    c.schedule.t_j = 400;
    c.jammers = default_jam_mode(a);
    c.runs = 4;
    c.seed = 5;
    return c;
}

}  // namespace

TEST_CASE("episodes are deterministic in (config, seed)") {
    for (auto a : {Algorithm::cdj, Algorithm::cnj, Algorithm::cuj, Algorithm::myopic, Algorithm::mc}) {
        const auto c = base_config(a);
        CHECK(run_episode(c, 123) == run_episode(c, 123));
        CHECK(run_episode(c, 123).successes != run_episode(c, 124).successes);
    }
}

TEST_CASE("per-slot counts add up to N") {
    for (auto a : {Algorithm::cdj, Algorithm::cnj, Algorithm::cuj, Algorithm::myopic, Algorithm::mc, Algorithm::oracle}) {
        const auto c = base_config(a);
        const auto tr = run_episode(c, 9);
        REQUIRE(tr.successes.size() == 2500);
        for (std::size_t t = 0; t < tr.successes.size(); ++t) {
            CHECK(tr.successes[t] + tr.su_collisions[t] + tr.jammer_collisions[t] + tr.busy[t] == c.n);
        }
    }
}

TEST_CASE("lone oracle user on clear channels always succeeds") {
    ExperimentConfig c = base_config(Algorithm::oracle);
    c.n = 1;
    c.j = 0;
    c.p.assign(8, 0.0);
    const auto tr = run_episode(c, 1);
    CHECK(std::accumulate(tr.successes.begin(), tr.successes.end(), 0) == 2500);
    CHECK(std::accumulate(tr.su_collisions.begin(), tr.su_collisions.end(), 0) == 0);
}

TEST_CASE("oracle throughput") {
    const ChannelModel m({0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    CHECK(oracle_throughput(m, 4, 2, JamMode::coordinated) == doctest::Approx(1.36));
    CHECK(oracle_throughput(m, 4, 2, JamMode::uncoordinated) == doctest::Approx(1.664));
    CHECK(oracle_throughput(ChannelModel(std::vector<double>(6, 0.0)), 3, 0, JamMode::coordinated) == 3.0);
}

TEST_CASE("oracle policy achieves the oracle rate") {
    for (auto mode : {JamMode::coordinated, JamMode::uncoordinated}) {
        ExperimentConfig c = base_config(Algorithm::oracle);
        c.jammers = mode;
        c.horizon = 100000;
        const auto tr = run_episode(c, 77);
        const double total = std::accumulate(tr.successes.begin(), tr.successes.end(), 0.0);
        const double rate = oracle_throughput(c);
        // Per-slot successes are bounded by N; the variance bound N^2/4 is conservative.
        const double se = std::sqrt(c.n * c.n / 4.0 / c.horizon);
        CHECK(std::abs(total / c.horizon - rate) <= 3.0 * se);
    }
}

TEST_CASE("regret curve of a silent run grows at the oracle rate") {
    Trajectory tr;
    tr.config_digest = "x";
    tr.successes.assign(5, 0);
    const auto curve = regret_curve({tr}, 1.5);
    for (std::size_t t = 0; t < 5; ++t) {
        CHECK(curve.mean_regret[t] == doctest::Approx(1.5 * static_cast<double>(t + 1)));
        CHECK(curve.stderr_regret[t] == 0.0);
    }
}

TEST_CASE("regret curve statistics") {
    Trajectory a, b;
    a.config_digest = b.config_digest = "x";
    a.successes = {1, 1, 0};
    b.successes = {0, 1, 1};
    const auto curve = regret_curve({a, b}, 1.0);
    CHECK(curve.mean_throughput == std::vector<double>{0.5, 1.5, 2.0});
    CHECK(curve.mean_regret == std::vector<double>{0.5, 0.5, 1.0});
    CHECK(curve.stderr_regret[0] == doctest::Approx(0.5));
    CHECK(curve.stderr_regret[2] == doctest::Approx(0.0));
    b.config_digest = "y";
    CHECK_THROWS_AS(regret_curve({a, b}, 1.0), ConfigError);
    CHECK_THROWS_AS(regret_curve({}, 1.0), ConfigError);
}

TEST_CASE("accumulator merge is order independent") {
    const auto c = base_config(Algorithm::cnj);
    std::vector<Trajectory> runs;
    for (int i = 0; i < 4; ++i) runs.push_back(run_episode(c, run_seed(c.seed, i)));
    const double rate = oracle_throughput(c);
    RegretAccumulator forward(config_digest(c), c.horizon, rate);
    for (const auto& tr : runs) forward.add(tr);
    RegretAccumulator left(config_digest(c), c.horizon, rate), right(config_digest(c), c.horizon, rate);
    left.add(runs[3]);
    left.add(runs[1]);
    right.add(runs[2]);
    right.add(runs[0]);
    right.merge(left);
    CHECK(right.curve().mean_regret == forward.curve().mean_regret);
    CHECK(right.curve().stderr_regret == forward.curve().stderr_regret);
}

TEST_CASE("parallel and serial experiments agree") {
    auto c = base_config(Algorithm::cuj);
    c.runs = 5;
    const auto serial = run_experiment(c, {1, true});
    const auto parallel = run_experiment(c, {3, true});
    CHECK(serial.curve.mean_regret == parallel.curve.mean_regret);
    CHECK(serial.curve.stderr_regret == parallel.curve.stderr_regret);
    CHECK(serial.trajectories == parallel.trajectories);
    CHECK(serial.summary.final_regret == parallel.summary.final_regret);
}

TEST_CASE("shared windows keep settled users orthogonal") {
    for (auto a : {Algorithm::cdj, Algorithm::cnj, Algorithm::cuj, Algorithm::myopic}) {
        auto c = base_config(a);
        c.horizon = 4000;
        c.schedule.t_c = 2000;
        for (int r = 0; r < 20; ++r) {
            const auto tr = run_episode(c, run_seed(99, r));
            if (tr.shared_window && tr.all_settled) CHECK(tr.su_collisions_after_settle == 0);
        }
    }
}

TEST_CASE("oracle regret is zero within noise") {
    auto c = base_config(Algorithm::oracle);
    c.runs = 60;
    c.horizon = 3000;
    const auto r = run_experiment(c);
    CHECK(std::abs(r.curve.mean_regret.back()) < 3.0 * r.curve.stderr_regret.back());
}

TEST_CASE("invalid configs are rejected before slot 0") {
    auto c = base_config(Algorithm::cnj);
    c.j = 4;
    CHECK_THROWS_AS(run_episode(c, 1), ConfigError);
}

#include "jamsim/selfcheck.hpp"

#include "jamsim/channel_env.hpp"
#include "jamsim/estimators.hpp"
#include "jamsim/jammer.hpp"
#include "jamsim/rng.hpp"

#include <fmt/format.h>

#include <cmath>

namespace jamsim {

CheckResult inversion_identity_suite() {
    CheckResult r{"inversion_identity", true, ""};
    int cases = 0;
    int failures = 0;
    auto miss = [&](const std::string& what) {
        if (failures++ == 0) r.detail = what;
        r.passed = false;
    };
    for (int n = 1; n <= 10; ++n) {
        for (int j = 0; j < n; ++j) {
            for (int k = std::max(2, n + j); k <= 20; ++k) {
                ++cases;
                const double pc_c = collision_prob(JamMode::coordinated, n, j, k);
                if (const int got = invert_n_given_j(pc_c, j, k); got != n) {
                    miss(fmt::format("invert_n_given_j N={} J={} K={} gave {}", n, j, k, got));
                }
                const double pc_u = collision_prob(JamMode::uncoordinated, n, j, k);
                if (const int got = invert_n_plus_j(pc_u, k); got != n + j) {
                    miss(fmt::format("invert_n_plus_j N={} J={} K={} gave {}", n, j, k, got));
                }
                if (j >= 1) {
                    const double t_c = 1000.0;
                    const double b = 0.3 * j * t_c;
                    const double hit = 1.0 - std::pow(1.0 - 1.0 / k, n);
                    const auto got = jammer_invert_n((j * t_c - b) * hit, b, j, t_c, k);
                    if (!got || *got != n) {
                        miss(fmt::format("jammer_invert_n N={} J={} K={} gave {}", n, j, k, got.value_or(-1)));
                    }
                }
            }
        }
    }
    if (r.passed) r.detail = fmt::format("{} cases exact", cases);
    else r.detail = fmt::format("{} of {} cases failed; first: {}", failures, cases, r.detail);
    return r;
}

CollisionEstimate simulate_collision_rate(JamMode mode, int k, int n, int j, std::int64_t slots, std::uint64_t seed) {
    const ChannelModel model(std::vector<double>(static_cast<std::size_t>(k), 0.5));
    Rng rng = make_stream(seed, "collision_mc");
    BusyMask mask;
    std::vector<ChannelIndex> su(static_cast<std::size_t>(n));
    std::vector<ChannelIndex> jam;
    std::vector<int> scratch;
    std::vector<ChannelIndex> identity(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
    SlotOutcome out;

    CollisionEstimate est;
    for (std::int64_t t = 0; t < slots; ++t) {
        draw_occupancy(model, rng, mask);
        for (auto& c : su) c = uniform_index(rng, static_cast<std::size_t>(k));
        if (mode == JamMode::coordinated) {
            sample_distinct(rng, k, j, scratch, jam, identity);
        } else {
            jam.resize(static_cast<std::size_t>(j));
            for (auto& c : jam) c = uniform_index(rng, static_cast<std::size_t>(k));
        }
        resolve_slot(mask, su, jam, false, out);
        if (out.su[0].transmitted) {
            ++est.transmissions;
            if (out.su[0].collision) ++est.collisions;
        }
    }
    est.expected = collision_prob(mode, n, j, k);
    if (est.transmissions > 0) {
        est.rate = static_cast<double>(est.collisions) / static_cast<double>(est.transmissions);
        est.std_error = std::sqrt(est.expected * (1.0 - est.expected) / static_cast<double>(est.transmissions));
    }
    return est;
}

CheckResult collision_monte_carlo_check(JamMode mode, int k, int n, int j, std::int64_t slots, std::uint64_t seed) {
    const auto est = simulate_collision_rate(mode, k, n, j, slots, seed);
    const double z = est.std_error > 0.0 ? std::abs(est.rate - est.expected) / est.std_error : 0.0;
    return {fmt::format("collision_mc {} K={} N={} J={}", to_string(mode), k, n, j), z <= 3.0,
            fmt::format("empirical {:.6f} closed form {:.6f} ({:.2f} se over {} transmissions)", est.rate,
                        est.expected, z, est.transmissions)};
}

std::vector<CheckResult> run_selfcheck(std::int64_t slots, std::uint64_t seed) {
    std::vector<CheckResult> out{inversion_identity_suite()};
    const int triples[3][3] = {{16, 8, 4}, {8, 4, 2}, {10, 5, 1}};
    for (const auto& t : triples) {
        for (auto mode : {JamMode::coordinated, JamMode::uncoordinated}) {
            out.push_back(collision_monte_carlo_check(mode, t[0], t[1], t[2], slots,
                                                      derive_seed(seed, to_string(mode), static_cast<std::uint64_t>(t[0]))));
        }
    }
    return out;
}

}  // namespace jamsim

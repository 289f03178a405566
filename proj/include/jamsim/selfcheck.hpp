#pragma once

#include "jamsim/algorithm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jamsim {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Exact recovery of N, N+J and the jammer-side N from closed-form collision
// probabilities, for 1 <= N <= 10, 0 <= J < N, N + J <= K <= 20.
CheckResult inversion_identity_suite();

struct CollisionEstimate {
    std::int64_t transmissions = 0;
    std::int64_t collisions = 0;
    double rate = 0.0;
    double expected = 0.0;
    double std_error = 0.0;
};

// Everyone hops uniformly over K channels (half of them busy on average);
// counts collisions of SU 0 on slots where its channel was idle.
CollisionEstimate simulate_collision_rate(JamMode mode, int k, int n, int j, std::int64_t slots, std::uint64_t seed);

CheckResult collision_monte_carlo_check(JamMode mode, int k, int n, int j, std::int64_t slots, std::uint64_t seed);

std::vector<CheckResult> run_selfcheck(std::int64_t slots = 1000000, std::uint64_t seed = 2024);

}  // namespace jamsim

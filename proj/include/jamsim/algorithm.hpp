#pragma once

#include <string_view>

namespace jamsim {

enum class Algorithm { cdj, cnj, cuj, myopic, mc, oracle };

// How jammers pick channels once they attack.
enum class JamMode { coordinated, uncoordinated };

std::string_view to_string(Algorithm a) noexcept;
std::string_view to_string(JamMode m) noexcept;

// Throw ConfigError(malformed) on unknown names.
Algorithm parse_algorithm(std::string_view name);
JamMode parse_jam_mode(std::string_view name);

constexpr bool is_baseline(Algorithm a) noexcept {
    return a == Algorithm::myopic || a == Algorithm::mc;
}

constexpr JamMode default_jam_mode(Algorithm a) noexcept {
    return a == Algorithm::cuj ? JamMode::uncoordinated : JamMode::coordinated;
}

}  // namespace jamsim

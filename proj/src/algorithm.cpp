#include "jamsim/algorithm.hpp"

#include "jamsim/errors.hpp"

#include <fmt/format.h>

#include <string>

namespace jamsim {

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::cdj: return "cdj";
    case Algorithm::cnj: return "cnj";
    case Algorithm::cuj: return "cuj";
    case Algorithm::myopic: return "myopic";
    case Algorithm::mc: return "mc";
    case Algorithm::oracle: return "oracle";
    }
    return "unknown";
}

std::string_view to_string(JamMode m) noexcept {
    return m == JamMode::coordinated ? "coordinated" : "uncoordinated";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::cdj, Algorithm::cnj, Algorithm::cuj, Algorithm::myopic, Algorithm::mc,
                   Algorithm::oracle}) {
        if (to_string(a) == name) return a;
    }
    throw ConfigError(ConfigErrorKind::malformed, fmt::format("unknown algorithm '{}'", name));
}

JamMode parse_jam_mode(std::string_view name) {
    if (name == "coordinated") return JamMode::coordinated;
    if (name == "uncoordinated") return JamMode::uncoordinated;
    throw ConfigError(ConfigErrorKind::malformed, fmt::format("unknown jammer mode '{}'", name));
}

}  // namespace jamsim

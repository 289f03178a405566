#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace jamsim {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view label) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Child seeds depend only on (parent, label, index), so adding a stream never
// perturbs the draws of another.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view label,
                                    std::uint64_t index = 0) noexcept {
    return splitmix64(splitmix64(parent ^ fnv1a(label)) + splitmix64(index + 1));
}

inline Rng make_stream(std::uint64_t parent, std::string_view label, std::uint64_t index = 0) {
    return Rng(derive_seed(parent, label, index));
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace jamsim

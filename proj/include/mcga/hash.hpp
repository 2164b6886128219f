#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mcga {

// FNV-1a, used for genotype/solution hashes in determinism checks and for
// deriving per-run seeds from instance names. Stable across platforms.
inline std::uint64_t fnv1a(std::span<const std::uint8_t> bytes,
                           std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a_ints(std::span<const int> values,
                                std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (int v : values) {
        for (int shift = 0; shift < 32; shift += 8) {
            h ^= static_cast<std::uint8_t>(static_cast<std::uint32_t>(v) >> shift);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

inline std::uint64_t fnv1a_ints(const std::vector<int>& values,
                                std::uint64_t seed = 0xcbf29ce484222325ULL) {
    return fnv1a_ints(std::span<const int>(values), seed);
}

}  // namespace mcga

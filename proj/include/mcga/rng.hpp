#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mcga {

// Seeded PRNG used everywhere in the project. Wraps std::mt19937_64 (whose
// output sequence is pinned by the standard) and provides its own bounded
// draws, so results are bit-reproducible across platforms and standard
// library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive. Multiply-shift mapping: one
    // engine draw per call, bias below 2^-64 per unit of range.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(range);
        return lo + static_cast<std::int64_t>(wide >> 64);
    }

    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    // Uniform real in [0, 1).
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

    bool bernoulli(double p) { return uniform_real() < p; }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        shuffle(std::span<T>(items));
    }

  private:
    std::mt19937_64 engine_;
};

// Stable 64-bit mixing for seed derivation. Independent of std::hash so that
// run seeds recorded in output files are identical on every platform.
inline std::uint64_t mix_u64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine_u64(std::uint64_t seed, std::uint64_t value) {
    return mix_u64(seed ^ mix_u64(value));
}

}  // namespace mcga

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace swts {

/// SplitMix64 finalizer; used for seeding and for stream-key derivation.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hashes a root seed together with an ordered list of keys into a new seed.
/// Streams derived with distinct key tuples are statistically independent and
/// do not depend on how many other streams exist.
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> keys) noexcept;

/// Well-known purpose keys for derived streams.
enum class StreamPurpose : std::uint64_t {
    policy = 0x706f6c696379ULL,   // "policy"
    reward = 0x726577617264ULL,   // "reward"
    episode = 0x657069736f6465ULL,
    sweep = 0x7377656570ULL,
    generator = 0x67656e6572ULL,
};

/// xoshiro256** 1.0 (Blackman & Vigna), seeded by expanding a 64-bit seed with
/// SplitMix64. The output sequence is fully specified by the seed, so results
/// are bit-identical across compilers and platforms. Single owner; not thread-safe.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) noexcept;

    /// Stream keyed by (root seed, keys...).
    static RngStream derived(std::uint64_t root, std::initializer_list<std::uint64_t> keys) noexcept {
        return RngStream(derive_seed(root, keys));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1).
    double uniform_open() noexcept { return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52; }

    /// Uniform integer in [0, n) via Lemire's nearly-divisionless method. n > 0.
    std::uint64_t below(std::uint64_t n) noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace swts

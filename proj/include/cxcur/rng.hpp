#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace cxcur {

// Seeds are split into independent streams by hashing (seed, stream) through
// SplitMix64. Stream ids used by the library:
//   kColumnStream  column sampling inside CX/CUR
//   kRowStream     row sampling inside CUR and sampled regression
//   kNoiseStream   Gaussian noise in synthetic matrices
//   kBasisStream   random orthonormal factors in synthetic matrices
// Independent trials (boosting, Monte-Carlo loops, evaluation sweeps) take
// derive_seed(seed, trial_index) and then use the streams above.
inline constexpr std::uint64_t kColumnStream = 0x636f6cULL;
inline constexpr std::uint64_t kRowStream = 0x726f77ULL;
inline constexpr std::uint64_t kNoiseStream = 0x6e6f6973ULL;
inline constexpr std::uint64_t kBasisStream = 0x62617369ULL;

/// One SplitMix64 step.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed for `stream` of `seed`; distinct streams give unrelated sequences.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    splitmix64(t);
    return splitmix64(t);
}

/// xoshiro256++ generator. Satisfies UniformRandomBitGenerator, but the
/// library draws uniforms and normals through its own members so sequences
/// are identical across standard library implementations.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = derive_seed(seed, stream);
        for (auto& w : state_) {
            w = splitmix64(s);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal();

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace cxcur

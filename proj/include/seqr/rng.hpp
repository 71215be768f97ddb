//
// seqr/rng.hpp
//
// Counter-based pseudorandom generator with splittable streams.
//
// Output i of stream (seed, stream_id) is the SplitMix64 finalizer applied to
// state + i*GAMMA, where the state is itself a finalizer hash of the seed and
// the stream id and GAMMA is the 64-bit golden-ratio increment. Properties
// this artifact relies on:
//
//   * the i-th draw is a pure function of (seed, stream_id, i), so any run
//     is reproducible bit-for-bit from its seed regardless of call order
//     elsewhere;
//   * split(id) derives a child stream whose outputs are uncorrelated with
//     the parent's (distinct finalizer inputs), so trials, columns, and
//     panels can each get their own stream from one master seed.
//
// The finalizer is the standard SplitMix64 mix (Steele/Lea/Flood style,
// Stafford mix13 constants). Gaussians come from Box-Muller on consecutive
// uniform draws, with the second variate cached.
//

#ifndef SEQR_RNG_HPP
#define SEQR_RNG_HPP

#include <cmath>
#include <cstdint>

namespace seqr {

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0)
        : state_(mix(mix(seed + GAMMA) ^ mix(stream_id + 2 * GAMMA))) {}

    // Child generator for an independent substream of this one.
    Rng split(std::uint64_t stream_id) const {
        Rng child(0);
        child.state_ = mix(state_ ^ mix(stream_id + 3 * GAMMA));
        child.counter_ = 0;
        child.has_cached_gaussian_ = false;
        return child;
    }

    std::uint64_t next_u64() {
        ++counter_;
        return mix(state_ + counter_ * GAMMA);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on {0, ..., bound-1} by rejection, exact for any bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double next_gaussian() {
        if (has_cached_gaussian_) {
            has_cached_gaussian_ = false;
            return cached_gaussian_;
        }
        // Shift into (0, 1] so the log is finite.
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        cached_gaussian_ = r * std::sin(t);
        has_cached_gaussian_ = true;
        return r * std::cos(t);
    }

    double next_sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

private:
    static constexpr std::uint64_t GAMMA = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
    std::uint64_t counter_ = 0;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

} // namespace seqr

#endif // SEQR_RNG_HPP

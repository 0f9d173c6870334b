#pragma once

#include <cstdint>

namespace kmpspectra {

/// splitmix64: the fixed, named PRNG used for every randomized experiment.
/// 64-bit state, one multiply-xorshift finalizer per output. Chosen for
/// trivial cross-implementation reproducibility; statistical quality is more
/// than sufficient for instance generation.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 random bits (exactly representable).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    uint64_t state_;
};

/// Decorrelated per-stream seed: finalize (seed + (stream+1)*gamma) once so
/// that distinct streams do not share output prefixes. Used to hand each
/// sweep trial its own generator independent of scheduling order.
inline uint64_t substream_seed(uint64_t seed, uint64_t stream) {
    SplitMix64 g(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
    return g.next_u64();
}

} // namespace kmpspectra

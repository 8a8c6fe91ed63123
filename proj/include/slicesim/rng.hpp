#pragma once

#include <cstdint>

namespace slicesim {

// splitmix64 finalizer; used to derive independent sub-seeds, never as a stream.
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t salt) {
    return mix64(base + 0x9E3779B97F4A7C15ULL * (salt + 1));
}

// Philox4x32-10 counter-based generator. Key is the 64-bit seed; the 128-bit
// counter is [block | stream], so streams for distinct stream ids never
// overlap and a trial's draws depend only on (seed, stream id, draw index).
class RandomStream {
  public:
    RandomStream(uint64_t seed, uint64_t stream_id)
        : key0_(static_cast<uint32_t>(seed)),
          key1_(static_cast<uint32_t>(seed >> 32)),
          stream_lo_(static_cast<uint32_t>(stream_id)),
          stream_hi_(static_cast<uint32_t>(stream_id >> 32)) {}

    uint64_t next_u64() {
        if (have_ == 0) refill();
        return buf_[--have_];
    }

    // 53-bit mantissa uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Exponential with the given mean via inverse CDF; u = 0 maps to 0.
    double next_exponential(double mean) {
        return -mean * log1p_neg(next_double());
    }

    // Inverse-CDF Poisson; consumes exactly one uniform, so the draw is
    // monotone in lambda for a fixed stream position. Requires lambda <= ~700
    // (exp(-lambda) must stay normal); validated at the config boundary.
    uint64_t next_poisson(double lambda);

    // UniformRandomBitGenerator interface (handy for std::shuffle in tests)
    using result_type = uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }
    result_type operator()() { return next_u64(); }

  private:
    static double log1p_neg(double u); // log(1-u) without cancellation
    void refill();

    uint32_t key0_, key1_;
    uint32_t stream_lo_, stream_hi_;
    uint64_t block_ = 0;
    uint64_t buf_[2] = {0, 0};
    int have_ = 0;
};

} // namespace slicesim

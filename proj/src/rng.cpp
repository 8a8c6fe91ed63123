#include "slicesim/rng.hpp"

#include <cmath>

namespace slicesim {

namespace {

constexpr uint32_t PHILOX_M0 = 0xD2511F53u;
constexpr uint32_t PHILOX_M1 = 0xCD9E8D57u;
constexpr uint32_t PHILOX_W0 = 0x9E3779B9u;
constexpr uint32_t PHILOX_W1 = 0xBB67AE85u;

inline void philox_round(uint32_t c[4], uint32_t k0, uint32_t k1) {
    uint64_t p0 = static_cast<uint64_t>(PHILOX_M0) * c[0];
    uint64_t p1 = static_cast<uint64_t>(PHILOX_M1) * c[2];
    uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    uint32_t n0 = hi1 ^ c[1] ^ k0;
    uint32_t n1 = lo1;
    uint32_t n2 = hi0 ^ c[3] ^ k1;
    uint32_t n3 = lo0;
    c[0] = n0; c[1] = n1; c[2] = n2; c[3] = n3;
}

} // namespace

void RandomStream::refill() {
    uint32_t c[4] = {static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
                     stream_lo_, stream_hi_};
    uint32_t k0 = key0_, k1 = key1_;
    for (int r = 0; r < 10; ++r) {
        philox_round(c, k0, k1);
        k0 += PHILOX_W0;
        k1 += PHILOX_W1;
    }
    buf_[0] = (static_cast<uint64_t>(c[1]) << 32) | c[0];
    buf_[1] = (static_cast<uint64_t>(c[3]) << 32) | c[2];
    have_ = 2;
    ++block_;
}

double RandomStream::log1p_neg(double u) {
    return std::log1p(-u);
}

uint64_t RandomStream::next_poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    double u = next_double();
    double p = std::exp(-lambda);
    double cum = p;
    uint64_t k = 0;
    // mean + 40 sd + slack bounds the inversion walk; beyond it cum has
    // saturated at 1 up to rounding.
    uint64_t k_max = static_cast<uint64_t>(lambda + 40.0 * std::sqrt(lambda) + 64.0);
    while (u >= cum && k < k_max) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
    }
    return k;
}

} // namespace slicesim

#pragma once

#include <cstdint>
#include <vector>

#include "slicesim/rng.hpp"

namespace slicesim {

// One Monte Carlo draw of every channel gain a scenario can touch.
// Gains are squared envelopes under Rayleigh fading: Exponential with the
// slice's average SNR as mean (noise power 1, so gain == received SNR at
// unit transmit power).
struct ChannelDraw {
    std::vector<double> g_b; // broadband device, one entry per frequency
    std::vector<double> g_u; // latency users, user-major [u * f_total + f]
    std::vector<double> g_m; // machine-type devices, one per arrival
};

struct ChannelDims {
    double gamma_b = 0.0;  // mean SNR, broadband
    double gamma_u = 0.0;  // mean SNR, latency slice
    double gamma_m = 0.0;  // mean SNR, machine-type slice
    int f_total = 1;       // frequencies
    int n_urllc = 0;       // latency users
    double lambda_m = 0.0; // Poisson arrival rate of machine-type devices
};

// Fixed draw order: g_b (f-major), g_u (u-major), n_m, g_m. A draw is a pure
// function of (seed, trial); reusing the pair reproduces it bit for bit.
ChannelDraw draw_channels(const ChannelDims& dims, uint64_t seed, uint64_t trial);

// Targeted fills used by the per-trial evaluators; same distributions as
// draw_channels but each scenario consumes only its own stream layout.
void fill_exponential(RandomStream& rs, double mean, double* out, int n);
std::vector<double> draw_mmtc_gains(RandomStream& rs, double gamma_m, double lambda_m);

} // namespace slicesim

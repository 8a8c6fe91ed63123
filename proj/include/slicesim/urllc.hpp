#pragma once

namespace slicesim {

// Latency-slice SIC rate evaluators. gains is user-major [u * n_freq + f].
// embb_per_freq holds the received broadband power seen on each frequency
// (the inversion target when the device is active, 0 when silent); pass
// nullptr for a band with no broadband user. Rates are frequency-averaged
// spectral efficiencies, indexed by decode position (position 0 first).

// Greedy order: each step picks the remaining user with the largest
// frequency-averaged log2(1+SINR), everyone not yet decoded as interference.
// Ties break to the lowest user index.
void urllc_decode_order(const double* gains, int n_users, int n_freq,
                        const double* embb_per_freq, int* order_out);

// Dedicated band, no broadband interference anywhere.
void oma_urllc_rates(const double* gains, int n_users, int n_freq,
                     double* rates_out);

// Full band shared with the broadband user, decoded after every latency user.
void noma_urllc_rates(const double* gains, int n_users, int n_freq,
                      const double* embb_per_freq, double* rates_out);

// Rate splitting, exactly two users. The user ranked first splits its power
// in two streams (fractions beta and 1-beta); decode order is stream-a of
// the split user, the other user, then stream-b.
struct RsmaPair {
    double r_split; // both streams of the split user, summed
    double r_other;
};
RsmaPair rsma_urllc_rates(const double* gains, int n_freq,
                          const double* embb_per_freq, double beta);

// Single-frequency stream rates behind rsma_urllc_rates, exposed for traces
// and algebraic identity checks.
struct RsmaStreamRates {
    double sinr_split_a, sinr_other, sinr_split_b;
    double r_split_a, r_other, r_split_b;
};
RsmaStreamRates rsma_stream_rates(double g_split, double g_other,
                                  double embb_power, double beta);

} // namespace slicesim

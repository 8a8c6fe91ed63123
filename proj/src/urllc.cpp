#include "slicesim/urllc.hpp"

#include <cmath>

namespace slicesim {

namespace {

// Frequency-averaged rate of user u with the given remaining set as
// interference. Interference sums run in ascending user index so the same
// inputs always produce the same floating-point result.
double step_rate(const double* gains, int n_users, int n_freq,
                 const double* embb_per_freq, const bool* remaining, int u) {
    double acc = 0.0;
    for (int f = 0; f < n_freq; ++f) {
        double interf = 0.0;
        for (int j = 0; j < n_users; ++j)
            if (remaining[j] && j != u) interf += gains[j * n_freq + f];
        double denom = 1.0 + interf;
        if (embb_per_freq) denom += embb_per_freq[f];
        acc += std::log2(1.0 + gains[u * n_freq + f] / denom);
    }
    return acc / n_freq;
}

// Shared greedy SIC walk; rates_out may be null when only the order matters.
void greedy_sic(const double* gains, int n_users, int n_freq,
                const double* embb_per_freq, int* order_out, double* rates_out) {
    bool remaining[64];
    for (int i = 0; i < n_users; ++i) remaining[i] = true;
    for (int pos = 0; pos < n_users; ++pos) {
        int best = -1;
        double best_rate = -1.0;
        for (int u = 0; u < n_users; ++u) {
            if (!remaining[u]) continue;
            double r = step_rate(gains, n_users, n_freq, embb_per_freq, remaining, u);
            if (r > best_rate) {
                best_rate = r;
                best = u;
            }
        }
        if (order_out) order_out[pos] = best;
        if (rates_out) rates_out[pos] = best_rate;
        remaining[best] = false;
    }
}

} // namespace

void urllc_decode_order(const double* gains, int n_users, int n_freq,
                        const double* embb_per_freq, int* order_out) {
    greedy_sic(gains, n_users, n_freq, embb_per_freq, order_out, nullptr);
}

void oma_urllc_rates(const double* gains, int n_users, int n_freq,
                     double* rates_out) {
    greedy_sic(gains, n_users, n_freq, nullptr, nullptr, rates_out);
}

void noma_urllc_rates(const double* gains, int n_users, int n_freq,
                      const double* embb_per_freq, double* rates_out) {
    greedy_sic(gains, n_users, n_freq, embb_per_freq, nullptr, rates_out);
}

RsmaStreamRates rsma_stream_rates(double g_split, double g_other,
                                  double embb_power, double beta) {
    RsmaStreamRates s;
    // Left-to-right sums mirror the two-user SIC denominators, so beta = 1
    // collapses to them exactly ((1-beta)*g adds literal 0.0).
    s.sinr_split_a = beta * g_split /
                     (1.0 + (1.0 - beta) * g_split + g_other + embb_power);
    s.sinr_other = g_other / (1.0 + (1.0 - beta) * g_split + embb_power);
    s.sinr_split_b = (1.0 - beta) * g_split / (1.0 + embb_power);
    s.r_split_a = std::log2(1.0 + s.sinr_split_a);
    s.r_other = std::log2(1.0 + s.sinr_other);
    s.r_split_b = std::log2(1.0 + s.sinr_split_b);
    return s;
}

RsmaPair rsma_urllc_rates(const double* gains, int n_freq,
                          const double* embb_per_freq, double beta) {
    int order[2];
    urllc_decode_order(gains, 2, n_freq, embb_per_freq, order);
    const double* gs = gains + order[0] * n_freq;
    const double* go = gains + order[1] * n_freq;
    double acc_split = 0.0, acc_other = 0.0;
    for (int f = 0; f < n_freq; ++f) {
        double e = embb_per_freq ? embb_per_freq[f] : 0.0;
        RsmaStreamRates s = rsma_stream_rates(gs[f], go[f], e, beta);
        acc_split += s.r_split_a + s.r_split_b;
        acc_other += s.r_other;
    }
    return {acc_split / n_freq, acc_other / n_freq};
}

} // namespace slicesim

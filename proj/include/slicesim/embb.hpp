#pragma once

namespace slicesim {

// Truncated channel-inversion policy for the broadband user. A device
// transmits only when its channel gain clears g_min and then inverts the
// channel so the received SNR is exactly the target. All SNRs linear,
// noise power 1.

// Smallest usable gain: silence probability equals eps_b under
// Exponential(gamma_b) fading.
double embb_min_gain(double gamma_b, double eps_b);

// Largest sustainable received-SNR target under the unit average power
// budget: gamma_b / E1(g_min / gamma_b).
double embb_max_target_snr(double gamma_b, double eps_b);

// Spectral efficiency on a dedicated frequency at the max target.
double embb_orth_rate(double gamma_b, double eps_b);

// Probability the device is active (gain above g_min), i.e. 1 - eps_b.
double embb_activity(double gamma_b, double eps_b);

} // namespace slicesim

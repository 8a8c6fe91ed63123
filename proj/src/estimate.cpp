#include "slicesim/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace slicesim {

namespace {
constexpr double Z95 = 1.959963984540054;
}

OutageEstimate wilson_estimate(uint64_t failures, uint64_t trials) {
    OutageEstimate e;
    e.failures = failures;
    e.trials = trials;
    if (trials == 0) return e; // p_hat 0, ci [0,1]
    double n = static_cast<double>(trials);
    double p = static_cast<double>(failures) / n;
    e.p_hat = p;
    double z2 = Z95 * Z95;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = Z95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    e.ci_low = std::max(0.0, center - half);
    e.ci_high = std::min(1.0, center + half);
    return e;
}

OutageEstimate mmtc_service_estimate(const MmtcStats& stats, double lambda_m) {
    OutageEstimate e;
    e.trials = stats.trials;
    e.failures = stats.sum_arrived - std::min(stats.sum_arrived, stats.sum_decoded);
    if (lambda_m <= 0.0) { // no arrivals: error undefined, reported as 0
        e.ci_high = 0.0;
        return e;
    }
    if (stats.trials == 0) return e;
    double n = static_cast<double>(stats.trials);
    double mean_d = static_cast<double>(stats.sum_decoded) / n;
    double p = 1.0 - mean_d / lambda_m;
    p = std::clamp(p, 0.0, 1.0);
    e.p_hat = p;
    // CLT interval on the decoded-count mean, mapped through 1 - m/lambda.
    double var_d = 0.0;
    if (stats.trials > 1) {
        double mean_sq = static_cast<double>(stats.sum_decoded_sq) / n;
        var_d = std::max(0.0, mean_sq - mean_d * mean_d) * n / (n - 1.0);
    }
    double se = std::sqrt(var_d / n) / lambda_m;
    e.ci_low = std::clamp(p - Z95 * se, 0.0, 1.0);
    e.ci_high = std::clamp(p + Z95 * se, 0.0, 1.0);
    return e;
}

OutageEstimate mmtc_embb_estimate(const MmtcStats& stats) {
    return wilson_estimate(stats.embb_failures, stats.embb_trials);
}

} // namespace slicesim

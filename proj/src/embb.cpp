#include "slicesim/embb.hpp"

#include <cmath>
#include <stdexcept>

#include "slicesim/special.hpp"

namespace slicesim {

double embb_min_gain(double gamma_b, double eps_b) {
    if (!(gamma_b > 0.0) || !(eps_b > 0.0) || !(eps_b < 1.0))
        throw std::domain_error("embb_min_gain: gamma_b > 0 and eps_b in (0,1) required");
    // gamma_b * ln(1/(1-eps_b)); log1p form keeps precision for small eps_b
    return -gamma_b * std::log1p(-eps_b);
}

double embb_max_target_snr(double gamma_b, double eps_b) {
    double g_min = embb_min_gain(gamma_b, eps_b);
    return gamma_b / exp_integral_e1(g_min / gamma_b);
}

double embb_orth_rate(double gamma_b, double eps_b) {
    return std::log2(1.0 + embb_max_target_snr(gamma_b, eps_b));
}

double embb_activity(double gamma_b, double eps_b) {
    return std::exp(-embb_min_gain(gamma_b, eps_b) / gamma_b);
}

} // namespace slicesim

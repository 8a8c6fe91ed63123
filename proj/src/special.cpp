#include "slicesim/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slicesim {

namespace {
constexpr double EULER_GAMMA = 0.5772156649015329;
// Both expansions run to machine precision: the continued fraction converges
// slowest at x = 1 (~92 iterations), where a looser step-based stop would
// leave an unconverged tail far larger than the last step.
constexpr double REL_TOL = 2.220446049250313e-16;
} // namespace

double exp_integral_e1(double x) {
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1: requires x > 0");

    if (x < 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        double sum = 0.0;
        double term = 1.0; // x^k / k! carried incrementally
        for (int k = 1; k <= 64; ++k) {
            term *= x / k;
            double add = (k % 2 == 1 ? term : -term) / k;
            sum += add;
            if (std::fabs(add) < REL_TOL * std::fabs(sum)) break;
        }
        return -EULER_GAMMA - std::log(x) + sum;
    }

    // E1(x) = exp(-x) / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))), Lentz form.
    const double tiny = std::numeric_limits<double>::min() * 1e10;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < REL_TOL) break;
    }
    return h * std::exp(-x);
}

} // namespace slicesim

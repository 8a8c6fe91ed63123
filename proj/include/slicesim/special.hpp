#pragma once

namespace slicesim {

// Exponential integral E1(x) = integral_x^inf exp(-t)/t dt, x > 0.
// Equals the upper incomplete gamma function at zero order.
// Power series below 1, modified-Lentz continued fraction from 1 up;
// both iterated to machine precision.
double exp_integral_e1(double x);

} // namespace slicesim

#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "slicesim/special.hpp"

using slicesim::exp_integral_e1;

namespace {

// Reference values computed independently at 50-digit precision and rounded
// to the nearest double.
struct E1Case {
    double x, e1;
};
constexpr E1Case kTable[] = {
    {1e-06, 13.23829589306249},
    {1e-05, 10.935719800043696},
    {0.0001, 8.633224704574705},
    {0.001, 6.331539364136149},
    {0.0010005003335835335, 6.331039655761167},
    {0.01, 4.037929576538114},
    {0.05, 2.467898488509974},
    {0.1, 1.8229239584193906},
    {0.25, 1.0442826344437381},
    {0.5, 0.5597735947761608},
    {0.9, 0.26018393932599965},
    {0.999999, 0.21938430227532935},
    {1.0, 0.21938393439552029},
    {1.000001, 0.219383566516447},
    {1.5, 0.10001958240663265},
    {2.0, 0.04890051070806112},
    {3.0, 0.013048381094197037},
    {5.0, 0.0011482955912753257},
    {8.0, 3.76656228439249e-05},
    {13.0, 1.6218662188014328e-07},
    {20.0, 9.835525290649882e-11},
    {30.0, 3.0215520106888124e-15},
    {50.0, 3.783264029550459e-24},
};

} // namespace

TEST_CASE("E1 matches the high-precision table") {
    for (const E1Case& c : kTable) {
        double got = exp_integral_e1(c.x);
        CHECK(got == doctest::Approx(c.e1).epsilon(1e-12));
    }
}

TEST_CASE("E1 at 1 (series/continued-fraction boundary)") {
    CHECK(exp_integral_e1(1.0) == doctest::Approx(0.21938393439552029).epsilon(1e-14));
    // Continuity across the method switch: the three closest table points
    // around 1 are monotone decreasing.
    double lo = exp_integral_e1(0.999999);
    double mid = exp_integral_e1(1.0);
    double hi = exp_integral_e1(1.000001);
    CHECK(lo > mid);
    CHECK(mid > hi);
}

TEST_CASE("E1 deep tail stays finite and positive") {
    double v = exp_integral_e1(700.0);
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(1.406518766234033e-307).epsilon(1e-9));
}

TEST_CASE("E1 rejects non-positive arguments") {
    CHECK_THROWS_AS(exp_integral_e1(0.0), std::domain_error);
    CHECK_THROWS_AS(exp_integral_e1(-1.0), std::domain_error);
}

TEST_CASE("E1 satisfies the recurrence-style bounds") {
    // 0.5 log(1 + 2/x) < e^x E1(x) < log(1 + 1/x), a standard sandwich.
    for (double x : {0.25, 1.0, 4.0, 20.0}) {
        double scaled = std::exp(x) * exp_integral_e1(x);
        CHECK(scaled > 0.5 * std::log1p(2.0 / x));
        CHECK(scaled < std::log1p(1.0 / x));
    }
}

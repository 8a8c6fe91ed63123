#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <utility>

#include "slicesim/estimate.hpp"
#include "slicesim/rng.hpp"

using namespace slicesim;

namespace {

void check_rel(double actual, double expected, double tol) {
    if (expected == 0.0) {
        CHECK(actual == 0.0);
        return;
    }
    CHECK(std::abs(actual - expected) <= tol * std::abs(expected));
}

} // namespace

TEST_CASE("wilson interval matches frozen reference values") {
    struct Row {
        uint64_t f, n;
        double p, lo, hi;
    };
    // Frozen from an independent rendering of the score interval at
    // z = 1.959963984540054.
    const Row rows[] = {
        {0, 1000, 0.0, 2.168404344971009e-19, 0.0038267584855551234},
        {3, 1000, 0.003, 0.0010207838811386186, 0.008783014053503173},
        {1000, 1000, 1.0, 0.996173241514445, 1.0},
        {17, 123456, 0.00013770088128564023, 8.59794393847968e-05,
         0.00022052880146140522},
        {5, 50, 0.1, 0.04347576493189041, 0.21360231437479654},
    };
    for (const Row& r : rows) {
        CAPTURE(r.f);
        CAPTURE(r.n);
        OutageEstimate e = wilson_estimate(r.f, r.n);
        CHECK(e.failures == r.f);
        CHECK(e.trials == r.n);
        check_rel(e.p_hat, r.p, 1e-12);
        check_rel(e.ci_low, r.lo, 1e-12);
        check_rel(e.ci_high, r.hi, 1e-12);
    }
}

TEST_CASE("wilson interval on an empty batch spans everything") {
    OutageEstimate e = wilson_estimate(0, 0);
    CHECK(e.p_hat == 0.0);
    CHECK(e.ci_low == 0.0);
    CHECK(e.ci_high == 1.0);
}

TEST_CASE("outage totals do not depend on the worker count") {
    auto fn = [](uint64_t, RandomStream& rs) {
        return std::pair<uint64_t, uint64_t>{rs.next_double() < 0.3 ? 1 : 0, 1};
    };
    OutageEstimate one = estimate_outage(123, 0, 20000, 1, fn);
    OutageEstimate four = estimate_outage(123, 0, 20000, 4, fn);
    CHECK(one.failures == four.failures);
    CHECK(one.trials == four.trials);
    CHECK(one.p_hat == four.p_hat);
    CHECK(one.ci_low == four.ci_low);
    CHECK(one.ci_high == four.ci_high);
    // 4 sigma around the true proportion.
    CHECK(std::abs(one.p_hat - 0.3) < 4.0 * std::sqrt(0.3 * 0.7 / 20000.0));
    CHECK(one.ci_low < 0.3);
    CHECK(one.ci_high > 0.3);
}

TEST_CASE("trial outcomes depend only on the trial index") {
    auto fn = [](uint64_t, RandomStream& rs) {
        return std::pair<uint64_t, uint64_t>{rs.next_double() < 0.1 ? 1 : 0, 1};
    };
    OutageEstimate whole = estimate_outage(7, 0, 1000, 2, fn);
    OutageEstimate head = estimate_outage(7, 0, 600, 3, fn);
    OutageEstimate tail = estimate_outage(7, 600, 400, 1, fn);
    CHECK(head.failures + tail.failures == whole.failures);
    CHECK(head.trials + tail.trials == whole.trials);
}

TEST_CASE("multi-unit trials count every unit") {
    auto fn = [](uint64_t, RandomStream& rs) {
        uint64_t f = (rs.next_double() < 0.2 ? 1 : 0) + (rs.next_double() < 0.2 ? 1 : 0);
        return std::pair<uint64_t, uint64_t>{f, 2};
    };
    OutageEstimate e = estimate_outage(5, 0, 5000, 2, fn);
    CHECK(e.trials == 10000);
    CHECK(std::abs(e.p_hat - 0.2) < 4.0 * std::sqrt(0.2 * 0.8 / 10000.0));
}

TEST_CASE("wilson coverage stays near nominal") {
    // Exact coverage at n = 1e4 is 0.963 / 0.950 / 0.949 for these rates;
    // 925 of 1000 sits more than 3 sigma below the weakest of them.
    const double probs[] = {1e-3, 1e-2, 0.1};
    const int n_draws = 10000, n_exp = 1000;
    for (int pi = 0; pi < 3; ++pi) {
        double p = probs[pi];
        int covered = 0;
        for (int e = 0; e < n_exp; ++e) {
            RandomStream rs(777, static_cast<uint64_t>(pi) * n_exp + e);
            uint64_t fails = 0;
            for (int k = 0; k < n_draws; ++k)
                if (rs.next_double() < p) ++fails;
            OutageEstimate est = wilson_estimate(fails, n_draws);
            if (est.ci_low <= p && p <= est.ci_high) ++covered;
        }
        CAPTURE(p);
        CHECK(covered >= 925);
    }
}

TEST_CASE("service error estimate matches frozen reference values") {
    // decoded counts {3,5,4,4} against lambda = 5.
    MmtcStats s;
    s.trials = 4;
    s.sum_decoded = 16;
    s.sum_decoded_sq = 66;
    OutageEstimate e = mmtc_service_estimate(s, 5.0);
    check_rel(e.p_hat, 0.19999999999999996, 1e-12);
    check_rel(e.ci_low, 0.03996961078815628, 1e-12);
    check_rel(e.ci_high, 0.3600303892118436, 1e-12);

    // decoded mean above lambda: the point estimate clamps at zero but the
    // upper end keeps its spread.
    MmtcStats c;
    c.trials = 3;
    c.sum_decoded = 20;
    c.sum_decoded_sq = 134;
    OutageEstimate ec = mmtc_service_estimate(c, 5.0);
    CHECK(ec.p_hat == 0.0);
    CHECK(ec.ci_low == 0.0);
    check_rel(ec.ci_high, 0.13066426563600128, 1e-12);
}

TEST_CASE("service error conventions at the edges") {
    MmtcStats s;
    s.trials = 10;
    s.sum_decoded = 7;
    s.sum_decoded_sq = 7;
    OutageEstimate zero_rate = mmtc_service_estimate(s, 0.0);
    CHECK(zero_rate.p_hat == 0.0);
    CHECK(zero_rate.ci_low == 0.0);
    CHECK(zero_rate.ci_high == 0.0);

    MmtcStats empty;
    OutageEstimate no_trials = mmtc_service_estimate(empty, 2.0);
    CHECK(no_trials.p_hat == 0.0);
    CHECK(no_trials.ci_low == 0.0);
    CHECK(no_trials.ci_high == 1.0);

    MmtcStats lost;
    lost.trials = 2;
    lost.sum_arrived = 10;
    lost.sum_decoded = 7;
    lost.sum_decoded_sq = 29;
    CHECK(mmtc_service_estimate(lost, 5.0).failures == 3);
}

TEST_CASE("broadband side of a batch reuses the wilson interval") {
    MmtcStats s;
    s.embb_failures = 5;
    s.embb_trials = 50;
    OutageEstimate a = mmtc_embb_estimate(s);
    OutageEstimate b = wilson_estimate(5, 50);
    CHECK(a.p_hat == b.p_hat);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);
}

TEST_CASE("mmtc batches accumulate identically across workers") {
    auto fn = [](uint64_t t, RandomStream& rs) {
        MmtcTrialOut o;
        o.arrived = static_cast<uint32_t>(rs.next_poisson(2.5));
        o.decoded = o.arrived / 2;
        o.embb_ok = rs.next_double() < 0.9;
        o.embb_counted = (t % 2) == 0;
        return o;
    };
    MmtcStats one = run_mmtc_trials(99, 0, 1000, 1, fn);
    MmtcStats four = run_mmtc_trials(99, 0, 1000, 4, fn);
    CHECK(one.trials == four.trials);
    CHECK(one.sum_decoded == four.sum_decoded);
    CHECK(one.sum_decoded_sq == four.sum_decoded_sq);
    CHECK(one.sum_arrived == four.sum_arrived);
    CHECK(one.embb_failures == four.embb_failures);
    CHECK(one.embb_trials == four.embb_trials);
    CHECK(one.trials == 1000);
    CHECK(one.embb_trials == 500);

    MmtcStats head = run_mmtc_trials(99, 0, 600, 2, fn);
    MmtcStats tail = run_mmtc_trials(99, 600, 400, 3, fn);
    head.add(tail);
    CHECK(head.sum_decoded == one.sum_decoded);
    CHECK(head.embb_failures == one.embb_failures);
}

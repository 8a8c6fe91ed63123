#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "slicesim/rng.hpp"

namespace slicesim {

// Binomial proportion with a 95% Wilson score interval.
struct OutageEstimate {
    uint64_t failures = 0; // failed units
    uint64_t trials = 0;   // total units
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
};

OutageEstimate wilson_estimate(uint64_t failures, uint64_t trials);

// Runs body(begin, end) over [first, first+count) split across workers.
// Results must be written to per-trial slots or merged through commutative
// integer sums; then the outcome cannot depend on the worker count.
template <class Body>
void parallel_trials(uint64_t first, uint64_t count, int workers, Body&& body) {
    if (workers <= 1 || count < 2) {
        if (count > 0) body(first, first + count);
        return;
    }
    uint64_t n_threads = std::min<uint64_t>(workers, count);
    uint64_t chunk = count / n_threads;
    uint64_t extra = count % n_threads;
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    uint64_t begin = first;
    for (uint64_t t = 0; t < n_threads; ++t) {
        uint64_t len = chunk + (t < extra ? 1 : 0);
        uint64_t end = begin + len;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

// Bernoulli-style estimator. fn(trial, stream) returns (failed, units) for
// that trial; totals accumulate as integers. first_trial lets a caller
// extend an earlier batch under the same seed.
template <class TrialFn>
OutageEstimate estimate_outage(uint64_t seed, uint64_t first_trial,
                               uint64_t n_trials, int workers, TrialFn&& fn) {
    int lanes = workers > 1 ? workers : 1;
    std::vector<uint64_t> fail_by_lane(lanes, 0), unit_by_lane(lanes, 0);
    std::atomic<int> lane_idx{0};
    parallel_trials(first_trial, n_trials, workers,
                    [&](uint64_t begin, uint64_t end) {
                        int lane = lane_idx.fetch_add(1);
                        uint64_t f = 0, u = 0;
                        for (uint64_t t = begin; t < end; ++t) {
                            RandomStream rs(seed, t);
                            auto [tf, tu] = fn(t, rs);
                            f += tf;
                            u += tu;
                        }
                        fail_by_lane[lane] += f;
                        unit_by_lane[lane] += u;
                    });
    uint64_t failures = 0, units = 0;
    for (int i = 0; i < lanes; ++i) {
        failures += fail_by_lane[i];
        units += unit_by_lane[i];
    }
    return wilson_estimate(failures, units);
}

// Machine-type service statistics: integer sums of decoded counts and their
// squares (for the CLT interval on 1 - mean/lambda) plus broadband failures.
struct MmtcStats {
    uint64_t trials = 0;
    uint64_t sum_decoded = 0;
    uint64_t sum_decoded_sq = 0;
    uint64_t sum_arrived = 0;
    uint64_t embb_failures = 0;
    uint64_t embb_trials = 0;

    void add(const MmtcStats& o) {
        trials += o.trials;
        sum_decoded += o.sum_decoded;
        sum_decoded_sq += o.sum_decoded_sq;
        sum_arrived += o.sum_arrived;
        embb_failures += o.embb_failures;
        embb_trials += o.embb_trials;
    }
};

struct MmtcTrialOut {
    uint32_t arrived = 0;
    uint32_t decoded = 0;
    bool embb_ok = false;
    bool embb_counted = true; // false when no broadband user shares the band
};

template <class TrialFn>
MmtcStats run_mmtc_trials(uint64_t seed, uint64_t first_trial, uint64_t n_trials,
                          int workers, TrialFn&& fn) {
    int lanes = workers > 1 ? workers : 1;
    std::vector<MmtcStats> by_lane(lanes);
    std::atomic<int> lane_idx{0};
    parallel_trials(first_trial, n_trials, workers,
                    [&](uint64_t begin, uint64_t end) {
                        int lane = lane_idx.fetch_add(1);
                        MmtcStats s;
                        for (uint64_t t = begin; t < end; ++t) {
                            RandomStream rs(seed, t);
                            MmtcTrialOut o = fn(t, rs);
                            ++s.trials;
                            s.sum_decoded += o.decoded;
                            s.sum_decoded_sq +=
                                static_cast<uint64_t>(o.decoded) * o.decoded;
                            s.sum_arrived += o.arrived;
                            if (o.embb_counted) {
                                ++s.embb_trials;
                                if (!o.embb_ok) ++s.embb_failures;
                            }
                        }
                        by_lane[lane].add(s);
                    });
    MmtcStats total;
    for (auto& s : by_lane) total.add(s);
    return total;
}

// Service error 1 - E[decoded]/lambda as a plug-in with a clamped normal
// interval; lambda = 0 reports 0 by convention.
OutageEstimate mmtc_service_estimate(const MmtcStats& stats, double lambda_m);

// Broadband side of the same batch (Wilson).
OutageEstimate mmtc_embb_estimate(const MmtcStats& stats);

} // namespace slicesim

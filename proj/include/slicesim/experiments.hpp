#pragma once

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicesim/config.hpp"
#include "slicesim/search.hpp"

namespace slicesim {

// One output row. NaN doubles and zero trials render as empty CSV fields.
struct FrontierPoint {
    double x = std::nan("");
    double y = std::nan("");
    double best_beta = std::nan("");
    double best_gtar = std::nan("");
    double p_hat_b = std::nan("");
    double p_hat_service = std::nan("");
    double ci_low = std::nan("");
    double ci_high = std::nan("");
    uint64_t trials = 0;
};

struct RunResult {
    std::vector<FrontierPoint> points;
    std::vector<std::string> notes; // emitted as comment lines after the header
    bool any_feasible = false;
};

// Latency slice: boundary of (broadband sum rate, latency sum rate).
RunResult run_region_urllc(const ScenarioConfig& cfg, std::ostream* progress = nullptr);

// Latency slice at fixed broadband rate, swept over the split fraction.
RunResult run_beta_sweep_urllc(const ScenarioConfig& cfg, std::ostream* progress = nullptr);

// Machine-type slice: (broadband rate, max arrival rate) frontier.
RunResult run_frontier_mmtc(const ScenarioConfig& cfg, std::ostream* progress = nullptr);

// Machine-type slice at fixed broadband rate, swept over the split fraction.
RunResult run_beta_sweep_mmtc(const ScenarioConfig& cfg, std::ostream* progress = nullptr);

// Single decode walk on explicit gains (no sampling), rendered as text.
struct TraceInputs {
    std::vector<double> gains_urllc; // one gain per latency user, single frequency
    std::vector<double> gains_mmtc;
    double g_tar = 0.0;
    double beta = -1.0;
};
std::string run_single_trial_trace(const ScenarioConfig& cfg, const TraceInputs& in);

void write_csv(std::ostream& os, const ScenarioConfig& cfg, const RunResult& r);
void write_json(std::ostream& os, const ScenarioConfig& cfg, const RunResult& r);

// Cell searches behind the runners, exposed for targeted checks.
// Latency cell: one batch of achieved rates, then a CI-gated bisection for
// the largest common per-user target meeting eps_u (and eps_b when the
// broadband user shares the band).
SearchResult urllc_max_rate(const ScenarioConfig& cfg, Scheme scheme, double beta,
                            double g_tar, int n_freq, uint64_t point_seed,
                            std::ostream* progress = nullptr,
                            const std::string& tag = "");

// Machine-type cell: largest arrival rate meeting eps_m (and eps_b when the
// broadband user shares the band). r_m_eff is the per-device rate after any
// time-share scaling; pow2_r_b = 2^r_b.
SearchResult mmtc_max_lambda(const ScenarioConfig& cfg, Scheme scheme, double beta,
                             double g_tar, double r_m_eff, double pow2_r_b,
                             uint64_t point_seed, std::ostream* progress = nullptr,
                             const std::string& tag = "");

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> geomspace(double lo, double hi, int n);

std::string format_double(double x); // shortest round-trip decimal

} // namespace slicesim

#pragma once

#include <vector>

#include "slicesim/estimate.hpp"

namespace slicesim {

// Three-way comparison of an estimate against a target error rate. Callers
// escalate trial counts on `uncertain` up to a budget cap, then fall back to
// the point estimate.
enum class Verdict { accept, reject, uncertain };

inline Verdict ci_verdict(const OutageEstimate& e, double eps_target) {
    if (e.ci_high <= eps_target) return Verdict::accept;
    if (e.ci_low > eps_target) return Verdict::reject;
    return Verdict::uncertain;
}

struct SearchResult {
    double argmax = 0.0;
    bool feasible = false;
    OutageEstimate service; // governing estimate at argmax
    OutageEstimate embb;    // broadband estimate at argmax (trials 0 if n/a)
};

struct ProbeOutcome {
    bool ok = false;
    OutageEstimate service;
    OutageEstimate embb;
};

// Largest x in [lo, hi] the probe accepts, assuming acceptance is monotone
// (feasible below, infeasible above). Feasible upper bracket short-circuits;
// infeasible lower bracket reports argmax 0 with feasible = false.
template <class Probe>
SearchResult bisect_max(Probe&& probe, double lo, double hi, double tol) {
    SearchResult r;
    ProbeOutcome top = probe(hi);
    if (top.ok) {
        r.argmax = hi;
        r.feasible = true;
        r.service = top.service;
        r.embb = top.embb;
        return r;
    }
    ProbeOutcome bottom = probe(lo);
    if (!bottom.ok) {
        r.argmax = 0.0;
        r.feasible = false;
        r.service = bottom.service;
        r.embb = bottom.embb;
        return r;
    }
    double best = lo;
    ProbeOutcome at_best = bottom;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        ProbeOutcome po = probe(mid);
        if (po.ok) {
            lo = mid;
            best = mid;
            at_best = po;
        } else {
            hi = mid;
        }
    }
    r.argmax = best;
    r.feasible = true;
    r.service = at_best.service;
    r.embb = at_best.embb;
    return r;
}

struct BestCell {
    double beta = 0.0;
    double g_tar = 0.0;
    SearchResult result;
    bool any_feasible = false;
};

// Exhaustive maximization of SearchResult.argmax over the grid; cells are
// visited beta-major ascending and only strict improvements move the best,
// so ties resolve to the lowest (beta, g_tar).
template <class Objective>
BestCell optimize_grid(const std::vector<double>& beta_grid,
                       const std::vector<double>& gtar_grid, Objective&& obj) {
    BestCell best;
    for (double beta : beta_grid) {
        for (double g_tar : gtar_grid) {
            SearchResult r = obj(beta, g_tar);
            if (!r.feasible) continue;
            if (!best.any_feasible || r.argmax > best.result.argmax) {
                best.any_feasible = true;
                best.beta = beta;
                best.g_tar = g_tar;
                best.result = r;
            }
        }
    }
    return best;
}

} // namespace slicesim

#include "slicesim/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "slicesim/channel.hpp"
#include "slicesim/embb.hpp"
#include "slicesim/estimate.hpp"
#include "slicesim/mmtc.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/urllc.hpp"

namespace slicesim {

namespace {

void log_probe(std::ostream* os, const std::string& tag, const char* kind, double probe,
               const OutageEstimate& e) {
    if (!os) return;
    *os << "# " << tag << ' ' << kind << '=' << format_double(probe)
        << " p_hat=" << format_double(e.p_hat)
        << " ci=[" << format_double(e.ci_low) << ',' << format_double(e.ci_high) << ']'
        << " trials=" << e.trials << '\n';
}

// Achieved per-user rates for a block of trials, written by trial index so the
// result is independent of how trials are split across workers.
struct RateBatch {
    Scheme scheme;
    double beta = 1.0;
    double g_tar = 0.0;
    int n_users = 0;
    int n_freq = 0;
    double gamma_u = 0.0;
    bool embb_in_band = false;
    bool embb_always_active = true;
    double a_b = 1.0; // broadband activity probability when sampled
    uint64_t seed = 0;
    int workers = 1;

    std::vector<double> unit_rates; // sorted ascending across all trials x users
    std::vector<double> min_rates;  // sorted ascending, one per trial
    uint64_t trials = 0;

    void extend(uint64_t new_total) {
        if (new_total <= trials) return;
        const uint64_t lo = trials;
        unit_rates.resize(new_total * static_cast<uint64_t>(n_users));
        min_rates.resize(new_total);
        double* units = unit_rates.data();
        double* mins = min_rates.data();
        parallel_trials(lo, new_total - lo, workers, [&](uint64_t b, uint64_t e) {
            std::vector<double> g(static_cast<size_t>(n_users) * n_freq);
            std::vector<double> embb(n_freq, embb_in_band ? g_tar : 0.0);
            std::vector<double> rates(n_users);
            for (uint64_t t = b; t < e; ++t) {
                RandomStream rs(seed, t);
                if (embb_in_band && !embb_always_active)
                    for (int f = 0; f < n_freq; ++f)
                        embb[f] = rs.next_double() < a_b ? g_tar : 0.0;
                fill_exponential(rs, gamma_u, g.data(), static_cast<int>(g.size()));
                if (scheme == Scheme::rsma) {
                    RsmaPair p = rsma_urllc_rates(g.data(), n_freq, embb.data(), beta);
                    rates[0] = p.r_split;
                    rates[1] = p.r_other;
                } else if (embb_in_band) {
                    noma_urllc_rates(g.data(), n_users, n_freq, embb.data(), rates.data());
                } else {
                    oma_urllc_rates(g.data(), n_users, n_freq, rates.data());
                }
                double mn = rates[0];
                for (int u = 0; u < n_users; ++u) {
                    units[t * n_users + u] = rates[u];
                    mn = std::min(mn, rates[u]);
                }
                mins[t] = mn;
            }
        });
        trials = new_total;
        std::sort(unit_rates.begin(), unit_rates.end());
        std::sort(min_rates.begin(), min_rates.end());
    }

    // Pr(per-user rate < target): count below via binary search on the pool.
    OutageEstimate user_outage(double target) const {
        auto it = std::lower_bound(unit_rates.begin(), unit_rates.end(), target);
        return wilson_estimate(static_cast<uint64_t>(it - unit_rates.begin()),
                               unit_rates.size());
    }

    // Pr(any user rate < target), used for the shared-band broadband check
    // where one latency failure stalls the whole frame.
    OutageEstimate min_outage(double target) const {
        auto it = std::lower_bound(min_rates.begin(), min_rates.end(), target);
        return wilson_estimate(static_cast<uint64_t>(it - min_rates.begin()), trials);
    }
};

} // namespace

SearchResult urllc_max_rate(const ScenarioConfig& cfg, Scheme scheme, double beta,
                            double g_tar, int n_freq, uint64_t point_seed,
                            std::ostream* progress, const std::string& tag) {
    RateBatch batch;
    batch.scheme = scheme;
    batch.beta = beta;
    batch.g_tar = g_tar;
    batch.n_users = cfg.n_urllc;
    batch.n_freq = n_freq;
    batch.gamma_u = cfg.gamma_u();
    batch.embb_in_band = scheme != Scheme::oma;
    batch.embb_always_active = cfg.embb_always_active;
    batch.a_b = embb_activity(cfg.gamma_b(), cfg.eps_b);
    batch.seed = point_seed;
    batch.workers = cfg.effective_workers();

    const uint64_t base = cfg.effective_trials();
    const uint64_t cap = base * static_cast<uint64_t>(cfg.escalation_cap);

    // Escalate the shared pool until both constraints give a clean verdict or
    // the cap is hit, then fall back to the point estimate.
    auto probe = [&](double rate) -> ProbeOutcome {
        if (batch.trials < base) batch.extend(base);
        for (;;) {
            OutageEstimate su = batch.user_outage(rate);
            OutageEstimate sb{0, 0, 0.0, 0.0, 0.0};
            Verdict vu = ci_verdict(su, cfg.eps_u);
            Verdict vb = Verdict::accept;
            if (batch.embb_in_band) {
                sb = batch.min_outage(rate);
                vb = ci_verdict(sb, cfg.eps_b);
            }
            log_probe(progress, tag, "rate", rate, su);
            if (vu == Verdict::reject || vb == Verdict::reject) return {false, su, sb};
            if (vu == Verdict::accept && vb == Verdict::accept) return {true, su, sb};
            if (batch.trials >= cap)
                return {su.p_hat <= cfg.eps_u && (!batch.embb_in_band || sb.p_hat <= cfg.eps_b),
                        su, sb};
            batch.extend(std::min(cap, batch.trials * 2));
        }
    };

    return bisect_max(probe, 0.0, cfg.rate_bracket_max, cfg.tol_rate);
}

namespace {

struct MmtcCell {
    Scheme scheme;
    double g_tar = 0.0;
    double beta = 1.0;
    double thr_m = 0.0;    // 2^r_m_eff - 1
    double pow2_r_b = 1.0; // 2^r_b
    bool retry = true;
    double gamma_m = 0.0;
    bool embb_in_band = false;
    bool embb_always_active = true;
    double a_b = 1.0;
    uint64_t seed = 0;
    int workers = 1;

    MmtcStats run(double lambda, uint64_t lo, uint64_t n) const {
        return run_mmtc_trials(seed, lo, n, workers, [&](uint64_t t, RandomStream& rs) {
            // Draw order is fixed: broadband activity, device count, gains.
            bool active = true;
            if (embb_in_band && !embb_always_active) active = rs.next_double() < a_b;
            thread_local std::vector<double> g;
            uint64_t n_m = rs.next_poisson(lambda);
            g.resize(n_m);
            fill_exponential(rs, gamma_m, g.data(), static_cast<int>(n_m));
            MmtcTrialOut out;
            out.arrived = static_cast<uint32_t>(n_m);
            if (!embb_in_band) {
                out.decoded = static_cast<uint32_t>(oma_mmtc_decode(g, thr_m));
                out.embb_counted = false;
            } else if (!active) {
                out.decoded = static_cast<uint32_t>(oma_mmtc_decode(g, thr_m));
                out.embb_counted = true;
                out.embb_ok = false; // silence is a broadband outage
            } else {
                MmtcOutcome o = scheme == Scheme::rsma
                                    ? rsma_mmtc_decode(g, g_tar, beta, thr_m, pow2_r_b, retry)
                                    : noma_mmtc_decode(g, g_tar, thr_m, pow2_r_b, retry);
                out.decoded = static_cast<uint32_t>(o.d_m);
                out.embb_counted = true;
                out.embb_ok = o.d_b;
            }
            (void)t;
            return out;
        });
    }
};

} // namespace

SearchResult mmtc_max_lambda(const ScenarioConfig& cfg, Scheme scheme, double beta,
                             double g_tar, double r_m_eff, double pow2_r_b,
                             uint64_t point_seed, std::ostream* progress,
                             const std::string& tag) {
    MmtcCell cell;
    cell.scheme = scheme;
    cell.g_tar = g_tar;
    cell.beta = beta;
    cell.thr_m = std::exp2(r_m_eff) - 1.0;
    cell.pow2_r_b = pow2_r_b;
    cell.retry = cfg.retry_after_cancellation;
    cell.gamma_m = cfg.gamma_m();
    cell.embb_in_band = scheme != Scheme::oma;
    cell.embb_always_active = cfg.embb_always_active;
    cell.a_b = embb_activity(cfg.gamma_b(), cfg.eps_b);
    cell.seed = point_seed;
    cell.workers = cfg.effective_workers();

    const uint64_t base = cfg.effective_trials();
    const uint64_t cap = base * static_cast<uint64_t>(cfg.escalation_cap);

    auto probe = [&](double lambda) -> ProbeOutcome {
        MmtcStats stats = cell.run(lambda, 0, base);
        for (;;) {
            OutageEstimate ss = mmtc_service_estimate(stats, lambda);
            OutageEstimate sb{0, 0, 0.0, 0.0, 0.0};
            Verdict vs = ci_verdict(ss, cfg.eps_m);
            Verdict vb = Verdict::accept;
            if (cell.embb_in_band) {
                sb = mmtc_embb_estimate(stats);
                vb = ci_verdict(sb, cfg.eps_b);
            }
            log_probe(progress, tag, "lambda", lambda, ss);
            if (vs == Verdict::reject || vb == Verdict::reject) return {false, ss, sb};
            if (vs == Verdict::accept && vb == Verdict::accept) return {true, ss, sb};
            if (stats.trials >= cap)
                return {ss.p_hat <= cfg.eps_m && (!cell.embb_in_band || sb.p_hat <= cfg.eps_b),
                        ss, sb};
            uint64_t add = std::min(cap - stats.trials, stats.trials);
            stats.add(cell.run(lambda, stats.trials, add));
        }
    };

    return bisect_max(probe, 0.0, cfg.lambda_bracket_max, cfg.tol_lambda);
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n <= 1) return {lo};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = hi;
    return v;
}

std::vector<double> geomspace(double lo, double hi, int n) {
    if (n <= 1 || hi <= lo) return {lo};
    if (lo <= 0.0) throw std::invalid_argument("geomspace requires lo > 0");
    std::vector<double> v(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo * std::exp(step * static_cast<double>(i));
    v.front() = lo;
    v.back() = hi;
    return v;
}

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, p);
}

} // namespace slicesim

#include "slicesim/experiments.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "slicesim/embb.hpp"
#include "slicesim/mmtc.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/urllc.hpp"
#include "slicesim/version.hpp"

namespace slicesim {

namespace {

FrontierPoint make_point(double x, double y, const SearchResult& r) {
    FrontierPoint p;
    p.x = x;
    p.y = y;
    if (r.service.trials > 0) {
        p.p_hat_service = r.service.p_hat;
        p.ci_low = r.service.ci_low;
        p.ci_high = r.service.ci_high;
        p.trials = r.service.trials;
    }
    if (r.embb.trials > 0) p.p_hat_b = r.embb.p_hat;
    return p;
}

std::string fmt(double x) { return format_double(x); }

void require_rsma(const ScenarioConfig& cfg) {
    if (cfg.scheme != Scheme::rsma)
        throw ConfigError("beta sweeps require scheme=rsma (beta has no effect otherwise)");
}

} // namespace

RunResult run_region_urllc(const ScenarioConfig& cfg, std::ostream* progress) {
    RunResult out;
    const double r_orth = embb_orth_rate(cfg.gamma_b(), cfg.eps_b);
    const double g_max = embb_max_target_snr(cfg.gamma_b(), cfg.eps_b);

    if (cfg.scheme == Scheme::oma) {
        // Split allocation: give the latency slice f_u of f_total frequencies,
        // broadband keeps the rest at its orthogonal rate.
        out.notes.push_back("# x: broadband sum rate on its dedicated band; y: latency sum rate");
        for (int f_u = 0; f_u <= cfg.f_total; ++f_u) {
            double x = (cfg.f_total - f_u) * r_orth;
            if (f_u == 0) {
                FrontierPoint p;
                p.x = x;
                p.y = 0.0;
                out.points.push_back(p);
                out.any_feasible = true;
                continue;
            }
            SearchResult r =
                urllc_max_rate(cfg, Scheme::oma, 1.0, 0.0, f_u,
                               derive_seed(cfg.seed, static_cast<uint64_t>(f_u)), progress,
                               "f_urllc=" + std::to_string(f_u));
            out.points.push_back(make_point(x, cfg.n_urllc * r.argmax, r));
            out.any_feasible = out.any_feasible || r.feasible;
        }
        return out;
    }

    // Shared band: sweep the broadband sum-rate target; the per-frequency
    // inversion target follows from spreading it evenly.
    out.notes.push_back("# x: broadband sum rate across the shared band; y: latency sum rate");
    auto grid = linspace(0.0, cfg.f_total * r_orth, cfg.rb_sum_grid_size);
    for (size_t i = 0; i < grid.size(); ++i) {
        double rb_sum = grid[i];
        double g_tar = std::min(std::exp2(rb_sum / cfg.f_total) - 1.0, g_max);
        uint64_t pseed = derive_seed(cfg.seed, i);
        std::string tag = "r_b_sum=" + fmt(rb_sum);
        if (cfg.scheme == Scheme::noma) {
            SearchResult r =
                urllc_max_rate(cfg, Scheme::noma, 1.0, g_tar, cfg.f_total, pseed, progress, tag);
            FrontierPoint p = make_point(rb_sum, cfg.n_urllc * r.argmax, r);
            p.best_gtar = g_tar;
            out.points.push_back(p);
            out.any_feasible = out.any_feasible || r.feasible;
        } else {
            std::vector<double> one_gtar{g_tar};
            BestCell best = optimize_grid(
                cfg.effective_beta_grid(), one_gtar, [&](double beta, double gt) {
                    return urllc_max_rate(cfg, Scheme::rsma, beta, gt, cfg.f_total, pseed,
                                          progress, tag + " beta=" + fmt(beta));
                });
            FrontierPoint p = make_point(rb_sum, cfg.n_urllc * best.result.argmax, best.result);
            if (!best.any_feasible) p.y = 0.0;
            p.best_beta = best.beta;
            p.best_gtar = g_tar;
            out.points.push_back(p);
            out.any_feasible = out.any_feasible || best.any_feasible;
        }
    }
    return out;
}

RunResult run_beta_sweep_urllc(const ScenarioConfig& cfg, std::ostream* progress) {
    require_rsma(cfg);
    RunResult out;
    const double r_orth = embb_orth_rate(cfg.gamma_b(), cfg.eps_b);
    const double g_max = embb_max_target_snr(cfg.gamma_b(), cfg.eps_b);
    const double rb_sum = cfg.r_b_sum >= 0.0
                              ? cfg.r_b_sum
                              : (cfg.f_total - cfg.f_urllc) * r_orth;
    const double g_tar = std::min(std::exp2(rb_sum / cfg.f_total) - 1.0, g_max);
    const uint64_t pseed = derive_seed(cfg.seed, 0);

    out.notes.push_back("# broadband sum rate fixed at " + fmt(rb_sum) +
                        "; shared-band inversion target g_tar=" + fmt(g_tar));
    out.notes.push_back("# first two rows (empty x): dedicated-band baseline on " +
                        std::to_string(cfg.f_urllc) +
                        " frequencies, then single-stream full-band baseline; "
                        "remaining rows sweep the split fraction in x");

    SearchResult ro = urllc_max_rate(cfg, Scheme::oma, 1.0, 0.0, cfg.f_urllc, pseed, progress,
                                     "baseline-dedicated");
    out.points.push_back(make_point(std::nan(""), cfg.n_urllc * ro.argmax, ro));
    out.any_feasible = out.any_feasible || ro.feasible;

    SearchResult rn = urllc_max_rate(cfg, Scheme::noma, 1.0, g_tar, cfg.f_total, pseed, progress,
                                     "baseline-single-stream");
    FrontierPoint pn = make_point(std::nan(""), cfg.n_urllc * rn.argmax, rn);
    pn.best_gtar = g_tar;
    out.points.push_back(pn);
    out.any_feasible = out.any_feasible || rn.feasible;

    for (double beta : cfg.effective_beta_grid()) {
        SearchResult r = urllc_max_rate(cfg, Scheme::rsma, beta, g_tar, cfg.f_total, pseed,
                                        progress, "beta=" + fmt(beta));
        FrontierPoint p = make_point(beta, cfg.n_urllc * r.argmax, r);
        p.best_gtar = g_tar;
        out.points.push_back(p);
        out.any_feasible = out.any_feasible || r.feasible;
    }
    return out;
}

RunResult run_frontier_mmtc(const ScenarioConfig& cfg, std::ostream* progress) {
    RunResult out;
    const double r_orth = embb_orth_rate(cfg.gamma_b(), cfg.eps_b);
    const double g_max = embb_max_target_snr(cfg.gamma_b(), cfg.eps_b);

    if (cfg.scheme == Scheme::oma) {
        // Time sharing on the single frequency: broadband takes a fraction
        // alpha of the frame, devices squeeze r_m into the remainder.
        out.notes.push_back("# x: broadband rate under time sharing; y: max arrival rate");
        auto alphas = linspace(0.0, 1.0, cfg.alpha_grid_size);
        for (size_t j = 0; j < alphas.size(); ++j) {
            double alpha = alphas[j];
            double x = alpha * r_orth;
            if (alpha >= 1.0) {
                FrontierPoint p;
                p.x = x;
                p.y = 0.0;
                out.points.push_back(p);
                out.any_feasible = true;
                continue;
            }
            SearchResult r = mmtc_max_lambda(cfg, Scheme::oma, 1.0, 0.0,
                                             cfg.r_m / (1.0 - alpha), 1.0,
                                             derive_seed(cfg.seed, j), progress,
                                             "alpha=" + fmt(alpha));
            out.points.push_back(make_point(x, r.feasible ? r.argmax : 0.0, r));
            out.any_feasible = out.any_feasible || r.feasible;
        }
        return out;
    }

    out.notes.push_back("# x: broadband rate on the shared frequency; y: max arrival rate");
    const std::vector<double> betas =
        cfg.scheme == Scheme::rsma ? cfg.effective_beta_grid() : std::vector<double>{1.0};
    auto rb_grid = linspace(0.0, r_orth, cfg.rb_grid_size);
    for (size_t i = 0; i < rb_grid.size(); ++i) {
        double rb = rb_grid[i];
        double pow2_rb = std::exp2(rb);
        double t_b = std::min(pow2_rb - 1.0, g_max);
        std::vector<double> gtars =
            rb == 0.0 ? std::vector<double>{0.0} : geomspace(t_b, g_max, cfg.gtar_grid_size);
        uint64_t pseed = derive_seed(cfg.seed, i);
        std::string tag = "r_b=" + fmt(rb);
        BestCell best = optimize_grid(betas, gtars, [&](double beta, double gt) {
            std::string cell_tag = tag + " g_tar=" + fmt(gt);
            if (cfg.scheme == Scheme::rsma) cell_tag += " beta=" + fmt(beta);
            return mmtc_max_lambda(cfg, cfg.scheme, beta, gt, cfg.r_m, pow2_rb, pseed, progress,
                                   cell_tag);
        });
        FrontierPoint p = make_point(rb, best.result.argmax, best.result);
        if (best.any_feasible) {
            if (cfg.scheme == Scheme::rsma) p.best_beta = best.beta;
            p.best_gtar = best.g_tar;
        } else {
            p.y = 0.0;
        }
        out.points.push_back(p);
        out.any_feasible = out.any_feasible || best.any_feasible;
    }
    return out;
}

RunResult run_beta_sweep_mmtc(const ScenarioConfig& cfg, std::ostream* progress) {
    require_rsma(cfg);
    if (cfg.r_b < 0.0)
        throw ConfigError("r_b must be set for the arrival-rate beta sweep");
    RunResult out;
    const double r_orth = embb_orth_rate(cfg.gamma_b(), cfg.eps_b);
    const double g_max = embb_max_target_snr(cfg.gamma_b(), cfg.eps_b);
    const double pow2_rb = std::exp2(cfg.r_b);
    const double t_b = pow2_rb - 1.0;
    if (t_b > g_max)
        throw ConfigError("r_b exceeds what the broadband power policy can sustain");
    const std::vector<double> gtars =
        cfg.r_b == 0.0 ? std::vector<double>{0.0}
                       : geomspace(std::min(t_b, g_max), g_max, cfg.gtar_grid_size);
    const uint64_t pseed = derive_seed(cfg.seed, 0);

    out.notes.push_back("# broadband rate fixed at r_b=" + fmt(cfg.r_b));
    out.notes.push_back("# first two rows (empty x): time-sharing baseline, then "
                        "single-stream baseline with its own g_tar search; remaining "
                        "rows sweep the split fraction in x");

    // Time-sharing baseline: broadband needs alpha = r_b / r_orth of the frame.
    {
        double alpha = cfg.r_b / r_orth;
        FrontierPoint p;
        if (alpha < 1.0) {
            SearchResult r =
                mmtc_max_lambda(cfg, Scheme::oma, 1.0, 0.0, cfg.r_m / (1.0 - alpha), 1.0,
                                pseed, progress, "baseline-time-share");
            p = make_point(std::nan(""), r.feasible ? r.argmax : 0.0, r);
            out.any_feasible = out.any_feasible || r.feasible;
        } else {
            p.y = 0.0;
        }
        out.points.push_back(p);
    }

    std::vector<double> one_beta{1.0};
    BestCell bn = optimize_grid(one_beta, gtars, [&](double, double gt) {
        return mmtc_max_lambda(cfg, Scheme::noma, 1.0, gt, cfg.r_m, pow2_rb, pseed, progress,
                               "baseline-single-stream g_tar=" + fmt(gt));
    });
    {
        FrontierPoint p = make_point(std::nan(""), bn.result.argmax, bn.result);
        if (bn.any_feasible)
            p.best_gtar = bn.g_tar;
        else
            p.y = 0.0;
        out.points.push_back(p);
        out.any_feasible = out.any_feasible || bn.any_feasible;
    }

    for (double beta : cfg.effective_beta_grid()) {
        std::vector<double> one{beta};
        BestCell bc = optimize_grid(one, gtars, [&](double b, double gt) {
            return mmtc_max_lambda(cfg, Scheme::rsma, b, gt, cfg.r_m, pow2_rb, pseed, progress,
                                   "beta=" + fmt(b) + " g_tar=" + fmt(gt));
        });
        FrontierPoint p = make_point(beta, bc.result.argmax, bc.result);
        if (bc.any_feasible)
            p.best_gtar = bc.g_tar;
        else
            p.y = 0.0;
        out.points.push_back(p);
        out.any_feasible = out.any_feasible || bc.any_feasible;
    }
    return out;
}

namespace {

void trace_urllc(std::ostringstream& os, const ScenarioConfig& cfg, const TraceInputs& in) {
    const int n = static_cast<int>(in.gains_urllc.size());
    if (n != cfg.n_urllc)
        throw ConfigError("trace needs one latency gain per user (n_urllc=" +
                          std::to_string(cfg.n_urllc) + ")");
    const double* g = in.gains_urllc.data();
    const bool shared = cfg.scheme != Scheme::oma;
    const double embb = shared ? in.g_tar : 0.0;

    os << "scenario=" << scenario_name(cfg.scenario) << " scheme=" << scheme_name(cfg.scheme);
    if (shared) os << " g_tar=" << fmt(in.g_tar);
    if (cfg.scheme == Scheme::rsma) os << " beta=" << fmt(in.beta);
    os << " frequencies=1\n";
    for (int u = 0; u < n; ++u) os << "gain U" << u + 1 << "=" << fmt(g[u]) << '\n';

    std::vector<int> order(n);
    urllc_decode_order(g, n, 1, shared ? &embb : nullptr, order.data());

    if (cfg.scheme == Scheme::rsma) {
        if (in.beta < 0.0 || in.beta > 1.0)
            throw ConfigError("trace with scheme=rsma needs beta in [0,1]");
        int split = order[0], other = order[1];
        RsmaStreamRates s = rsma_stream_rates(g[split], g[other], embb, in.beta);
        std::string a = "U" + std::to_string(split + 1) + "a";
        std::string b_id = "U" + std::to_string(split + 1) + "b";
        std::string o_id = "U" + std::to_string(other + 1);
        os << "step=1 stream=" << a << " sinr=" << fmt(s.sinr_split_a)
           << " rate=" << fmt(s.r_split_a) << " cancelled=\n";
        os << "step=2 stream=" << o_id << " sinr=" << fmt(s.sinr_other)
           << " rate=" << fmt(s.r_other) << " cancelled=" << a << '\n';
        os << "step=3 stream=" << b_id << " sinr=" << fmt(s.sinr_split_b)
           << " rate=" << fmt(s.r_split_b) << " cancelled=" << a << ',' << o_id << '\n';
        os << "rate U" << split + 1 << "=" << fmt(s.r_split_a + s.r_split_b) << '\n';
        os << "rate U" << other + 1 << "=" << fmt(s.r_other) << '\n';
        return;
    }

    std::string cancelled;
    for (int k = 0; k < n; ++k) {
        double interf = embb;
        for (int j = k + 1; j < n; ++j) interf += g[order[j]];
        double sinr = g[order[k]] / (1.0 + interf);
        os << "step=" << k + 1 << " stream=U" << order[k] + 1 << " sinr=" << fmt(sinr)
           << " rate=" << fmt(std::log2(1.0 + sinr)) << " cancelled=" << cancelled << '\n';
        if (k) cancelled += ',';
        cancelled += "U" + std::to_string(order[k] + 1);
    }
    for (int u = 0; u < n; ++u) {
        double interf = embb;
        int pos = 0;
        while (order[pos] != u) ++pos;
        for (int j = pos + 1; j < n; ++j) interf += g[order[j]];
        os << "rate U" << u + 1 << "=" << fmt(std::log2(1.0 + g[u] / (1.0 + interf))) << '\n';
    }
}

void trace_mmtc(std::ostringstream& os, const ScenarioConfig& cfg, const TraceInputs& in) {
    std::vector<double> g = in.gains_mmtc;
    const double thr_m = std::exp2(cfg.r_m) - 1.0;
    const bool shared = cfg.scheme != Scheme::oma;
    double pow2_rb = 1.0;
    if (shared) {
        if (cfg.r_b < 0.0) throw ConfigError("trace with a shared band needs r_b set");
        pow2_rb = std::exp2(cfg.r_b);
    }

    os << "scenario=" << scenario_name(cfg.scenario) << " scheme=" << scheme_name(cfg.scheme);
    if (shared) os << " g_tar=" << fmt(in.g_tar) << " r_b=" << fmt(cfg.r_b);
    if (cfg.scheme == Scheme::rsma) os << " beta=" << fmt(in.beta);
    os << " r_m=" << fmt(cfg.r_m) << " devices=" << g.size()
       << " retry=" << (cfg.retry_after_cancellation ? 1 : 0) << '\n';
    os << "gains=";
    for (size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << fmt(g[i]);
    os << '\n';

    DecodeTrace trace;
    MmtcOutcome o;
    if (cfg.scheme == Scheme::oma) {
        o.d_m = oma_mmtc_decode(g, thr_m, &trace);
        o.d_b = false;
    } else if (cfg.scheme == Scheme::noma) {
        o = noma_mmtc_decode(g, in.g_tar, thr_m, pow2_rb, cfg.retry_after_cancellation, &trace);
    } else {
        if (in.beta < 0.0 || in.beta > 1.0)
            throw ConfigError("trace with scheme=rsma needs beta in [0,1]");
        o = rsma_mmtc_decode(g, in.g_tar, in.beta, thr_m, pow2_rb,
                             cfg.retry_after_cancellation, &trace);
    }

    for (size_t k = 0; k < trace.size(); ++k) {
        const DecodeStep& s = trace[k];
        os << "step=" << k + 1 << " stream=" << s.stream << " sinr=" << fmt(s.sinr)
           << " rate=" << fmt(s.rate) << " success=" << (s.success ? 1 : 0)
           << " cancelled=" << s.cancelled << '\n';
    }
    os << "decoded_devices=" << o.d_m;
    if (shared) os << " broadband_ok=" << (o.d_b ? 1 : 0);
    os << '\n';
}

} // namespace

std::string run_single_trial_trace(const ScenarioConfig& cfg, const TraceInputs& in) {
    std::ostringstream os;
    if (cfg.scenario == Scenario::embb_urllc)
        trace_urllc(os, cfg, in);
    else
        trace_mmtc(os, cfg, in);
    return os.str();
}

namespace {

std::string hex16(uint64_t v) {
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[v & 0xf];
        v >>= 4;
    }
    return std::string(buf, 16);
}

std::string csv_field(double x) { return std::isnan(x) ? std::string() : format_double(x); }

} // namespace

void write_csv(std::ostream& os, const ScenarioConfig& cfg, const RunResult& r) {
    os << "# slice-sim v" << kVersion << ", config_hash=" << hex16(config_hash(cfg))
       << ", seed=" << cfg.seed << '\n';
    std::istringstream lines(canonical_config(cfg));
    for (std::string line; std::getline(lines, line);) os << "# " << line << '\n';
    for (const auto& note : r.notes) os << note << '\n';
    os << "x,y,best_beta,best_gtar,p_hat_b,p_hat_service,ci_low,ci_high,trials\n";
    for (const FrontierPoint& p : r.points) {
        os << csv_field(p.x) << ',' << csv_field(p.y) << ',' << csv_field(p.best_beta) << ','
           << csv_field(p.best_gtar) << ',' << csv_field(p.p_hat_b) << ','
           << csv_field(p.p_hat_service) << ',' << csv_field(p.ci_low) << ','
           << csv_field(p.ci_high) << ',';
        if (p.trials > 0) os << p.trials;
        os << '\n';
    }
}

void write_json(std::ostream& os, const ScenarioConfig& cfg, const RunResult& r) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config_hash"] = hex16(config_hash(cfg));
    j["seed"] = cfg.seed;
    nlohmann::json jc = nlohmann::json::object();
    std::istringstream lines(canonical_config(cfg));
    for (std::string line; std::getline(lines, line);) {
        auto eq = line.find('=');
        if (eq != std::string::npos) jc[line.substr(0, eq)] = line.substr(eq + 1);
    }
    j["config"] = jc;
    j["notes"] = r.notes;
    j["any_feasible"] = r.any_feasible;
    auto put = [](nlohmann::json& o, const char* key, double v) {
        if (std::isnan(v))
            o[key] = nullptr;
        else
            o[key] = v;
    };
    nlohmann::json pts = nlohmann::json::array();
    for (const FrontierPoint& p : r.points) {
        nlohmann::json o = nlohmann::json::object();
        put(o, "x", p.x);
        put(o, "y", p.y);
        put(o, "best_beta", p.best_beta);
        put(o, "best_gtar", p.best_gtar);
        put(o, "p_hat_b", p.p_hat_b);
        put(o, "p_hat_service", p.p_hat_service);
        put(o, "ci_low", p.ci_low);
        put(o, "ci_high", p.ci_high);
        if (p.trials > 0)
            o["trials"] = p.trials;
        else
            o["trials"] = nullptr;
        pts.push_back(o);
    }
    j["points"] = pts;
    os << j.dump(2) << '\n';
}

} // namespace slicesim

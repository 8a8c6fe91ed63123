#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "slicesim/channel.hpp"
#include "slicesim/embb.hpp"
#include "slicesim/experiments.hpp"
#include "slicesim/mmtc.hpp"
#include "slicesim/rng.hpp"
#include "slicesim/special.hpp"
#include "slicesim/urllc.hpp"
#include "slicesim/version.hpp"

namespace py = pybind11;
using namespace slicesim;

namespace {

// Overrides arrive as python values; route everything through the string
// parser so the accepted spellings match config files and --set exactly.
ScenarioConfig config_from_kwargs(const py::kwargs& kw) {
    ScenarioConfig cfg;
    for (auto item : kw) {
        std::string key = py::cast<std::string>(item.first);
        py::handle v = item.second;
        std::string value;
        if (py::isinstance<py::bool_>(v))
            value = py::cast<bool>(v) ? "1" : "0";
        else
            value = py::cast<std::string>(py::str(v));
        apply_override(cfg, key, value);
    }
    finalize_config(cfg);
    validate_config(cfg);
    return cfg;
}

RunResult dispatch(const std::string& kind, const ScenarioConfig& cfg_in) {
    ScenarioConfig cfg = cfg_in;
    if (kind == "region-urllc") {
        cfg.scenario = Scenario::embb_urllc;
        return run_region_urllc(cfg);
    }
    if (kind == "beta-sweep-urllc") {
        cfg.scenario = Scenario::embb_urllc;
        return run_beta_sweep_urllc(cfg);
    }
    if (kind == "frontier-mmtc") {
        cfg.scenario = Scenario::embb_mmtc;
        return run_frontier_mmtc(cfg);
    }
    if (kind == "beta-sweep-mmtc") {
        cfg.scenario = Scenario::embb_mmtc;
        return run_beta_sweep_mmtc(cfg);
    }
    throw ConfigError("unknown run kind '" + kind +
                      "' (expected region-urllc, beta-sweep-urllc, frontier-mmtc, "
                      "beta-sweep-mmtc)");
}

py::object opt(double v) {
    if (std::isnan(v)) return py::none();
    return py::float_(v);
}

py::dict point_dict(const FrontierPoint& p) {
    py::dict d;
    d["x"] = opt(p.x);
    d["y"] = opt(p.y);
    d["best_beta"] = opt(p.best_beta);
    d["best_gtar"] = opt(p.best_gtar);
    d["p_hat_b"] = opt(p.p_hat_b);
    d["p_hat_service"] = opt(p.p_hat_service);
    d["ci_low"] = opt(p.ci_low);
    d["ci_high"] = opt(p.ci_high);
    d["trials"] = p.trials > 0 ? py::object(py::int_(p.trials)) : py::object(py::none());
    return d;
}

py::list step_list(const DecodeTrace& trace) {
    py::list steps;
    for (const DecodeStep& s : trace) {
        py::dict d;
        d["stream"] = s.stream;
        d["sinr"] = s.sinr;
        d["rate"] = s.rate;
        d["success"] = s.success;
        d["cancelled"] = s.cancelled;
        steps.append(d);
    }
    return steps;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Monte Carlo evaluation of uplink slicing schemes";
    m.attr("__version__") = kVersion;

    m.def("e1", &exp_integral_e1, py::arg("x"),
          "Exponential integral E1(x) for x > 0");
    m.def("db_to_linear", &db_to_linear, py::arg("db"));
    m.def("min_gain", &embb_min_gain, py::arg("gamma_b"), py::arg("eps_b"),
          "Smallest usable broadband gain under truncated inversion");
    m.def("max_target_snr", &embb_max_target_snr, py::arg("gamma_b"), py::arg("eps_b"),
          "Largest sustainable received-SNR target");
    m.def("orth_rate", &embb_orth_rate, py::arg("gamma_b"), py::arg("eps_b"),
          "Broadband spectral efficiency on a dedicated frequency");

    m.def(
        "urllc_rates",
        [](const std::vector<double>& gains, int n_freq, const std::string& scheme,
           double g_tar, double beta) {
            if (n_freq <= 0 || gains.size() % static_cast<size_t>(n_freq) != 0)
                throw ConfigError("gains must hold n_users blocks of n_freq entries");
            int n_users = static_cast<int>(gains.size()) / n_freq;
            std::vector<double> embb(n_freq, g_tar);
            if (scheme == "oma") {
                std::vector<double> rates(n_users);
                oma_urllc_rates(gains.data(), n_users, n_freq, rates.data());
                return rates;
            }
            if (scheme == "noma") {
                std::vector<double> rates(n_users);
                noma_urllc_rates(gains.data(), n_users, n_freq, embb.data(), rates.data());
                return rates;
            }
            if (scheme == "rsma") {
                RsmaPair p = rsma_urllc_rates(gains.data(), n_freq, embb.data(), beta);
                return std::vector<double>{p.r_split, p.r_other};
            }
            throw ConfigError("scheme must be oma, noma or rsma");
        },
        py::arg("gains"), py::arg("n_freq") = 1, py::arg("scheme") = "oma",
        py::arg("g_tar") = 0.0, py::arg("beta") = 1.0,
        "Achieved latency-slice rates by decode position (user-major gains)");

    m.def(
        "mmtc_decode",
        [](std::vector<double> gains, const std::string& scheme, double g_tar, double r_m,
           double r_b, double beta, bool retry, bool want_trace) {
            double thr_m = std::exp2(r_m) - 1.0;
            double pow2_rb = std::exp2(r_b);
            DecodeTrace trace;
            DecodeTrace* tp = want_trace ? &trace : nullptr;
            MmtcOutcome o;
            if (scheme == "oma") {
                o.d_m = oma_mmtc_decode(gains, thr_m, tp);
            } else if (scheme == "noma") {
                o = noma_mmtc_decode(gains, g_tar, thr_m, pow2_rb, retry, tp);
            } else if (scheme == "rsma") {
                o = rsma_mmtc_decode(gains, g_tar, beta, thr_m, pow2_rb, retry, tp);
            } else {
                throw ConfigError("scheme must be oma, noma or rsma");
            }
            py::dict d;
            d["decoded"] = o.d_m;
            d["broadband_ok"] = o.d_b;
            if (want_trace) d["steps"] = step_list(trace);
            return d;
        },
        py::arg("gains"), py::arg("scheme") = "oma", py::arg("g_tar") = 0.0,
        py::arg("r_m") = 0.04, py::arg("r_b") = 0.0, py::arg("beta") = 1.0,
        py::arg("retry") = true, py::arg("trace") = false,
        "One machine-type SIC walk on explicit gains");

    m.def(
        "run",
        [](const std::string& kind, const py::kwargs& kw) {
            ScenarioConfig cfg = config_from_kwargs(kw);
            RunResult r = dispatch(kind, cfg);
            py::dict d;
            d["any_feasible"] = r.any_feasible;
            d["notes"] = r.notes;
            py::list pts;
            for (const FrontierPoint& p : r.points) pts.append(point_dict(p));
            d["points"] = pts;
            return d;
        },
        py::arg("kind"),
        "Run one experiment; config keys as keyword arguments");

    m.def(
        "run_csv",
        [](const std::string& kind, const py::kwargs& kw) {
            ScenarioConfig cfg = config_from_kwargs(kw);
            RunResult r = dispatch(kind, cfg);
            std::ostringstream os;
            write_csv(os, cfg, r);
            return os.str();
        },
        py::arg("kind"),
        "Run one experiment and return its CSV text");

    py::register_exception<ConfigError>(m, "ConfigError");
}

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "slicesim/experiments.hpp"
#include "slicesim/version.hpp"

namespace {

using slicesim::ConfigError;
using slicesim::RunResult;
using slicesim::ScenarioConfig;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    uint64_t seed = 0;
    uint64_t trials = 0;
    int workers = -1;
    bool fast = false;
    bool no_retry = false;
    std::string out_path;
    bool json = false;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--config", a.config_path, "key=value config file");
    sub->add_option("--set", a.sets, "override one config key (key=value, repeatable)")
        ->take_all();
    sub->add_option("--seed", a.seed, "master seed");
    sub->add_option("--trials", a.trials, "Monte Carlo trials per probe");
    sub->add_option("--workers", a.workers, "worker threads (0 = hardware)");
    sub->add_flag("--fast", a.fast, "reduced-accuracy preview run");
    sub->add_flag("--no-retry", a.no_retry, "skip the device retry after a cancellation");
    sub->add_option("--out", a.out_path, "write results here instead of stdout");
    sub->add_flag("--json", a.json, "emit JSON instead of CSV");
}

ScenarioConfig build_config(const CLI::App* sub, const CommonArgs& a) {
    ScenarioConfig cfg;
    if (!a.config_path.empty()) cfg = slicesim::parse_config_file(a.config_path);
    for (const std::string& kv : a.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        slicesim::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    // Explicit flags win over the file and --set.
    if (sub->count("--seed")) cfg.seed = a.seed;
    if (sub->count("--trials")) cfg.trials = a.trials;
    if (sub->count("--workers")) cfg.workers = a.workers;
    if (a.fast) cfg.fast = true;
    if (a.no_retry) cfg.retry_after_cancellation = false;
    slicesim::finalize_config(cfg);
    slicesim::validate_config(cfg);
    return cfg;
}

int emit(const ScenarioConfig& cfg, const RunResult& res, const CommonArgs& a) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!a.out_path.empty()) {
        file.open(a.out_path);
        if (!file) {
            std::cerr << "error: cannot open " << a.out_path << " for writing\n";
            return 2;
        }
        os = &file;
    }
    if (a.json)
        slicesim::write_json(*os, cfg, res);
    else
        slicesim::write_csv(*os, cfg, res);
    os->flush();
    return res.any_feasible ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("slice-sim ") + slicesim::kVersion +
                 ": Monte Carlo evaluation of uplink slicing schemes"};
    app.require_subcommand(1);

    CommonArgs region_a, sweep_u_a, frontier_a, sweep_m_a, trace_a;
    auto* region = app.add_subcommand(
        "region-urllc", "broadband/latency rate-pair boundary for one scheme");
    add_common(region, region_a);
    auto* sweep_u = app.add_subcommand(
        "beta-sweep-urllc", "latency sum rate vs split fraction at fixed broadband rate");
    add_common(sweep_u, sweep_u_a);
    auto* frontier = app.add_subcommand(
        "frontier-mmtc", "max arrival rate vs broadband rate for one scheme");
    add_common(frontier, frontier_a);
    auto* sweep_m = app.add_subcommand(
        "beta-sweep-mmtc", "max arrival rate vs split fraction at fixed broadband rate");
    add_common(sweep_m, sweep_m_a);

    auto* trace = app.add_subcommand("trace", "single decode walk on explicit channel gains");
    add_common(trace, trace_a);
    std::vector<double> gains, gains_db;
    double gtar = 0.0, beta = -1.0;
    trace->add_option("--gains", gains, "channel gains, linear")->delimiter(',');
    trace->add_option("--gains-db", gains_db, "channel gains, dB")->delimiter(',');
    trace->add_option("--gtar", gtar, "broadband received-SNR target, linear");
    trace->add_option("--beta", beta, "split fraction for scheme=rsma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (region->parsed()) {
            ScenarioConfig cfg = build_config(region, region_a);
            cfg.scenario = slicesim::Scenario::embb_urllc;
            return emit(cfg, slicesim::run_region_urllc(cfg, &std::cerr), region_a);
        }
        if (sweep_u->parsed()) {
            ScenarioConfig cfg = build_config(sweep_u, sweep_u_a);
            cfg.scenario = slicesim::Scenario::embb_urllc;
            return emit(cfg, slicesim::run_beta_sweep_urllc(cfg, &std::cerr), sweep_u_a);
        }
        if (frontier->parsed()) {
            ScenarioConfig cfg = build_config(frontier, frontier_a);
            cfg.scenario = slicesim::Scenario::embb_mmtc;
            return emit(cfg, slicesim::run_frontier_mmtc(cfg, &std::cerr), frontier_a);
        }
        if (sweep_m->parsed()) {
            ScenarioConfig cfg = build_config(sweep_m, sweep_m_a);
            cfg.scenario = slicesim::Scenario::embb_mmtc;
            return emit(cfg, slicesim::run_beta_sweep_mmtc(cfg, &std::cerr), sweep_m_a);
        }
        // trace
        ScenarioConfig cfg = build_config(trace, trace_a);
        if (!gains.empty() && !gains_db.empty())
            throw ConfigError("pass --gains or --gains-db, not both");
        if (gains.empty() && gains_db.empty())
            throw ConfigError("trace needs --gains or --gains-db");
        std::vector<double> lin = gains;
        if (!gains_db.empty()) {
            lin.resize(gains_db.size());
            for (size_t i = 0; i < gains_db.size(); ++i)
                lin[i] = slicesim::db_to_linear(gains_db[i]);
        }
        slicesim::TraceInputs in;
        in.g_tar = gtar;
        in.beta = beta;
        if (cfg.scenario == slicesim::Scenario::embb_urllc)
            in.gains_urllc = lin;
        else
            in.gains_mmtc = lin;
        std::string text = slicesim::run_single_trial_trace(cfg, in);
        if (!trace_a.out_path.empty()) {
            std::ofstream f(trace_a.out_path);
            if (!f) {
                std::cerr << "error: cannot open " << trace_a.out_path << " for writing\n";
                return 2;
            }
            f << text;
        } else {
            std::cout << text;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicesim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scenario { embb_urllc, embb_mmtc };
enum class Scheme { oma, noma, rsma };

// All external knobs. Averages enter in dB and are converted exactly once
// (gamma_* accessors); everything downstream is linear with noise power 1.
struct ScenarioConfig {
    Scenario scenario = Scenario::embb_urllc;
    Scheme scheme = Scheme::rsma;

    double gamma_b_db = 10.0;
    double gamma_u_db = 20.0;
    double gamma_m_db = 5.0;

    int f_total = 10;
    int f_urllc = 5; // dedicated latency band in the split allocation
    int n_urllc = 2;

    double eps_b = 1e-3;
    double eps_u = 1e-5;
    double eps_m = 0.1;

    double r_m = 0.04;
    double r_b = -1.0;     // fixed broadband rate for the arrival-rate beta sweep
    double r_b_sum = -1.0; // fixed broadband sum rate for the latency beta sweep;
                           // < 0 derives the split-allocation value

    std::vector<double> beta_grid; // empty -> uniform beta_grid_size points
    int beta_grid_size = 21;
    int gtar_grid_size = 20;
    int alpha_grid_size = 201;
    int rb_grid_size = 17;
    int rb_sum_grid_size = 17;

    uint64_t trials = 0; // 0 -> scenario default (see effective_trials)
    uint64_t seed = 1;
    int workers = 0; // 0 -> hardware concurrency
    bool retry_after_cancellation = true;
    bool embb_always_active = true;
    bool fast = false;

    double tol_rate = 1e-3;
    double tol_lambda = 0.25;
    double rate_bracket_max = 15.0;
    double lambda_bracket_max = 200.0;
    int escalation_cap = 4; // max multiple of the base trial count

    double gamma_b() const;
    double gamma_u() const;
    double gamma_m() const;
    uint64_t effective_trials() const;
    int effective_workers() const;
    std::vector<double> effective_beta_grid() const;
};

double db_to_linear(double db);

// key=value lines, '#' comments, blank lines ignored.
ScenarioConfig parse_config_file(const std::string& path);
void apply_override(ScenarioConfig& cfg, const std::string& key,
                    const std::string& value);

// Applies --fast substitutions (relaxed latency target). Call after all
// overrides and before validate/hash so the hash covers effective values.
void finalize_config(ScenarioConfig& cfg);

// Throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig& cfg);

// Sorted key=value serialization of everything that affects results
// (workers and output options excluded), and its FNV-1a hash.
std::string canonical_config(const ScenarioConfig& cfg);
uint64_t config_hash(const ScenarioConfig& cfg);

std::string scheme_name(Scheme s);
std::string scenario_name(Scenario s);

} // namespace slicesim

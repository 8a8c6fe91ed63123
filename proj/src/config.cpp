#include "slicesim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace slicesim {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double ScenarioConfig::gamma_b() const { return db_to_linear(gamma_b_db); }
double ScenarioConfig::gamma_u() const { return db_to_linear(gamma_u_db); }
double ScenarioConfig::gamma_m() const { return db_to_linear(gamma_m_db); }

uint64_t ScenarioConfig::effective_trials() const {
    if (trials > 0) return trials;
    if (scenario == Scenario::embb_urllc) return fast ? 1000000 : 10000000;
    return fast ? 20000 : 100000;
}

int ScenarioConfig::effective_workers() const {
    if (workers > 0) return workers;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::vector<double> ScenarioConfig::effective_beta_grid() const {
    if (!beta_grid.empty()) return beta_grid;
    std::vector<double> g(beta_grid_size);
    for (int i = 0; i < beta_grid_size; ++i)
        g[i] = static_cast<double>(i) / (beta_grid_size - 1);
    return g;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "': not a number: '" + v + "'");
    }
}

int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "': not an integer: '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError("config field '" + key + "': not a boolean: '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(key, item));
    }
    if (out.empty())
        throw ConfigError("config field '" + key + "': empty list");
    return out;
}

std::string fmt_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

void apply_override(ScenarioConfig& cfg, const std::string& raw_key,
                    const std::string& raw_value) {
    std::string key = trim(raw_key), v = trim(raw_value);
    if (key == "scenario") {
        if (v == "embb-urllc") cfg.scenario = Scenario::embb_urllc;
        else if (v == "embb-mmtc") cfg.scenario = Scenario::embb_mmtc;
        else throw ConfigError("config field 'scenario': unknown value '" + v +
                               "' (embb-urllc | embb-mmtc)");
    } else if (key == "scheme") {
        if (v == "oma") cfg.scheme = Scheme::oma;
        else if (v == "noma") cfg.scheme = Scheme::noma;
        else if (v == "rsma") cfg.scheme = Scheme::rsma;
        else throw ConfigError("config field 'scheme': unknown value '" + v +
                               "' (oma | noma | rsma)");
    } else if (key == "gamma_b_db") cfg.gamma_b_db = parse_double(key, v);
    else if (key == "gamma_u_db") cfg.gamma_u_db = parse_double(key, v);
    else if (key == "gamma_m_db") cfg.gamma_m_db = parse_double(key, v);
    else if (key == "f_total") cfg.f_total = static_cast<int>(parse_int(key, v));
    else if (key == "f_urllc") cfg.f_urllc = static_cast<int>(parse_int(key, v));
    else if (key == "n_urllc") cfg.n_urllc = static_cast<int>(parse_int(key, v));
    else if (key == "eps_b") cfg.eps_b = parse_double(key, v);
    else if (key == "eps_u") cfg.eps_u = parse_double(key, v);
    else if (key == "eps_m") cfg.eps_m = parse_double(key, v);
    else if (key == "r_m") cfg.r_m = parse_double(key, v);
    else if (key == "r_b") cfg.r_b = parse_double(key, v);
    else if (key == "r_b_sum") cfg.r_b_sum = parse_double(key, v);
    else if (key == "beta_grid") cfg.beta_grid = parse_list(key, v);
    else if (key == "beta_grid_size") cfg.beta_grid_size = static_cast<int>(parse_int(key, v));
    else if (key == "gtar_grid_size") cfg.gtar_grid_size = static_cast<int>(parse_int(key, v));
    else if (key == "alpha_grid_size") cfg.alpha_grid_size = static_cast<int>(parse_int(key, v));
    else if (key == "rb_grid_size") cfg.rb_grid_size = static_cast<int>(parse_int(key, v));
    else if (key == "rb_sum_grid_size") cfg.rb_sum_grid_size = static_cast<int>(parse_int(key, v));
    else if (key == "trials") cfg.trials = static_cast<uint64_t>(parse_int(key, v));
    else if (key == "seed") cfg.seed = static_cast<uint64_t>(parse_int(key, v));
    else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, v));
    else if (key == "retry_after_cancellation") cfg.retry_after_cancellation = parse_bool(key, v);
    else if (key == "embb_always_active") cfg.embb_always_active = parse_bool(key, v);
    else if (key == "fast") cfg.fast = parse_bool(key, v);
    else if (key == "tol_rate") cfg.tol_rate = parse_double(key, v);
    else if (key == "tol_lambda") cfg.tol_lambda = parse_double(key, v);
    else if (key == "rate_bracket_max") cfg.rate_bracket_max = parse_double(key, v);
    else if (key == "lambda_bracket_max") cfg.lambda_bracket_max = parse_double(key, v);
    else if (key == "escalation_cap") cfg.escalation_cap = static_cast<int>(parse_int(key, v));
    else throw ConfigError("unknown config field '" + key + "'");
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + s + "'");
        apply_override(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    return cfg;
}

void finalize_config(ScenarioConfig& cfg) {
    if (cfg.fast && cfg.scenario == Scenario::embb_urllc && cfg.eps_u < 1e-3)
        cfg.eps_u = 1e-3;
}

void validate_config(const ScenarioConfig& cfg) {
    auto need = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    need(cfg.f_total >= 1 && cfg.f_total <= 1024, "config field 'f_total': must be in [1, 1024]");
    need(cfg.f_urllc >= 0 && cfg.f_urllc <= cfg.f_total,
         "config field 'f_urllc': must be in [0, f_total]");
    need(cfg.n_urllc >= 1 && cfg.n_urllc <= 64, "config field 'n_urllc': must be in [1, 64]");
    if (cfg.scenario == Scenario::embb_urllc && cfg.scheme == Scheme::rsma)
        need(cfg.n_urllc == 2, "config field 'n_urllc': rate splitting requires exactly 2 users");
    need(cfg.eps_b > 0 && cfg.eps_b < 1, "config field 'eps_b': must be in (0, 1)");
    need(cfg.eps_u > 0 && cfg.eps_u < 1, "config field 'eps_u': must be in (0, 1)");
    need(cfg.eps_m > 0 && cfg.eps_m < 1, "config field 'eps_m': must be in (0, 1)");
    need(cfg.r_m > 0 || cfg.scenario == Scenario::embb_urllc,
         "config field 'r_m': must be positive");
    need(cfg.gamma_b_db > -100 && cfg.gamma_b_db < 100,
         "config field 'gamma_b_db': must be in (-100, 100)");
    need(cfg.gamma_u_db > -100 && cfg.gamma_u_db < 100,
         "config field 'gamma_u_db': must be in (-100, 100)");
    need(cfg.gamma_m_db > -100 && cfg.gamma_m_db < 100,
         "config field 'gamma_m_db': must be in (-100, 100)");
    need(cfg.beta_grid_size >= 2, "config field 'beta_grid_size': must be >= 2");
    need(cfg.gtar_grid_size >= 1, "config field 'gtar_grid_size': must be >= 1");
    need(cfg.alpha_grid_size >= 2, "config field 'alpha_grid_size': must be >= 2");
    need(cfg.rb_grid_size >= 2, "config field 'rb_grid_size': must be >= 2");
    need(cfg.rb_sum_grid_size >= 2, "config field 'rb_sum_grid_size': must be >= 2");
    need(cfg.workers >= 0 && cfg.workers <= 256, "config field 'workers': must be in [0, 256]");
    need(cfg.escalation_cap >= 1 && cfg.escalation_cap <= 64,
         "config field 'escalation_cap': must be in [1, 64]");
    need(cfg.tol_rate > 0, "config field 'tol_rate': must be positive");
    need(cfg.tol_lambda > 0, "config field 'tol_lambda': must be positive");
    need(cfg.rate_bracket_max > 0, "config field 'rate_bracket_max': must be positive");
    need(cfg.lambda_bracket_max > 0 && cfg.lambda_bracket_max <= 600,
         "config field 'lambda_bracket_max': must be in (0, 600]");
    std::vector<double> bg = cfg.effective_beta_grid();
    bool has0 = false, has1 = false;
    for (double b : bg) {
        need(b >= 0.0 && b <= 1.0, "config field 'beta_grid': entries must lie in [0, 1]");
        if (b == 0.0) has0 = true;
        if (b == 1.0) has1 = true;
    }
    if (cfg.scheme == Scheme::rsma)
        need(has0 && has1, "config field 'beta_grid': must contain the endpoints 0 and 1");
}

std::string canonical_config(const ScenarioConfig& cfg) {
    // Sorted by key. Everything here changes results; workers does not and
    // stays out so worker counts cannot perturb output bytes.
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("alpha_grid_size", std::to_string(cfg.alpha_grid_size));
    std::string bg;
    for (double b : cfg.effective_beta_grid()) {
        if (!bg.empty()) bg += ",";
        bg += fmt_double(b);
    }
    kv.emplace_back("beta_grid", bg);
    kv.emplace_back("embb_always_active", cfg.embb_always_active ? "1" : "0");
    kv.emplace_back("eps_b", fmt_double(cfg.eps_b));
    kv.emplace_back("eps_m", fmt_double(cfg.eps_m));
    kv.emplace_back("eps_u", fmt_double(cfg.eps_u));
    kv.emplace_back("escalation_cap", std::to_string(cfg.escalation_cap));
    kv.emplace_back("f_total", std::to_string(cfg.f_total));
    kv.emplace_back("f_urllc", std::to_string(cfg.f_urllc));
    kv.emplace_back("fast", cfg.fast ? "1" : "0");
    kv.emplace_back("gamma_b_db", fmt_double(cfg.gamma_b_db));
    kv.emplace_back("gamma_m_db", fmt_double(cfg.gamma_m_db));
    kv.emplace_back("gamma_u_db", fmt_double(cfg.gamma_u_db));
    kv.emplace_back("gtar_grid_size", std::to_string(cfg.gtar_grid_size));
    kv.emplace_back("lambda_bracket_max", fmt_double(cfg.lambda_bracket_max));
    kv.emplace_back("n_urllc", std::to_string(cfg.n_urllc));
    kv.emplace_back("r_b", fmt_double(cfg.r_b));
    kv.emplace_back("r_b_sum", fmt_double(cfg.r_b_sum));
    kv.emplace_back("r_m", fmt_double(cfg.r_m));
    kv.emplace_back("rate_bracket_max", fmt_double(cfg.rate_bracket_max));
    kv.emplace_back("rb_grid_size", std::to_string(cfg.rb_grid_size));
    kv.emplace_back("rb_sum_grid_size", std::to_string(cfg.rb_sum_grid_size));
    kv.emplace_back("retry_after_cancellation", cfg.retry_after_cancellation ? "1" : "0");
    kv.emplace_back("scenario", scenario_name(cfg.scenario));
    kv.emplace_back("scheme", scheme_name(cfg.scheme));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("tol_lambda", fmt_double(cfg.tol_lambda));
    kv.emplace_back("tol_rate", fmt_double(cfg.tol_rate));
    kv.emplace_back("trials", std::to_string(cfg.effective_trials()));
    std::sort(kv.begin(), kv.end());
    std::string out;
    for (auto& [k, v] : kv) {
        out += k;
        out += "=";
        out += v;
        out += "\n";
    }
    return out;
}

uint64_t config_hash(const ScenarioConfig& cfg) {
    std::string s = canonical_config(cfg);
    uint64_t h = 0xCBF29CE484222325ULL; // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::oma: return "oma";
        case Scheme::noma: return "noma";
        case Scheme::rsma: return "rsma";
    }
    return "?";
}

std::string scenario_name(Scenario s) {
    return s == Scenario::embb_urllc ? "embb-urllc" : "embb-mmtc";
}

} // namespace slicesim

#include "tcm/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tcm {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& s, long long& out) {
    try {
        std::size_t pos = 0;
        out = std::stoll(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

bool parse_bool(const std::string& s, bool& out) {
    if (s == "true" || s == "1") { out = true; return true; }
    if (s == "false" || s == "0") { out = false; return true; }
    return false;
}

using Setter = std::function<bool(RunConfig&, const std::string&)>;

Setter set_double(double RunConfig::* field) {
    return [field](RunConfig& c, const std::string& v) {
        return parse_double(v, c.*field);
    };
}

Setter set_bool(bool RunConfig::* field) {
    return [field](RunConfig& c, const std::string& v) {
        return parse_bool(v, c.*field);
    };
}

Setter set_string(std::string RunConfig::* field) {
    return [field](RunConfig& c, const std::string& v) {
        c.*field = v;
        return true;
    };
}

Setter set_param(double ModelParams::* field) {
    return [field](RunConfig& c, const std::string& v) {
        return parse_double(v, c.params.*field);
    };
}

Setter set_param_bool(bool ModelParams::* field) {
    return [field](RunConfig& c, const std::string& v) {
        return parse_bool(v, c.params.*field);
    };
}

Setter set_initial(double InitialDataSpec::* field) {
    return [field](RunConfig& c, const std::string& v) {
        return parse_double(v, c.initial.*field);
    };
}

const std::map<std::string, std::map<std::string, Setter>>& key_table() {
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"grid",
         {{"n",
           [](RunConfig& c, const std::string& v) {
               long long n;
               if (!parse_int(v, n)) return false;
               c.n = static_cast<int>(n);
               return true;
           }},
          {"box_length", set_double(&RunConfig::box_length)}}},
        {"model",
         {{"nu", set_param(&ModelParams::nu)},
          {"eta", set_param(&ModelParams::eta)},
          {"mu", set_param(&ModelParams::mu)},
          {"sigma1", set_param(&ModelParams::sigma1)},
          {"sigma2", set_param(&ModelParams::sigma2)},
          {"alpha", set_param(&ModelParams::alpha)},
          {"beta", set_param(&ModelParams::beta)},
          {"advection", set_param_bool(&ModelParams::advection)},
          {"coupling", set_param_bool(&ModelParams::coupling)},
          {"damping", set_param_bool(&ModelParams::damping)}}},
        {"integrator",
         {{"dt", set_double(&RunConfig::dt)},
          {"adaptive", set_bool(&RunConfig::adaptive)},
          {"safety", set_double(&RunConfig::safety)},
          {"dt_cap", set_double(&RunConfig::dt_cap)},
          {"horizon", set_double(&RunConfig::horizon)},
          {"sample_every", set_double(&RunConfig::sample_every)},
          {"integrating_factor", set_bool(&RunConfig::integrating_factor)}}},
        {"initial_data",
         {{"kind",
           [](RunConfig& c, const std::string& v) {
               if (v == "taylor_green")
                   c.initial.kind = InitialKind::taylor_green;
               else if (v == "random_band")
                   c.initial.kind = InitialKind::random_band;
               else if (v == "single_mode")
                   c.initial.kind = InitialKind::single_mode;
               else
                   return false;
               return true;
           }},
          {"amp_u", set_initial(&InitialDataSpec::amp_u)},
          {"amp_v", set_initial(&InitialDataSpec::amp_v)},
          {"amp_theta", set_initial(&InitialDataSpec::amp_theta)},
          {"target_h_half", set_initial(&InitialDataSpec::target_h_half)},
          {"band",
           [](RunConfig& c, const std::string& v) {
               long long b;
               if (!parse_int(v, b)) return false;
               c.initial.band = static_cast<int>(b);
               return true;
           }},
          {"spectrum_slope", set_initial(&InitialDataSpec::spectrum_slope)},
          {"seed",
           [](RunConfig& c, const std::string& v) {
               long long s;
               if (!parse_int(v, s) || s < 0) return false;
               c.initial.seed = static_cast<std::uint64_t>(s);
               return true;
           }}}},
        {"diagnostics",
         {{"bmo_mode", set_string(&RunConfig::bmo_mode)},
          {"c_pi", set_double(&RunConfig::c_pi)},
          {"c1", set_double(&RunConfig::c1)},
          {"c2", set_double(&RunConfig::c2)},
          {"epsilon", set_double(&RunConfig::epsilon)}}},
        {"experiments",
         {{"growth_factor", set_double(&RunConfig::growth_factor)}}},
        {"output",
         {{"series_path", set_string(&RunConfig::series_path)},
          {"checkpoint_path", set_string(&RunConfig::checkpoint_path)},
          {"sweep_path", set_string(&RunConfig::sweep_path)}}},
    };
    return table;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::runtime_error([&errs] {
          std::string msg = "config errors:";
          for (const auto& e : errs) msg += "\n  " + e;
          return msg;
      }()),
      errors(std::move(errs)) {}

DiagnosticsOptions RunConfig::diagnostics_options() const {
    DiagnosticsOptions d;
    d.bmo_dyadic = bmo_mode == "dyadic";
    d.c_pi = c_pi;
    d.c1 = c1;
    d.c2 = c2;
    d.epsilon = epsilon;
    return d;
}

RunOptions RunConfig::run_options() const {
    RunOptions o;
    o.dt = dt;
    o.adaptive = adaptive;
    o.cfl_safety = safety;
    o.dt_cap = dt_cap;
    o.horizon = horizon;
    o.sample_every = sample_every;
    o.integrating_factor = integrating_factor;
    o.diag = diagnostics_options();
    return o;
}

LoadedConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::vector<std::string> errors;

    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    const auto& table = key_table();
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                errors.push_back(origin + ":" + std::to_string(lineno) +
                                 ": malformed section header '" + t + "'");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            if (!table.count(section))
                errors.push_back(origin + ":" + std::to_string(lineno) +
                                 ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back(origin + ":" + std::to_string(lineno) +
                             ": expected 'key = value', got '" + t + "'");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const auto sec_it = table.find(section);
        if (sec_it == table.end()) continue; // already reported
        const auto key_it = sec_it->second.find(key);
        if (key_it == sec_it->second.end()) {
            errors.push_back(origin + ":" + std::to_string(lineno) +
                             ": unknown key '" + key + "' in [" + section + "]");
            continue;
        }
        if (!key_it->second(cfg, value))
            errors.push_back(origin + ":" + std::to_string(lineno) +
                             ": cannot parse value '" + value + "' for " +
                             section + "." + key);
    }

    auto verrs = validate(cfg);
    errors.insert(errors.end(), verrs.begin(), verrs.end());
    if (!errors.empty()) throw ConfigError(std::move(errors));

    return LoadedConfig{cfg, config_warnings(cfg)};
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

std::vector<std::string> validate(const RunConfig& cfg) {
    std::vector<std::string> errs;
    auto bad = [&](const std::string& field, const std::string& value,
                   const std::string& bound) {
        errs.push_back(field + " = " + value + ": must be " + bound);
    };

    if (!power_of_two(cfg.n) || cfg.n < 8)
        bad("grid.n", std::to_string(cfg.n), "a power of two >= 8");
    if (!(cfg.box_length > 0.0))
        bad("grid.box_length", fmt(cfg.box_length), "> 0");

    const auto& p = cfg.params;
    if (!(p.nu > 0.0)) bad("model.nu", fmt(p.nu), "> 0");
    if (!(p.eta > 0.0)) bad("model.eta", fmt(p.eta), "> 0");
    if (!(p.mu > 0.0)) bad("model.mu", fmt(p.mu), "> 0");
    if (!(p.sigma1 >= 0.0)) bad("model.sigma1", fmt(p.sigma1), ">= 0");
    if (!(p.sigma2 >= 0.0)) bad("model.sigma2", fmt(p.sigma2), ">= 0");
    if (!(p.alpha >= 1.0)) bad("model.alpha", fmt(p.alpha), ">= 1");
    if (!(p.beta >= 1.0)) bad("model.beta", fmt(p.beta), ">= 1");

    if (!(cfg.dt > 0.0)) bad("integrator.dt", fmt(cfg.dt), "> 0");
    if (!(cfg.safety > 0.0 && cfg.safety <= 1.0))
        bad("integrator.safety", fmt(cfg.safety), "in (0, 1]");
    if (!(cfg.dt_cap > 0.0)) bad("integrator.dt_cap", fmt(cfg.dt_cap), "> 0");
    if (!(cfg.horizon >= 0.0))
        bad("integrator.horizon", fmt(cfg.horizon), ">= 0");
    if (!(cfg.sample_every > 0.0))
        bad("integrator.sample_every", fmt(cfg.sample_every), "> 0");

    if (!(cfg.initial.band >= 0))
        bad("initial_data.band", std::to_string(cfg.initial.band), ">= 0");
    if (power_of_two(cfg.n) && cfg.initial.band > cfg.n / 3)
        bad("initial_data.band", std::to_string(cfg.initial.band),
            "<= n/3 = " + std::to_string(cfg.n / 3));
    if (!(cfg.initial.target_h_half >= 0.0 || cfg.initial.target_h_half == -1.0))
        bad("initial_data.target_h_half", fmt(cfg.initial.target_h_half),
            ">= 0 (or -1 for raw amplitudes)");

    if (cfg.bmo_mode != "proxy" && cfg.bmo_mode != "dyadic")
        bad("diagnostics.bmo_mode", cfg.bmo_mode, "'proxy' or 'dyadic'");
    if (!(cfg.c_pi > 0.0)) bad("diagnostics.c_pi", fmt(cfg.c_pi), "> 0");
    if (!(cfg.c1 > 0.0)) bad("diagnostics.c1", fmt(cfg.c1), "> 0");
    if (!(cfg.c2 > 0.0)) bad("diagnostics.c2", fmt(cfg.c2), "> 0");
    if (!(cfg.epsilon >= 0.0)) bad("diagnostics.epsilon", fmt(cfg.epsilon), ">= 0");

    if (!(cfg.growth_factor > 1.0))
        bad("experiments.growth_factor", fmt(cfg.growth_factor), "> 1");
    if (cfg.series_path.empty())
        errs.push_back("output.series_path must not be empty");
    return errs;
}

std::vector<std::string> config_warnings(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    const auto& p = cfg.params;
    auto regime = [&](const char* name, double val) {
        if (val >= 1.0 && !(val >= 2.5 && val < 4.0))
            warnings.push_back(std::string("model.") + name + " = " + fmt(val) +
                               ": outside [5/2, 4), theory_regime disabled");
    };
    regime("alpha", p.alpha);
    regime("beta", p.beta);

    if (!cfg.adaptive && cfg.dt > 0.0 && cfg.sample_every > 0.0) {
        const double ratio = cfg.sample_every / cfg.dt;
        if (std::abs(ratio - std::round(ratio)) > 1e-6 * ratio)
            warnings.push_back(
                "integrator.sample_every is not a multiple of dt; the stepper "
                "shortens steps to land on sample times");
    }
    return warnings;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    const auto& p = cfg.params;
    auto b = [](bool v) { return v ? "true" : "false"; };
    out << "[grid]\n"
        << "n = " << cfg.n << "\n"
        << "box_length = " << fmt(cfg.box_length) << "\n\n";
    out << "[model]\n"
        << "nu = " << fmt(p.nu) << "\n"
        << "eta = " << fmt(p.eta) << "\n"
        << "mu = " << fmt(p.mu) << "\n"
        << "sigma1 = " << fmt(p.sigma1) << "\n"
        << "sigma2 = " << fmt(p.sigma2) << "\n"
        << "alpha = " << fmt(p.alpha) << "\n"
        << "beta = " << fmt(p.beta) << "\n"
        << "advection = " << b(p.advection) << "\n"
        << "coupling = " << b(p.coupling) << "\n"
        << "damping = " << b(p.damping) << "\n\n";
    out << "[integrator]\n"
        << "dt = " << fmt(cfg.dt) << "\n"
        << "adaptive = " << b(cfg.adaptive) << "\n"
        << "safety = " << fmt(cfg.safety) << "\n"
        << "dt_cap = " << fmt(cfg.dt_cap) << "\n"
        << "horizon = " << fmt(cfg.horizon) << "\n"
        << "sample_every = " << fmt(cfg.sample_every) << "\n"
        << "integrating_factor = " << b(cfg.integrating_factor) << "\n\n";
    out << "[initial_data]\n"
        << "kind = ";
    switch (cfg.initial.kind) {
    case InitialKind::taylor_green: out << "taylor_green"; break;
    case InitialKind::random_band: out << "random_band"; break;
    case InitialKind::single_mode: out << "single_mode"; break;
    }
    out << "\n"
        << "amp_u = " << fmt(cfg.initial.amp_u) << "\n"
        << "amp_v = " << fmt(cfg.initial.amp_v) << "\n"
        << "amp_theta = " << fmt(cfg.initial.amp_theta) << "\n"
        << "target_h_half = " << fmt(cfg.initial.target_h_half) << "\n"
        << "band = " << cfg.initial.band << "\n"
        << "spectrum_slope = " << fmt(cfg.initial.spectrum_slope) << "\n"
        << "seed = " << cfg.initial.seed << "\n\n";
    out << "[diagnostics]\n"
        << "bmo_mode = " << cfg.bmo_mode << "\n"
        << "c_pi = " << fmt(cfg.c_pi) << "\n"
        << "c1 = " << fmt(cfg.c1) << "\n"
        << "c2 = " << fmt(cfg.c2) << "\n"
        << "epsilon = " << fmt(cfg.epsilon) << "\n\n";
    out << "[experiments]\n"
        << "growth_factor = " << fmt(cfg.growth_factor) << "\n\n";
    out << "[output]\n"
        << "series_path = " << cfg.series_path << "\n"
        << "checkpoint_path = " << cfg.checkpoint_path << "\n"
        << "sweep_path = " << cfg.sweep_path << "\n";
    return out.str();
}

} // namespace tcm

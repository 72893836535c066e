/// @file config.cpp
/// @brief Config grammar, validation and rendering.

#include "henle/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "henle/errors.hpp"

namespace henle {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'");
    }
    if (used != v.size() || !std::isfinite(x)) throw ConfigError("expected a number, got '" + v + "'");
    return x;
}

int to_int(const std::string& v) {
    const double x = to_double(v);
    if (x != std::floor(x) || std::fabs(x) > 1e9) throw ConfigError("expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool to_bool(const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected on/off, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"alpha", [](RunConfig& c, const std::string& v) { c.params.alpha = to_double(v); }},
        {"K1", [](RunConfig& c, const std::string& v) { c.params.K1 = to_double(v); }},
        {"K2", [](RunConfig& c, const std::string& v) { c.params.K2 = to_double(v); }},
        {"eps", [](RunConfig& c, const std::string& v) { c.params.eps = to_double(v); }},
        {"Vm", [](RunConfig& c, const std::string& v) { c.params.Vm = to_double(v); }},
        {"kM", [](RunConfig& c, const std::string& v) { c.params.kM = to_double(v); }},
        {"L", [](RunConfig& c, const std::string& v) { c.params.L = to_double(v); }},
        {"T", [](RunConfig& c, const std::string& v) { c.params.T = to_double(v); }},
        {"N", [](RunConfig& c, const std::string& v) { c.N = to_int(v); }},
        {"model",
         [](RunConfig& c, const std::string& v) {
             if (v == "full") c.model = ModelChoice::full;
             else if (v == "reduced") c.model = ModelChoice::reduced;
             else if (v == "both") c.model = ModelChoice::both;
             else throw ConfigError("model must be full, reduced or both");
         }},
        {"data", [](RunConfig& c, const std::string& v) { c.preset = parse_preset(v); }},
        {"data_file", [](RunConfig& c, const std::string& v) { c.data_file = v; }},
        {"data_value", [](RunConfig& c, const std::string& v) { c.preset_options.value = to_double(v); }},
        {"data_amplitude",
         [](RunConfig& c, const std::string& v) { c.preset_options.amplitude = to_double(v); }},
        {"q_offset", [](RunConfig& c, const std::string& v) { c.preset_options.q_offset = to_double(v); }},
        {"seed",
         [](RunConfig& c, const std::string& v) {
             const int s = to_int(v);
             if (s < 0) throw ConfigError("seed must be >= 0");
             c.preset_options.seed = static_cast<std::uint64_t>(s);
         }},
        {"pieces", [](RunConfig& c, const std::string& v) { c.preset_options.pieces = to_int(v); }},
        {"ub_value", [](RunConfig& c, const std::string& v) { c.ub_value = to_double(v); }},
        {"eps_list", [](RunConfig& c, const std::string& v) { c.eps_list = parse_double_list(v); }},
        {"out", [](RunConfig& c, const std::string& v) { c.out = v; }},
        {"stride", [](RunConfig& c, const std::string& v) { c.stride = to_int(v); }},
        {"regularize", [](RunConfig& c, const std::string& v) { c.regularize = to_bool(v); }},
        {"delta", [](RunConfig& c, const std::string& v) { c.delta = to_double(v); }},
        {"c1", [](RunConfig& c, const std::string& v) { c.c1 = to_double(v); }},
        {"c2", [](RunConfig& c, const std::string& v) { c.c2 = to_double(v); }},
        {"limit_init",
         [](RunConfig& c, const std::string& v) {
             if (v == "average") c.reading = LimitReading::average;
             else if (v == "sum") c.reading = LimitReading::sum;
             else throw ConfigError("limit_init must be average or sum");
         }},
        {"q2_coupling",
         [](RunConfig& c, const std::string& v) {
             if (v == "K2") c.literal_q2_coupling = false;
             else if (v == "K1") c.literal_q2_coupling = true;
             else throw ConfigError("q2_coupling must be K2 or K1");
         }},
        {"picard_window", [](RunConfig& c, const std::string& v) { c.picard_window = to_double(v); }},
        {"picard_tol", [](RunConfig& c, const std::string& v) { c.picard_tol = to_double(v); }},
        {"picard_max_iter", [](RunConfig& c, const std::string& v) { c.picard_max_iter = to_int(v); }},
    };
    return table;
}

void validate(const RunConfig& c) {
    c.params.validate();
    if (c.N < 2) throw ConfigError("N must be >= 2");
    if (c.stride < 1) throw ConfigError("stride must be >= 1");
    if (c.eps_list.empty()) throw ConfigError("eps_list must not be empty");
    for (std::size_t k = 0; k < c.eps_list.size(); ++k) {
        if (!(c.eps_list[k] > 0.0)) throw ConfigError("eps_list entries must be > 0");
        if (k > 0 && !(c.eps_list[k] < c.eps_list[k - 1]))
            throw ConfigError("eps_list must be strictly decreasing");
    }
    if (c.preset_options.value < 0.0 || c.preset_options.amplitude < 0.0 ||
        c.preset_options.q_offset < 0.0)
        throw ConfigError("data_value, data_amplitude and q_offset must be >= 0");
    if (c.preset == Preset::smooth && c.preset_options.amplitude > c.preset_options.value)
        throw ConfigError("smooth preset needs data_amplitude <= data_value to stay nonnegative");
    if (c.preset_options.pieces < 1) throw ConfigError("pieces must be >= 1");
    if (c.ub_value < 0.0) throw ConfigError("ub_value must be >= 0");
    if (c.regularize) {
        RegularizationParams r{c.delta, c.c1.value_or(0.0), c.c2.value_or(0.0)};
        r.validate(c.params);
    }
    if (!(c.picard_tol > 0.0)) throw ConfigError("picard_tol must be > 0");
    if (c.picard_max_iter < 1) throw ConfigError("picard_max_iter must be >= 1");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
    if (out.empty()) throw ConfigError("expected a comma-separated list of numbers");
    return out;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::set<std::string> seen;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto where = "line " + std::to_string(lineno) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");
        try {
            it->second(cfg, value);
            if (key == "eps_list") {
                for (std::size_t k = 1; k < cfg.eps_list.size(); ++k)
                    if (!(cfg.eps_list[k] < cfg.eps_list[k - 1]))
                        throw ConfigError("eps_list must be strictly decreasing");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + key + ": " + e.what());
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string render_config(const RunConfig& c) {
    std::ostringstream o;
    const auto& p = c.params;
    o << "alpha = " << fmt(p.alpha) << "\n"
      << "K1 = " << fmt(p.K1) << "\n"
      << "K2 = " << fmt(p.K2) << "\n"
      << "eps = " << fmt(p.eps) << "\n"
      << "Vm = " << fmt(p.Vm) << "\n"
      << "kM = " << fmt(p.kM) << "\n"
      << "L = " << fmt(p.L) << "\n"
      << "T = " << fmt(p.T) << "\n"
      << "N = " << c.N << "\n"
      << "model = "
      << (c.model == ModelChoice::full ? "full" : c.model == ModelChoice::reduced ? "reduced" : "both")
      << "\n";
    if (c.data_file.empty()) {
        o << "data = " << preset_name(c.preset) << "\n";
    } else {
        o << "data_file = " << c.data_file << "\n";
    }
    o << "data_value = " << fmt(c.preset_options.value) << "\n"
      << "data_amplitude = " << fmt(c.preset_options.amplitude) << "\n"
      << "q_offset = " << fmt(c.preset_options.q_offset) << "\n"
      << "seed = " << c.preset_options.seed << "\n"
      << "pieces = " << c.preset_options.pieces << "\n"
      << "ub_value = " << fmt(c.ub_value) << "\n"
      << "eps_list = ";
    for (std::size_t k = 0; k < c.eps_list.size(); ++k) o << (k ? "," : "") << fmt(c.eps_list[k]);
    o << "\n"
      << "out = " << c.out << "\n"
      << "stride = " << c.stride << "\n"
      << "regularize = " << (c.regularize ? "on" : "off") << "\n"
      << "delta = " << fmt(c.delta) << "\n";
    if (c.regularize) {
        // resolved matching constants
        const auto raw = c.data_file.empty() ? make_preset(c.preset, c.params, c.preset_options)
                                             : load_data_file(c.data_file, c.ub_value);
        const double def = (!c.c1 || !c.c2) ? default_matching_constant(raw, c.params) : 0.0;
        o << "c1 = " << fmt(c.c1.value_or(def)) << "\n"
          << "c2 = " << fmt(c.c2.value_or(def)) << "\n";
    } else {
        if (c.c1) o << "c1 = " << fmt(*c.c1) << "\n";
        if (c.c2) o << "c2 = " << fmt(*c.c2) << "\n";
    }
    o << "limit_init = " << (c.reading == LimitReading::average ? "average" : "sum") << "\n"
      << "q2_coupling = " << (c.literal_q2_coupling ? "K1" : "K2") << "\n"
      << "picard_window = " << fmt(make_picard_config(c).window) << "\n"
      << "picard_tol = " << fmt(c.picard_tol) << "\n"
      << "picard_max_iter = " << c.picard_max_iter << "\n";
    return o.str();
}

ProblemData make_data(const RunConfig& c) {
    ProblemData d = c.data_file.empty() ? make_preset(c.preset, c.params, c.preset_options)
                                        : load_data_file(c.data_file, c.ub_value);
    validate_data(d, c.params);
    if (c.regularize) {
        const double def = (!c.c1 || !c.c2) ? default_matching_constant(d, c.params) : 0.0;
        RegularizationParams r{c.delta, c.c1.value_or(def), c.c2.value_or(def)};
        d = regularize(d, r, c.params);
    }
    return d;
}

PicardConfig make_picard_config(const RunConfig& c) {
    PicardConfig pc = PicardConfig::defaults(c.params);
    if (c.picard_window) pc.window = *c.picard_window;
    pc.tol = c.picard_tol;
    pc.max_iter = c.picard_max_iter;
    pc.literal_q2_coupling = c.literal_q2_coupling;
    return pc;
}

}  // namespace henle

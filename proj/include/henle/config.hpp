/// @file config.hpp
/// @brief Line-based `key = value` run configuration.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "henle/characteristics.hpp"
#include "henle/data.hpp"
#include "henle/layers.hpp"
#include "henle/model.hpp"

namespace henle {

enum class ModelChoice { full, reduced, both };

struct RunConfig {
    Params params;
    int N = 200;
    ModelChoice model = ModelChoice::full;

    Preset preset = Preset::bump;
    PresetOptions preset_options;
    std::string data_file;  ///< replaces the preset when non-empty
    double ub_value = 1.0;  ///< constant inflow used with data_file

    std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125};
    std::string out = "out";
    int stride = 1;

    bool regularize = false;
    double delta = 0.05;
    std::optional<double> c1, c2;  ///< default: TV(U^0) + TV(u_b)

    LimitReading reading = LimitReading::average;
    bool literal_q2_coupling = false;

    std::optional<double> picard_window;  ///< default: half the contraction bound
    double picard_tol = 1e-10;
    int picard_max_iter = 200;
};

/// Parses `key = value` lines ('#' starts a comment). Unknown keys, malformed
/// values and failed validation raise ConfigError naming the line.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

/// Renders every key with its resolved value in the same grammar.
std::string render_config(const RunConfig& cfg);

/// Builds the (optionally regularized) problem data described by cfg.
ProblemData make_data(const RunConfig& cfg);

/// Picard settings derived from cfg (defaults filled from the parameters).
PicardConfig make_picard_config(const RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& text);

}  // namespace henle

/// @file data.hpp
/// @brief Initial profiles and boundary trace, plus the named presets used by
///        the CLI and the test suites.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "henle/model.hpp"

namespace henle {

/// A scalar function of one variable (x for profiles, t for the boundary trace).
using Profile = std::function<double(double)>;

/// Initial profiles on [0,L] and the inflow trace u_b on [0,T].
struct ProblemData {
    Profile u1_0, u2_0, q1_0, q2_0, u0_0;
    Profile u_b;
};

/// Samples of ProblemData on a cell-centred grid of n cells over [0,L].
struct SampledData {
    std::vector<double> u1, u2, q1, q2, u0;
    double dx = 0.0;
};

SampledData sample_initial(const ProblemData& d, int n, double L);

/// Initial fields of the full system at cell centres (i + 1/2) L/n.
State5 initial_state5(const ProblemData& d, int n, double L);

/// Checks nonnegativity, finiteness and boundedness on a sampling of n cells
/// and m boundary times; throws InputError on the first violation.
void validate_data(const ProblemData& d, const Params& p, int n = 1000, int m = 1000);

/// Largest value of the data sampled on n cells and m+1 boundary times t_k = kT/m.
double data_sup(const ProblemData& d, const Params& p, int n, int m);

enum class Preset { constant, step, bump, smooth, random_bv };

/// Tunable knobs of the presets. Defaults give the desk-scale data.
struct PresetOptions {
    double value = 1.0;      ///< constant level / base level
    double amplitude = 0.5;  ///< bump / sine / step height
    double q_offset = 0.0;   ///< added to q1_0 and q2_0 (ill-prepared data when > 0)
    std::uint64_t seed = 1;  ///< random_bv only
    int pieces = 8;          ///< random_bv only: constant pieces per profile
};

Preset parse_preset(const std::string& name);
std::string preset_name(Preset preset);

/// Builds data for a preset on [0,L] x [0,T].
///  - constant: every field and u_b equal to value.
///  - step: every profile jumps from value to value+amplitude at L/2; u_b = value.
///  - bump: value + amplitude * cos^2 bump of half-width L/4 centred at L/2, well prepared.
///  - smooth: phase-shifted sines around value with a sinusoidal u_b matching u1_0 at 0.
///  - random_bv: piecewise constant levels in [0, 2 value] from the seed.
ProblemData make_preset(Preset preset, const Params& p, const PresetOptions& opt = {});

/// Loads profiles from a CSV with header x,u1,u2,q1,q2,u0 (piecewise linear in
/// between rows, constant beyond the ends). u_b is the constant ub_value.
ProblemData load_data_file(const std::string& path, double ub_value);

/// Piecewise-linear interpolant through (xs, ys); constant outside [xs.front(), xs.back()].
Profile piecewise_linear(std::vector<double> xs, std::vector<double> ys);

}  // namespace henle

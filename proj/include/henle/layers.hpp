/// @file layers.hpp
/// @brief Reduced-system initial data, initial-layer correctors and the
///        cutoff-plus-mollifier regularization of BV data.

#pragma once

#include <vector>

#include "henle/data.hpp"
#include "henle/model.hpp"

namespace henle {

/// How the lumen and epithelium profiles combine into reduced initial data.
enum class LimitReading {
    average,  ///< u_i(0) = (u_i^0 + q_i^0) / 2  (default)
    sum,      ///< u_i(0) = u_i^0 + q_i^0        (formula as printed)
};

struct LimitInitial {
    Profile u1, u2, u0;
};

LimitInitial build_limit_initial(const ProblemData& d, LimitReading reading = LimitReading::average);

/// build_limit_initial sampled at the n cell centres of [0, L].
State3 limit_initial_state(const ProblemData& d, int n, double L,
                           LimitReading reading = LimitReading::average);

/// Initial-layer correctors at microscopic time tau, one value per cell.
/// Invariants: u_it + q_it == u_it(0) and u_it - q_it == (q_i^0 - u_i^0) e^{-2 tau}.
struct LayerState {
    std::vector<double> u1t, u2t, q1t, q2t;
    double tau = 0.0;
};

LayerState layer_eval(double tau, const SampledData& d);

/// Corrected variables v_i = u_i + u_it(t/eps), r_i = q_i + q_it(t/eps).
struct CorrectedFields {
    std::vector<double> v1, v2, r1, r2, u0;
    double t = 0.0;
};

/// The correctors are built from d sampled on the state's grid.
CorrectedFields corrected_state(const State5& s, const ProblemData& d, const Params& p);

struct RegularizationParams {
    double delta = 0.05;  ///< cutoff scale; mollifier support has width delta
    double c1 = 0.0;      ///< value imposed near x = 0 (u1_0) and t = 0 (u_b)
    double c2 = 0.0;      ///< value imposed near x = L (u1_0 and u2_0)

    /// Throws ConfigError unless 0 < delta < min(L, T)/4 and c1, c2 >= 0.
    void validate(const Params& p) const;
};

/// Smooth monotone cutoff: 1 on |s| <= 1, 0 on |s| >= 2.
double cutoff(double s);

/// The cutoff blend applied before mollification (u1_0 forced to c1 near 0
/// and c2 near L, u2_0 to c2 near L, u_b to c1 near t = 0; the other
/// profiles unchanged).
ProblemData cutoff_blend(const ProblemData& d, const RegularizationParams& r, const Params& p);

/// Regular data: cutoff blend followed by convolution with a cos^2 kernel of
/// width delta (constant extension beyond the interval). Values in the inner
/// half of each cutoff zone equal c1 / c2 exactly.
ProblemData regularize(const ProblemData& d, const RegularizationParams& r, const Params& p);

/// Matching constant TV(U^0) + TV(u_b), measured on a fine sampling.
double default_matching_constant(const ProblemData& d, const Params& p);

/// Total variation of f on [a, b] measured on `samples` uniform points.
double sampled_total_variation(const Profile& f, double a, double b, int samples);

}  // namespace henle

/// @file diagnostics.hpp
/// @brief Measurable consequences of the a-priori estimates, the eps-convergence
///        study and the cross-solver check.
///
/// Conventions: L1 norms in space use the midpoint rule on cells (dx * sum);
/// time integrals use left endpoints t_0 .. t_{M-1} with weight dt, matching
/// the first-order stepper.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "henle/characteristics.hpp"
#include "henle/data.hpp"
#include "henle/grid_solver.hpp"
#include "henle/layers.hpp"
#include "henle/model.hpp"

namespace henle {

/// H(t) = int (|u1| + |u2| + |u0| + |q1| + |q2|) dx.
double mass_functional(const State5& s, const Grid1D& g);

/// r_n = H(t_{n+1}) - H(t_n) + dt alpha |u2(t_n, 0)| - dt alpha |u_b(t_n)|.
/// Needs a stride-1 full trajectory; throws InputError otherwise.
std::vector<double> balance_residual(const Trajectory5& traj, const Params& p, const Grid1D& g);

/// Smallest sample over all snapshots and fields (>= 0 means no violation).
double check_nonneg(const Trajectory5& traj);
double check_nonneg(const Trajectory3& traj);

/// kappa = max(sup G, sup u_b, sup of the sampled initial data).
double linf_kappa(const Params& p, const ProblemData& d, const Grid1D& g);

/// Largest sample / (kappa (1 + t)) over all snapshots and fields.
double check_linf(const Trajectory5& traj, const Params& p, const ProblemData& d, const Grid1D& g);

/// sum |f_{i+1} - f_i|
double total_variation(std::span<const double> f);

struct GapSample {
    double t = 0.0;
    double gap1 = 0.0;  ///< ||q1 - u1||_{L1(0,L)}
    double gap2 = 0.0;  ///< ||q2 - u2||_{L1(0,L)}
};

std::vector<GapSample> relaxation_gap(const Trajectory5& traj, const Grid1D& g);

struct DiagnosticSeries {
    std::vector<double> t, H, min_val, max_val;
    std::vector<double> tv_x;              ///< spatial TV summed over the five fields
    std::vector<double> tv_t;              ///< per field: int_0^T ||d_t f||_{L1} (u1,u2,q1,q2,u0)
    std::vector<double> balance_residual;  ///< one shorter than t
    std::vector<double> gap1, gap2;
};

/// Needs a stride-1 trajectory.
DiagnosticSeries compute_series(const Trajectory5& traj, const Params& p, const Grid1D& g);

/// Least-squares slope of log(values) against log(eps).
double fit_order(std::span<const double> eps, std::span<const double> values);

struct ConvergenceReport {
    std::vector<double> eps_list;
    std::vector<double> gap_q1u1, gap_q2u2;          ///< space-time L1
    std::vector<double> dist_u1, dist_u2, dist_u0;   ///< space-time L1, full vs reduced
    /// Fitted orders, present when at least two eps values remain after
    /// dropping the largest (the largest is kept only for two-point lists).
    std::optional<double> order_gap1, order_gap2, order_u1, order_u2, order_u0;
    std::string error;  ///< set when a run failed; rows before it are kept
};

struct StudyOptions {
    LimitReading reading = LimitReading::average;
    int threads = 1;  ///< concurrent eps runs
};

/// Runs the full system once per eps (eps_list strictly decreasing) and the
/// reduced system once, then measures relaxation gaps and distances.
ConvergenceReport convergence_study(const Params& p, const ProblemData& d, const Grid1D& g,
                                    std::span<const double> eps_list, const StudyOptions& opt = {});

struct ComparisonResult {
    double lhs = 0.0;    ///< sup_t ||U1 - U2||_{L1(0,L)}, five fields
    double rhs = 0.0;    ///< ||U1(0) - U2(0)||_{L1} + alpha ||u_b1 - u_b2||_{L1(0,T)}
    double slack = 0.0;  ///< rhs - lhs
};

ComparisonResult comparison_residual(const Trajectory5& run1, const Trajectory5& run2,
                                     const ProblemData& data1, const ProblemData& data2,
                                     const Params& p, const Grid1D& g);

struct CrossValidation {
    double distance = 0.0;  ///< space-time L1 distance, five fields
    int windows = 0;
    int max_iterations = 0;
    double max_ratio = 0.0;
};

CrossValidation cross_validate(const Params& p, const ProblemData& d, const Grid1D& g,
                               const PicardConfig& cfg);

/// Outcome of the a-priori estimate checks on one configuration.
struct InvariantReport {
    double min_val = 0.0;
    double linf_ratio = 0.0;
    double max_balance_excess = 0.0;  ///< max_n |r_n| - alpha dt TV(u1(t_n)); <= 0 expected
    bool nonneg_ok = false;
    bool linf_ok = false;
    bool balance_ok = false;
    bool ok() const { return nonneg_ok && linf_ok && balance_ok; }
};

inline constexpr double kNonnegTol = 1e-12;
inline constexpr double kLinfRelTol = 1e-9;

InvariantReport check_invariants(const Params& p, const ProblemData& d, const Grid1D& g);

/// One entry of the default invariant-check matrix.
struct MatrixCase {
    Params params;
    PresetOptions data;
    Preset preset = Preset::random_bv;
};

/// 12 configurations: K in {0, 1, 10} x Vm in {0, 1} x two eps values, the eps
/// values spanning [1e-4, 1]; random-BV ill-prepared data.
std::vector<MatrixCase> default_test_matrix();

}  // namespace henle

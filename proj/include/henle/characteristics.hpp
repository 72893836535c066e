/// @file characteristics.hpp
/// @brief Mild-solution solver: Duhamel formulas along characteristics and the
///        windowed Picard fixed-point iteration built on them.
///
/// Given frozen fields (u1~, u2~, q1~, q2~, u0~) the map T computes
///
///   u1 along x - alpha t = const with relaxation towards q1~ (rate 1/eps),
///      fed by the initial profile or by u_b through x = 0;
///   u2 along x + alpha t = const, fed by the initial profile or by the
///      trace u1(., L) through x = L;
///   q1, q2, u0 from linear ODEs with exponential kernels
///      e^{-(1/eps + K_i)(t-s)} and e^{-(K1+K2)(t-s)}.
///
/// All memory integrals use the product trapezoid rule: the integrand is
/// interpolated linearly between nodes and integrated exactly against the
/// exponential kernel, so constants are reproduced to rounding.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "henle/data.hpp"
#include "henle/grid_solver.hpp"
#include "henle/model.hpp"

namespace henle {

/// A field sampled in time and space: f(t, x).
using FieldFn = std::function<double(double, double)>;

/// Values of u1 at x = L on a time interval, used as inflow for u2.
struct BoundaryTrace {
    double t_begin = 0.0;
    double t_end = 0.0;
    std::function<double(double)> value;
};

/// Frozen previous iterate handed to the ODE update.
struct FrozenFields {
    FieldFn u1, u2, q1, q2, u0;
};

struct OdeValues {
    double q1 = 0.0, q2 = 0.0, u0 = 0.0;
};

struct PicardConfig {
    double window = 0.0;   ///< requested window length T0 [s]
    double tol = 1e-10;    ///< stopping threshold on sup_t (L1 + Linf) iterate distance
    int max_iter = 200;    ///< per-window iteration cap
    double eta = 0.0;      ///< K1 + K2 + 1/eps
    /// Reproduce the printed q2 ODE literally (K1 u0 coupling instead of K2 u0).
    bool literal_q2_coupling = false;

    /// Bound constant C_G = 1 + K1 + K2 + sup G'.
    static double bound_constant(const Params& p);
    /// Contraction bound min(1/eta, eps/C_G).
    static double contraction_bound(const Params& p);
    /// window = 0.5 * contraction_bound(p), tol = 1e-10.
    static PicardConfig defaults(const Params& p);
    /// Throws ConfigError unless 0 < window < contraction_bound(p) and tol > 0.
    void validate(const Params& p) const;
};

/// int_{s_0}^{t} e^{-rate (t - s)} f(s) ds for f linear between the nodes
/// (s_k, f_k); nodes increasing, s.back() <= t.
double exp_weighted_integral(double rate, double t, std::span<const double> s,
                             std::span<const double> f);

/// u1(t, x) from the Duhamel formula with `nodes` quadrature intervals.
double duhamel_u1(double t, double x, const FieldFn& prev_q1, const ProblemData& d,
                  const Params& p, int nodes);

/// u2(t, x) from the Duhamel formula; the boundary branch reads `u1_trace_at_L`
/// and throws InputError when the needed time is outside its coverage.
double duhamel_u2(double t, double x, const FieldFn& prev_q2, const BoundaryTrace& u1_trace_at_L,
                  const ProblemData& d, const Params& p, int nodes);

/// (q1, q2, u0)(t, x) from the three exponential-kernel ODE formulas.
OdeValues ode_update(double t, double x, const FrozenFields& prev, const ProblemData& d,
                     const Params& p, int nodes, bool literal_q2_coupling = false);

struct PicardResult {
    Trajectory5 trajectory;                   ///< one snapshot per lattice time
    std::vector<int> iterations;              ///< map applications per window
    std::vector<std::vector<double>> distances;  ///< successive-iterate distances per window
    double max_ratio = 0.0;  ///< largest d_{k+1}/d_k with d_k above round-off
    double window = 0.0;     ///< window actually used (whole lattice steps)
    int window_steps = 0;
};

/// Builds the mild solution on [0, T] by Picard iteration window by window on
/// the grid's characteristic lattice. Throws NonContractionError when a window
/// does not converge within cfg.max_iter map applications.
PicardResult picard_solve(const ProblemData& d, const Params& p, const Grid1D& g,
                          const PicardConfig& cfg);

}  // namespace henle

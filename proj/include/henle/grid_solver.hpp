/// @file grid_solver.hpp
/// @brief Characteristic-aligned upwind stepper for the full and reduced systems.
///
/// The time step is tied to the cell width (dt = dx / alpha), so one step of
/// lumen transport is an exact index shift. Each full step is
///
///   1. transport: u1 shifts one cell right with inflow u_b(t_n); u2 shifts one
///      cell left with inflow equal to the shifted u1 in the last cell;
///   2. exact relaxation of each (u_i, q_i) pair over dt/2;
///   3. one explicit Euler step of the K-exchange and pump terms;
///   4. exact relaxation over the remaining dt/2.
///
/// The reduced step is the eps -> 0 limit of the same sequence: each lumen
/// field is averaged with its shifted copy (speed alpha/2) and then takes one
/// explicit Euler step of the reduced source.
///
/// Both steps preserve nonnegativity and conserve the total amount exchanged
/// between compartments as long as dt (K1 + K2 + sup G') <= 1, which the grid
/// checks once up front.

#pragma once

#include <cstddef>
#include <vector>

#include "henle/data.hpp"
#include "henle/model.hpp"

namespace henle {

/// Uniform cell-centred grid with CFL number exactly one.
struct Grid1D {
    int N = 0;        ///< cell count
    double L = 0.0;   ///< domain length
    double dx = 0.0;  ///< L / N
    double dt = 0.0;  ///< dx / alpha
    int M = 0;        ///< ceil(T / dt) steps

    /// Builds the grid for p; throws ConfigError for N < 2 or when the explicit
    /// exchange step would lose positivity (dt (K1 + K2 + sup G') > 1).
    static Grid1D make(int N, const Params& p);

    double x(int i) const { return (i + 0.5) * dx; }
    double t(int n) const { return n * dt; }
};

enum class Model { full, reduced };

/// Per-step boundary record: traces before the step at t = t_n.
struct BoundarySample {
    double t = 0.0;
    double u1_at_L = 0.0;  ///< u1 in the last cell
    double u2_at_0 = 0.0;  ///< u2 in the first cell
    double u_b = 0.0;      ///< inflow value used for this step
};

template <class State>
struct Trajectory {
    std::vector<State> snapshots;          ///< strictly increasing times
    std::vector<BoundarySample> boundary;  ///< one entry per step
    int stride = 1;                        ///< steps between snapshots
};

using Trajectory5 = Trajectory<State5>;
using Trajectory3 = Trajectory<State3>;

/// Advances the full system by one grid step.
State5 step_full(const State5& s, const Grid1D& g, const Params& p, double ub_now);

/// Advances the reduced system by one grid step.
State3 step_reduced(const State3& s, const Grid1D& g, const Params& p, double ub_now);

struct RunOptions {
    int stride = 1;  ///< snapshot every `stride` steps (the final step is always kept)
};

/// Integrates the full system from its sampled initial data to T.
Trajectory5 run_full(const Params& p, const ProblemData& d, const Grid1D& g,
                     const RunOptions& opt = {});

/// Integrates the reduced system from `init` (see limit-layer helpers for the
/// conversion of full-system data) to T.
Trajectory3 run_reduced(const Params& p, const State3& init, const ProblemData& d,
                        const Grid1D& g, const RunOptions& opt = {});

/// Full-system run starting from an explicit state instead of sampled data;
/// u_b is still taken from d.
Trajectory5 run_full_from(const Params& p, const State5& init, const ProblemData& d,
                          const Grid1D& g, const RunOptions& opt = {});

/// Exact solution of du/dt = (q-u)/eps, dq/dt = (u-q)/eps over `tau`.
void relax_pair(double& u, double& q, double tau, double eps);

}  // namespace henle

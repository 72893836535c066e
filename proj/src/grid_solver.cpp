/// @file grid_solver.cpp
/// @brief Split-step upwind solver (exact transport, exact stiff relaxation).

#include "henle/grid_solver.hpp"

#include <cmath>
#include <sstream>

#include "henle/errors.hpp"

namespace henle {

namespace {

void check_alignment(const Grid1D& g, const Params& p, std::size_t cells) {
    if (g.N < 2 || static_cast<std::size_t>(g.N) != cells)
        throw ConfigError("grid/state size mismatch");
    if (std::fabs(g.dt * p.alpha - g.dx) > 1e-12 * g.dx || std::fabs(g.N * g.dx - p.L) > 1e-12 * p.L)
        throw ConfigError("grid is not CFL-aligned with the parameters (need dt * alpha == dx)");
}

// u_new[i] = u[i-1], u_new[0] = inflow
void shift_right(std::vector<double>& u, double inflow) {
    for (std::size_t i = u.size() - 1; i > 0; --i) u[i] = u[i - 1];
    u[0] = inflow;
}

// u_new[i] = u[i+1], u_new[N-1] = inflow
void shift_left(std::vector<double>& u, double inflow) {
    for (std::size_t i = 0; i + 1 < u.size(); ++i) u[i] = u[i + 1];
    u.back() = inflow;
}

template <class State>
void record_boundary(Trajectory<State>& traj, const State& s, double t, double ub) {
    traj.boundary.push_back({t, s.u1.back(), s.u2.front(), ub});
}

template <class State, class Step>
Trajectory<State> integrate(State s, const ProblemData& d, const Grid1D& g, const RunOptions& opt,
                            Step&& step) {
    if (opt.stride < 1) throw ConfigError("snapshot stride must be >= 1");
    Trajectory<State> traj;
    traj.stride = opt.stride;
    traj.boundary.reserve(static_cast<std::size_t>(g.M));
    traj.snapshots.push_back(s);
    for (int n = 0; n < g.M; ++n) {
        const double t = g.t(n);
        const double ub = d.u_b(t);
        record_boundary(traj, s, t, ub);
        s = step(s, ub);
        s.t = g.t(n + 1);
        if (!s.all_finite()) {
            std::ostringstream msg;
            msg << "non-finite value after step " << n + 1 << " (t = " << s.t << ")";
            throw SolverError(msg.str());
        }
        if ((n + 1) % opt.stride == 0 || n + 1 == g.M) traj.snapshots.push_back(s);
    }
    return traj;
}

}  // namespace

Grid1D Grid1D::make(int N, const Params& p) {
    p.validate();
    if (N < 2) throw ConfigError("grid needs N >= 2 cells");
    Grid1D g;
    g.N = N;
    g.L = p.L;
    g.dx = p.L / N;
    g.dt = g.dx / p.alpha;
    g.M = static_cast<int>(std::ceil(p.T / g.dt - 1e-9));
    if (g.M < 1) g.M = 1;
    const double load = g.dt * (p.K1 + p.K2 + p.g_prime_sup());
    if (load > 1.0) {
        std::ostringstream msg;
        msg << "time step too large for the explicit exchange step: dt*(K1+K2+sup G') = " << load
            << " > 1; increase N";
        throw ConfigError(msg.str());
    }
    return g;
}

void relax_pair(double& u, double& q, double tau, double eps) {
    // convex weights keep both values between the old u and q
    const double far = -0.5 * std::expm1(-2.0 * tau / eps);  // (1 - e^{-2 tau/eps}) / 2
    const double near = 1.0 - far;
    const double un = near * u + far * q;
    const double qn = far * u + near * q;
    u = un;
    q = qn;
}

State5 step_full(const State5& s, const Grid1D& g, const Params& p, double ub_now) {
    if (!s.consistent()) throw InputError("step_full: fields have different lengths");
    check_alignment(g, p, s.size());
    State5 out = s;
    shift_right(out.u1, ub_now);
    shift_left(out.u2, out.u1.back());

    const double half = 0.5 * g.dt;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double& u1 = out.u1[i];
        double& u2 = out.u2[i];
        double& q1 = out.q1[i];
        double& q2 = out.q2[i];
        double& u0 = out.u0[i];
        relax_pair(u1, q1, half, p.eps);
        relax_pair(u2, q2, half, p.eps);
        const double dq1 = g.dt * p.K1 * (u0 - q1);
        const double dq2 = g.dt * (p.K2 * (u0 - q2) - eval_G(q2, p));
        q1 += dq1;
        q2 += dq2;
        u0 -= dq1 + dq2;
        relax_pair(u1, q1, half, p.eps);
        relax_pair(u2, q2, half, p.eps);
    }
    out.t = s.t + g.dt;
    return out;
}

State3 step_reduced(const State3& s, const Grid1D& g, const Params& p, double ub_now) {
    if (!s.consistent()) throw InputError("step_reduced: fields have different lengths");
    check_alignment(g, p, s.size());
    State3 out = s;
    std::vector<double> u1s = s.u1;
    std::vector<double> u2s = s.u2;
    shift_right(u1s, ub_now);
    shift_left(u2s, u1s.back());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.u1[i] = 0.5 * (s.u1[i] + u1s[i]);
        out.u2[i] = 0.5 * (s.u2[i] + u2s[i]);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto r = source_rates_reduced(out.u1[i], out.u2[i], out.u0[i], p);
        out.u1[i] += g.dt * r[0];
        out.u2[i] += g.dt * r[1];
        out.u0[i] += g.dt * r[2];
    }
    out.t = s.t + g.dt;
    return out;
}

Trajectory5 run_full_from(const Params& p, const State5& init, const ProblemData& d,
                          const Grid1D& g, const RunOptions& opt) {
    check_alignment(g, p, init.size());
    if (!init.consistent()) throw InputError("run_full: initial fields have different lengths");
    return integrate(init, d, g, opt,
                     [&](const State5& s, double ub) { return step_full(s, g, p, ub); });
}

Trajectory5 run_full(const Params& p, const ProblemData& d, const Grid1D& g,
                     const RunOptions& opt) {
    return run_full_from(p, initial_state5(d, g.N, p.L), d, g, opt);
}

Trajectory3 run_reduced(const Params& p, const State3& init, const ProblemData& d,
                        const Grid1D& g, const RunOptions& opt) {
    check_alignment(g, p, init.size());
    if (!init.consistent()) throw InputError("run_reduced: initial fields have different lengths");
    return integrate(init, d, g, opt,
                     [&](const State3& s, double ub) { return step_reduced(s, g, p, ub); });
}

}  // namespace henle

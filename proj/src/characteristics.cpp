/// @file characteristics.cpp
/// @brief Duhamel formulas and the windowed Picard iteration.

#include "henle/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "henle/errors.hpp"

namespace henle {

namespace {

// phi1(z) = (1 - e^{-z}) / z
double phi1(double z) {
    if (z < 1e-2) return 1.0 - z / 2 + z * z / 6 - z * z * z / 24 + z * z * z * z / 120;
    return -std::expm1(-z) / z;
}

// phi2(z) = (1 - phi1(z)) / z
double phi2(double z) {
    if (z < 1e-2)
        return 0.5 - z / 6 + z * z / 24 - z * z * z / 120 + z * z * z * z / 720 -
               z * z * z * z * z / 5040;
    return (1.0 - phi1(z)) / z;
}

// Product-trapezoid weights over one interval of length h:
//   int_0^h e^{-rate (h - r)} f(r) dr = w_start f(0) + w_end f(h) for linear f.
struct ExpTrap {
    double w_start = 0.0;
    double w_end = 0.0;
    double decay = 1.0;  // e^{-rate h}

    ExpTrap(double rate, double h) {
        const double z = rate * h;
        w_end = h * phi2(z);
        w_start = h * phi1(z) - w_end;
        decay = std::exp(-z);
    }
};

// Uniform nodes between a and b.
std::vector<double> linspace(double a, double b, int intervals) {
    std::vector<double> s(static_cast<std::size_t>(intervals) + 1);
    for (int k = 0; k <= intervals; ++k) s[static_cast<std::size_t>(k)] = a + (b - a) * k / intervals;
    s.back() = b;
    return s;
}

void check_point(double t, double x, const Params& p, const char* who) {
    if (!(t >= 0.0) || !(x >= 0.0) || !(x <= p.L) || !std::isfinite(t))
        throw InputError(std::string(who) + ": point outside [0, T] x [0, L]");
}

// Fields on one Picard window, index n * N + i for local time n and cell i.
struct WindowFields {
    int steps = 0;  // W: local times 0..W
    int N = 0;
    std::vector<double> u1, u2, q1, q2, u0;

    WindowFields(int w, int n)
        : steps(w), N(n),
          u1(static_cast<std::size_t>((w + 1) * n)), u2(u1.size()), q1(u1.size()),
          q2(u1.size()), u0(u1.size()) {}

    std::size_t at(int n, int i) const { return static_cast<std::size_t>(n * N + i); }

    static WindowFields constant_in_time(const State5& s, int w) {
        const int n = static_cast<int>(s.size());
        WindowFields f(w, n);
        for (int k = 0; k <= w; ++k) {
            std::copy(s.u1.begin(), s.u1.end(), f.u1.begin() + k * n);
            std::copy(s.u2.begin(), s.u2.end(), f.u2.begin() + k * n);
            std::copy(s.q1.begin(), s.q1.end(), f.q1.begin() + k * n);
            std::copy(s.q2.begin(), s.q2.end(), f.q2.begin() + k * n);
            std::copy(s.u0.begin(), s.u0.end(), f.u0.begin() + k * n);
        }
        return f;
    }

    State5 state(int n, double t) const {
        State5 s;
        auto slice = [&](const std::vector<double>& v) {
            return std::vector<double>(v.begin() + n * N, v.begin() + (n + 1) * N);
        };
        s.u1 = slice(u1);
        s.u2 = slice(u2);
        s.q1 = slice(q1);
        s.q2 = slice(q2);
        s.u0 = slice(u0);
        s.t = t;
        return s;
    }
};

// sup over local times of (L1 + Linf) distance summed over the five fields
double window_distance(const WindowFields& a, const WindowFields& b, double dx) {
    const std::vector<double>* fa[] = {&a.u1, &a.u2, &a.q1, &a.q2, &a.u0};
    const std::vector<double>* fb[] = {&b.u1, &b.u2, &b.q1, &b.q2, &b.u0};
    double sup = 0.0;
    for (int n = 0; n <= a.steps; ++n) {
        double l1 = 0.0, linf = 0.0;
        for (int f = 0; f < 5; ++f) {
            for (int i = 0; i < a.N; ++i) {
                const double diff = std::fabs((*fa[f])[a.at(n, i)] - (*fb[f])[a.at(n, i)]);
                l1 += diff;
                linf = std::max(linf, diff);
            }
        }
        sup = std::max(sup, l1 * dx + linf);
    }
    return sup;
}

// One application of the fixed-point map on a window starting at global time t0.
// Every update below is the Duhamel formula evaluated with the product
// trapezoid rule, written recursively along characteristics (the semigroup
// property of the exponential kernel).
WindowFields picard_map(const WindowFields& prev, const ProblemData& d, const Params& p, double dt,
                        double t0, bool literal_q2) {
    const int W = prev.steps;
    const int N = prev.N;
    WindowFields next(W, N);
    for (int i = 0; i < N; ++i) {
        const auto k = next.at(0, i);
        next.u1[k] = prev.u1[k];
        next.u2[k] = prev.u2[k];
        next.q1[k] = prev.q1[k];
        next.q2[k] = prev.q2[k];
        next.u0[k] = prev.u0[k];
    }

    const double inv_eps = 1.0 / p.eps;
    const ExpTrap lumen(inv_eps, dt);
    const ExpTrap epi1(inv_eps + p.K1, dt);
    const ExpTrap epi2(inv_eps + p.K2, dt);
    const ExpTrap inter(p.K1 + p.K2, dt);
    const double half_decay = std::exp(-0.5 * dt * inv_eps);
    const double half_gain = -std::expm1(-0.5 * dt * inv_eps);
    const double ku0_q2 = literal_q2 ? p.K1 : p.K2;

    for (int n = 1; n <= W; ++n) {
        // descending lumen: inflow through x = 0 over the last half step
        {
            const double ub = d.u_b(t0 + (n - 0.5) * dt);
            next.u1[next.at(n, 0)] = ub * half_decay + prev.q1[prev.at(n, 0)] * half_gain;
        }
        for (int i = 1; i < N; ++i) {
            const auto from = prev.at(n - 1, i - 1);
            const auto to = prev.at(n, i);
            next.u1[to] = lumen.decay * next.u1[from] +
                          inv_eps * (lumen.w_start * prev.q1[from] + lumen.w_end * prev.q1[to]);
        }
        // ascending lumen: inflow is the trace u1(., L) at the crossing time
        {
            const auto last_prev = next.at(n - 1, N - 1);
            const double trace =
                next.u1[last_prev] * half_decay + prev.q1[last_prev] * half_gain;
            const auto to = next.at(n, N - 1);
            next.u2[to] = trace * half_decay + prev.q2[to] * half_gain;
        }
        for (int i = 0; i + 1 < N; ++i) {
            const auto from = prev.at(n - 1, i + 1);
            const auto to = prev.at(n, i);
            next.u2[to] = lumen.decay * next.u2[from] +
                          inv_eps * (lumen.w_start * prev.q2[from] + lumen.w_end * prev.q2[to]);
        }
        // epithelium and interstitium: pointwise ODEs
        for (int i = 0; i < N; ++i) {
            const auto a = prev.at(n - 1, i);
            const auto b = prev.at(n, i);
            const double g_a = eval_G(prev.q2[a], p);
            const double g_b = eval_G(prev.q2[b], p);
            const double f1a = inv_eps * prev.u1[a] + p.K1 * prev.u0[a];
            const double f1b = inv_eps * prev.u1[b] + p.K1 * prev.u0[b];
            const double f2a = inv_eps * prev.u2[a] + ku0_q2 * prev.u0[a] - g_a;
            const double f2b = inv_eps * prev.u2[b] + ku0_q2 * prev.u0[b] - g_b;
            const double f0a = p.K1 * prev.q1[a] + p.K2 * prev.q2[a] + g_a;
            const double f0b = p.K1 * prev.q1[b] + p.K2 * prev.q2[b] + g_b;
            next.q1[b] = epi1.decay * next.q1[a] + epi1.w_start * f1a + epi1.w_end * f1b;
            next.q2[b] = epi2.decay * next.q2[a] + epi2.w_start * f2a + epi2.w_end * f2b;
            next.u0[b] = inter.decay * next.u0[a] + inter.w_start * f0a + inter.w_end * f0b;
        }
    }
    return next;
}

}  // namespace

double PicardConfig::bound_constant(const Params& p) {
    return 1.0 + p.K1 + p.K2 + p.g_prime_sup();
}

double PicardConfig::contraction_bound(const Params& p) {
    const double eta = p.K1 + p.K2 + 1.0 / p.eps;
    return std::min(1.0 / eta, p.eps / bound_constant(p));
}

PicardConfig PicardConfig::defaults(const Params& p) {
    PicardConfig cfg;
    cfg.eta = p.K1 + p.K2 + 1.0 / p.eps;
    cfg.window = 0.5 * contraction_bound(p);
    return cfg;
}

void PicardConfig::validate(const Params& p) const {
    if (!(tol > 0.0)) throw ConfigError("Picard tolerance must be positive");
    if (max_iter < 1) throw ConfigError("Picard max_iter must be >= 1");
    const double bound = contraction_bound(p);
    if (!(window > 0.0) || !(window < bound)) {
        std::ostringstream msg;
        msg << "Picard window " << window << " violates the contraction condition 0 < T0 < "
            << bound;
        throw ConfigError(msg.str());
    }
}

double exp_weighted_integral(double rate, double t, std::span<const double> s,
                             std::span<const double> f) {
    if (s.size() != f.size() || s.empty())
        throw InputError("exp_weighted_integral: node and value counts differ");
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        const double h = s[k + 1] - s[k];
        if (h < 0.0) throw InputError("exp_weighted_integral: nodes must increase");
        if (h == 0.0) continue;
        const ExpTrap w(rate, h);
        acc += std::exp(-rate * (t - s[k + 1])) * (w.w_start * f[k] + w.w_end * f[k + 1]);
    }
    return acc;
}

double duhamel_u1(double t, double x, const FieldFn& prev_q1, const ProblemData& d,
                  const Params& p, int nodes) {
    check_point(t, x, p, "duhamel_u1");
    if (nodes < 1) throw InputError("duhamel_u1: need at least one quadrature interval");
    const double inv_eps = 1.0 / p.eps;
    // foot of the characteristic: (0, x - alpha t) or (t - x/alpha, 0)
    const bool from_initial = x >= p.alpha * t;
    const double s0 = from_initial ? 0.0 : t - x / p.alpha;
    const double x0 = from_initial ? x - p.alpha * t : 0.0;
    if (x0 < 0.0 || x0 > p.L) throw InputError("duhamel_u1: characteristic foot outside domain");
    const double foot = from_initial ? d.u1_0(x0) : d.u_b(s0);
    const auto s = linspace(s0, t, nodes);
    std::vector<double> f(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        f[k] = prev_q1(s[k], std::clamp(x0 + p.alpha * (s[k] - s0), 0.0, p.L));
    return foot * std::exp(-(t - s0) * inv_eps) + inv_eps * exp_weighted_integral(inv_eps, t, s, f);
}

double duhamel_u2(double t, double x, const FieldFn& prev_q2, const BoundaryTrace& u1_trace_at_L,
                  const ProblemData& d, const Params& p, int nodes) {
    check_point(t, x, p, "duhamel_u2");
    if (nodes < 1) throw InputError("duhamel_u2: need at least one quadrature interval");
    const double inv_eps = 1.0 / p.eps;
    const bool from_initial = x <= p.L - p.alpha * t;
    const double s0 = from_initial ? 0.0 : t - (p.L - x) / p.alpha;
    const double x0 = from_initial ? x + p.alpha * t : p.L;
    double foot = 0.0;
    if (from_initial) {
        foot = d.u2_0(x0);
    } else {
        if (!u1_trace_at_L.value || s0 < u1_trace_at_L.t_begin || s0 > u1_trace_at_L.t_end)
            throw InputError("duhamel_u2: u1 trace at x = L does not cover the crossing time");
        foot = u1_trace_at_L.value(s0);
    }
    const auto s = linspace(s0, t, nodes);
    std::vector<double> f(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        f[k] = prev_q2(s[k], std::clamp(x0 - p.alpha * (s[k] - s0), 0.0, p.L));
    return foot * std::exp(-(t - s0) * inv_eps) + inv_eps * exp_weighted_integral(inv_eps, t, s, f);
}

OdeValues ode_update(double t, double x, const FrozenFields& prev, const ProblemData& d,
                     const Params& p, int nodes, bool literal_q2_coupling) {
    check_point(t, x, p, "ode_update");
    if (nodes < 1) throw InputError("ode_update: need at least one quadrature interval");
    const double inv_eps = 1.0 / p.eps;
    const double ku0_q2 = literal_q2_coupling ? p.K1 : p.K2;
    const auto s = linspace(0.0, t, nodes);
    std::vector<double> f1(s.size()), f2(s.size()), f0(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double u1 = prev.u1(s[k], x), u2 = prev.u2(s[k], x), u0 = prev.u0(s[k], x);
        const double q1 = prev.q1(s[k], x), q2 = prev.q2(s[k], x);
        const double g = eval_G(q2, p);
        f1[k] = inv_eps * u1 + p.K1 * u0;
        f2[k] = inv_eps * u2 + ku0_q2 * u0 - g;
        f0[k] = p.K1 * q1 + p.K2 * q2 + g;
    }
    const double r1 = inv_eps + p.K1, r2 = inv_eps + p.K2, r0 = p.K1 + p.K2;
    OdeValues out;
    out.q1 = d.q1_0(x) * std::exp(-r1 * t) + exp_weighted_integral(r1, t, s, f1);
    out.q2 = d.q2_0(x) * std::exp(-r2 * t) + exp_weighted_integral(r2, t, s, f2);
    out.u0 = d.u0_0(x) * std::exp(-r0 * t) + exp_weighted_integral(r0, t, s, f0);
    return out;
}

PicardResult picard_solve(const ProblemData& d, const Params& p, const Grid1D& g,
                          const PicardConfig& cfg) {
    cfg.validate(p);
    if (std::fabs(g.dt * p.alpha - g.dx) > 1e-12 * g.dx)
        throw ConfigError("picard_solve: grid is not CFL-aligned");
    // whole lattice steps only; a window shorter than one step is widened to one
    const int W = std::max(1, static_cast<int>(std::floor(cfg.window / g.dt + 1e-9)));

    PicardResult result;
    result.window_steps = W;
    result.window = W * g.dt;
    auto& traj = result.trajectory;
    State5 start = initial_state5(d, g.N, p.L);
    traj.snapshots.push_back(start);
    traj.boundary.reserve(static_cast<std::size_t>(g.M));

    for (int base = 0; base < g.M; base += W) {
        const int steps = std::min(W, g.M - base);
        const double t0 = g.t(base);
        WindowFields iterate = WindowFields::constant_in_time(start, steps);
        std::vector<double> dist;
        bool converged = false;
        for (int k = 0; k < cfg.max_iter; ++k) {
            WindowFields next = picard_map(iterate, d, p, g.dt, t0, cfg.literal_q2_coupling);
            dist.push_back(window_distance(next, iterate, g.dx));
            iterate = std::move(next);
            if (dist.back() < cfg.tol) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            std::ostringstream msg;
            msg << "Picard iteration did not converge in " << cfg.max_iter
                << " iterations on window starting at t = " << t0 << " (last distance "
                << dist.back() << ")";
            throw NonContractionError(msg.str());
        }
        for (std::size_t k = 0; k + 1 < dist.size(); ++k) {
            if (dist[k] > 1e-12) result.max_ratio = std::max(result.max_ratio, dist[k + 1] / dist[k]);
        }
        result.iterations.push_back(static_cast<int>(dist.size()));
        result.distances.push_back(std::move(dist));

        for (int n = 1; n <= steps; ++n) {
            const State5 prev_state = iterate.state(n - 1, g.t(base + n - 1));
            const double tn = g.t(base + n - 1);
            traj.boundary.push_back({tn, prev_state.u1.back(), prev_state.u2.front(), d.u_b(tn)});
            State5 s = iterate.state(n, g.t(base + n));
            if (!s.all_finite()) throw SolverError("Picard iterate became non-finite");
            traj.snapshots.push_back(std::move(s));
        }
        start = traj.snapshots.back();
    }
    return result;
}

}  // namespace henle

/// @file diagnostics.cpp
/// @brief A-priori estimate checks, relaxation-limit study and cross-solver comparison.

#include "henle/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "henle/errors.hpp"

namespace henle {

namespace {

double l1(std::span<const double> a, double dx) {
    double s = 0.0;
    for (double v : a) s += std::fabs(v);
    return s * dx;
}

double l1_diff(std::span<const double> a, std::span<const double> b, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s * dx;
}

double l1_diff5(const State5& a, const State5& b, double dx) {
    return l1_diff(a.u1, b.u1, dx) + l1_diff(a.u2, b.u2, dx) + l1_diff(a.q1, b.q1, dx) +
           l1_diff(a.q2, b.q2, dx) + l1_diff(a.u0, b.u0, dx);
}

void require_stride_one(const Trajectory5& traj, const Grid1D& g, const char* who) {
    if (traj.stride != 1 || traj.snapshots.size() != static_cast<std::size_t>(g.M) + 1)
        throw InputError(std::string(who) + ": needs a stride-1 trajectory covering every step");
    if (traj.boundary.size() != static_cast<std::size_t>(g.M))
        throw InputError(std::string(who) + ": boundary traces missing");
}

template <class State>
double min_over(const State& s) {
    double m = std::numeric_limits<double>::infinity();
    auto scan = [&](const std::vector<double>& v) {
        for (double x : v) m = std::min(m, x);
    };
    scan(s.u1);
    scan(s.u2);
    scan(s.u0);
    if constexpr (std::is_same_v<State, State5>) {
        scan(s.q1);
        scan(s.q2);
    }
    return m;
}

double max_over(const State5& s) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto* v : {&s.u1, &s.u2, &s.q1, &s.q2, &s.u0})
        for (double x : *v) m = std::max(m, x);
    return m;
}

}  // namespace

double mass_functional(const State5& s, const Grid1D& g) {
    return l1(s.u1, g.dx) + l1(s.u2, g.dx) + l1(s.u0, g.dx) + l1(s.q1, g.dx) + l1(s.q2, g.dx);
}

std::vector<double> balance_residual(const Trajectory5& traj, const Params& p, const Grid1D& g) {
    require_stride_one(traj, g, "balance_residual");
    std::vector<double> r(static_cast<std::size_t>(g.M));
    double h_prev = mass_functional(traj.snapshots[0], g);
    for (std::size_t n = 0; n < r.size(); ++n) {
        const double h_next = mass_functional(traj.snapshots[n + 1], g);
        const auto& b = traj.boundary[n];
        r[n] = h_next - h_prev + g.dt * p.alpha * std::fabs(b.u2_at_0) -
               g.dt * p.alpha * std::fabs(b.u_b);
        h_prev = h_next;
    }
    return r;
}

double check_nonneg(const Trajectory5& traj) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : traj.snapshots) m = std::min(m, min_over(s));
    return m;
}

double check_nonneg(const Trajectory3& traj) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : traj.snapshots) m = std::min(m, min_over(s));
    return m;
}

double linf_kappa(const Params& p, const ProblemData& d, const Grid1D& g) {
    double kappa = p.g_sup();
    const auto s = sample_initial(d, g.N, p.L);
    for (const auto* v : {&s.u1, &s.u2, &s.q1, &s.q2, &s.u0})
        for (double x : *v) kappa = std::max(kappa, std::fabs(x));
    for (int n = 0; n <= g.M; ++n) kappa = std::max(kappa, std::fabs(d.u_b(g.t(n))));
    return kappa;
}

double check_linf(const Trajectory5& traj, const Params& p, const ProblemData& d, const Grid1D& g) {
    const double kappa = linf_kappa(p, d, g);
    if (kappa == 0.0) {
        // all data and the pump vanish: any nonzero sample is an infinite violation
        for (const auto& s : traj.snapshots)
            if (max_over(s) > 0.0) return std::numeric_limits<double>::infinity();
        return 0.0;
    }
    double worst = 0.0;
    for (const auto& s : traj.snapshots) worst = std::max(worst, max_over(s) / (kappa * (1.0 + s.t)));
    return worst;
}

double total_variation(std::span<const double> f) {
    double tv = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) tv += std::fabs(f[i] - f[i - 1]);
    return tv;
}

std::vector<GapSample> relaxation_gap(const Trajectory5& traj, const Grid1D& g) {
    std::vector<GapSample> out;
    out.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots)
        out.push_back({s.t, l1_diff(s.q1, s.u1, g.dx), l1_diff(s.q2, s.u2, g.dx)});
    return out;
}

DiagnosticSeries compute_series(const Trajectory5& traj, const Params& p, const Grid1D& g) {
    require_stride_one(traj, g, "compute_series");
    DiagnosticSeries ds;
    ds.balance_residual = balance_residual(traj, p, g);
    ds.tv_t.assign(5, 0.0);
    const State5* prev = nullptr;
    for (const auto& s : traj.snapshots) {
        ds.t.push_back(s.t);
        ds.H.push_back(mass_functional(s, g));
        ds.min_val.push_back(min_over(s));
        ds.max_val.push_back(max_over(s));
        ds.tv_x.push_back(total_variation(s.u1) + total_variation(s.u2) + total_variation(s.q1) +
                          total_variation(s.q2) + total_variation(s.u0));
        ds.gap1.push_back(l1_diff(s.q1, s.u1, g.dx));
        ds.gap2.push_back(l1_diff(s.q2, s.u2, g.dx));
        if (prev) {
            ds.tv_t[0] += l1_diff(s.u1, prev->u1, g.dx);
            ds.tv_t[1] += l1_diff(s.u2, prev->u2, g.dx);
            ds.tv_t[2] += l1_diff(s.q1, prev->q1, g.dx);
            ds.tv_t[3] += l1_diff(s.q2, prev->q2, g.dx);
            ds.tv_t[4] += l1_diff(s.u0, prev->u0, g.dx);
        }
        prev = &s;
    }
    return ds;
}

double fit_order(std::span<const double> eps, std::span<const double> values) {
    if (eps.size() != values.size() || eps.size() < 2)
        throw InputError("fit_order: need at least two matching points");
    const auto n = static_cast<double>(eps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double x = std::log(eps[k]);
        const double y = std::log(values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(const Params& p, const ProblemData& d, const Grid1D& g,
                                    std::span<const double> eps_list, const StudyOptions& opt) {
    if (eps_list.empty()) throw ConfigError("convergence study needs at least one eps");
    for (std::size_t k = 1; k < eps_list.size(); ++k)
        if (!(eps_list[k] < eps_list[k - 1]))
            throw ConfigError("eps list must be strictly decreasing");

    const auto reduced = run_reduced(p, limit_initial_state(d, g.N, p.L, opt.reading), d, g);

    struct Row {
        double gap1 = 0, gap2 = 0, d1 = 0, d2 = 0, d0 = 0;
        std::exception_ptr error;
    };
    std::vector<Row> rows(eps_list.size());

    auto work = [&](std::size_t k) {
        try {
            Params pe = p;
            pe.eps = eps_list[k];
            pe.validate();
            const auto full = run_full(pe, d, g);
            Row& row = rows[k];
            for (int n = 0; n < g.M; ++n) {
                const auto& a = full.snapshots[static_cast<std::size_t>(n)];
                const auto& b = reduced.snapshots[static_cast<std::size_t>(n)];
                row.gap1 += g.dt * l1_diff(a.q1, a.u1, g.dx);
                row.gap2 += g.dt * l1_diff(a.q2, a.u2, g.dx);
                row.d1 += g.dt * l1_diff(a.u1, b.u1, g.dx);
                row.d2 += g.dt * l1_diff(a.u2, b.u2, g.dx);
                row.d0 += g.dt * l1_diff(a.u0, b.u0, g.dx);
            }
        } catch (...) {
            rows[k].error = std::current_exception();
        }
    };

    const int threads = std::clamp(opt.threads, 1, static_cast<int>(eps_list.size()));
    if (threads == 1) {
        for (std::size_t k = 0; k < eps_list.size(); ++k) work(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < eps_list.size(); k = next++) work(k);
            });
    }

    ConvergenceReport rep;
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (rows[k].error) {
            try {
                std::rethrow_exception(rows[k].error);
            } catch (const std::exception& e) {
                rep.error = "run at eps = " + std::to_string(eps_list[k]) + " failed: " + e.what();
            }
            break;
        }
        rep.eps_list.push_back(eps_list[k]);
        rep.gap_q1u1.push_back(rows[k].gap1);
        rep.gap_q2u2.push_back(rows[k].gap2);
        rep.dist_u1.push_back(rows[k].d1);
        rep.dist_u2.push_back(rows[k].d2);
        rep.dist_u0.push_back(rows[k].d0);
    }

    // drop the largest eps when that still leaves two points
    const std::size_t first = rep.eps_list.size() >= 3 ? 1 : 0;
    if (rep.eps_list.size() - first >= 2) {
        const std::span<const double> e(rep.eps_list.begin() + static_cast<long>(first), rep.eps_list.end());
        auto fit = [&](const std::vector<double>& v) -> std::optional<double> {
            const std::span<const double> y(v.begin() + static_cast<long>(first), v.end());
            if (std::any_of(y.begin(), y.end(), [](double x) { return !(x > 0.0); })) return std::nullopt;
            return fit_order(e, y);
        };
        rep.order_gap1 = fit(rep.gap_q1u1);
        rep.order_gap2 = fit(rep.gap_q2u2);
        rep.order_u1 = fit(rep.dist_u1);
        rep.order_u2 = fit(rep.dist_u2);
        rep.order_u0 = fit(rep.dist_u0);
    }
    return rep;
}

ComparisonResult comparison_residual(const Trajectory5& run1, const Trajectory5& run2,
                                     const ProblemData& data1, const ProblemData& data2,
                                     const Params& p, const Grid1D& g) {
    if (run1.snapshots.size() != run2.snapshots.size())
        throw InputError("comparison_residual: runs have different snapshot counts");
    ComparisonResult res;
    for (std::size_t k = 0; k < run1.snapshots.size(); ++k)
        res.lhs = std::max(res.lhs, l1_diff5(run1.snapshots[k], run2.snapshots[k], g.dx));
    const auto a = initial_state5(data1, g.N, p.L);
    const auto b = initial_state5(data2, g.N, p.L);
    double ub = 0.0;
    for (int n = 0; n < g.M; ++n) ub += g.dt * std::fabs(data1.u_b(g.t(n)) - data2.u_b(g.t(n)));
    res.rhs = l1_diff5(a, b, g.dx) + p.alpha * ub;
    res.slack = res.rhs - res.lhs;
    return res;
}

CrossValidation cross_validate(const Params& p, const ProblemData& d, const Grid1D& g,
                               const PicardConfig& cfg) {
    const auto grid = run_full(p, d, g);
    const auto picard = picard_solve(d, p, g, cfg);
    CrossValidation cv;
    for (int n = 0; n < g.M; ++n) {
        const auto k = static_cast<std::size_t>(n);
        cv.distance += g.dt * l1_diff5(grid.snapshots[k], picard.trajectory.snapshots[k], g.dx);
    }
    cv.windows = static_cast<int>(picard.iterations.size());
    cv.max_iterations = picard.iterations.empty()
                            ? 0
                            : *std::max_element(picard.iterations.begin(), picard.iterations.end());
    cv.max_ratio = picard.max_ratio;
    return cv;
}

InvariantReport check_invariants(const Params& p, const ProblemData& d, const Grid1D& g) {
    const auto traj = run_full(p, d, g);
    InvariantReport rep;
    rep.min_val = check_nonneg(traj);
    rep.linf_ratio = check_linf(traj, p, d, g);
    const auto r = balance_residual(traj, p, g);
    rep.max_balance_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < r.size(); ++n) {
        const double bound = p.alpha * g.dt * total_variation(traj.snapshots[n].u1);
        rep.max_balance_excess = std::max(rep.max_balance_excess, std::fabs(r[n]) - bound);
    }
    rep.nonneg_ok = rep.min_val >= -kNonnegTol;
    rep.linf_ok = rep.linf_ratio <= 1.0 + kLinfRelTol;
    rep.balance_ok = rep.max_balance_excess <= 1e-12;
    return rep;
}

std::vector<MatrixCase> default_test_matrix() {
    std::vector<MatrixCase> cases;
    std::uint64_t seed = 11;
    for (double K : {0.0, 1.0, 10.0}) {
        for (double Vm : {0.0, 1.0}) {
            const double eps_pair[2][2] = {{1.0, 1e-2}, {1e-1, 1e-4}};
            for (double eps : eps_pair[Vm > 0.0 ? 1 : 0]) {
                MatrixCase c;
                c.params = Params::make(1.0, K, K, eps, Vm, 1.0, 1.0, 1.0);
                c.data.seed = seed++;
                c.data.value = 1.0;
                c.data.q_offset = 0.25;
                c.preset = Preset::random_bv;
                cases.push_back(c);
            }
        }
    }
    return cases;
}

}  // namespace henle

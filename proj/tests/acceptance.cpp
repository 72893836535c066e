/// @file acceptance.cpp
/// @brief One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "henle/characteristics.hpp"
#include "henle/cli.hpp"
#include "henle/diagnostics.hpp"
#include "henle/layers.hpp"

using namespace henle;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double l1(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s * dx;
}

// 1. nonnegativity over the default matrix
Outcome nonnegativity() {
    double worst = INFINITY;
    for (const auto& c : default_test_matrix()) {
        const auto g = Grid1D::make(200, c.params);
        worst = std::min(worst, check_nonneg(run_full(c.params, make_preset(c.preset, c.params, c.data), g)));
    }
    return {worst >= -1e-12, "min sample " + num(worst) + " (need >= -1e-12)"};
}

// 2. L-infinity bound kappa (1 + t)
Outcome linf_bound() {
    double worst = 0.0;
    for (const auto& c : default_test_matrix()) {
        const auto g = Grid1D::make(200, c.params);
        const auto d = make_preset(c.preset, c.params, c.data);
        worst = std::max(worst, check_linf(run_full(c.params, d, g), c.params, d, g));
    }
    return {worst <= 1.0 + 1e-9, "max sample / kappa(1+t) = " + num(worst) + " (need <= 1 + 1e-9)"};
}

// 3. mass balance: O(dt^2) residual and exact equilibrium
Outcome mass_balance() {
    const Params p;
    double worst[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
        const auto g = Grid1D::make(k == 0 ? 200 : 400, p);
        for (double r : balance_residual(run_full(p, make_preset(Preset::smooth, p), g), p, g))
            worst[k] = std::max(worst[k], std::fabs(r));
    }
    const double ratio = worst[0] / worst[1];

    Params q;
    q.Vm = 0.0;
    const auto gq = Grid1D::make(200, q);
    double eq = 0.0;
    for (double r : balance_residual(run_full(q, make_preset(Preset::constant, q), gq), q, gq))
        eq = std::max(eq, std::fabs(r));
    return {std::fabs(ratio - 4.0) <= 1.0 && eq <= 1e-13,
            "halving ratio " + num(ratio) + " (need 4 +/- 25%), equilibrium " + num(eq) + " (need <= 1e-13)"};
}

const std::vector<double> kEpsList{0.1, 0.05, 0.025, 0.0125};

ConvergenceReport bump_study() {
    const Params p;
    const auto g = Grid1D::make(400, p);
    return convergence_study(p, make_preset(Preset::bump, p), g, kEpsList,
                             {.reading = LimitReading::average, .threads = thread_cap()});
}

// 4. relaxation gap order
Outcome relaxation_gap_order(const ConvergenceReport& r) {
    if (!r.error.empty() || !r.order_gap1 || !r.order_gap2) return {false, "study failed: " + r.error};
    const double lo = std::min(*r.order_gap1, *r.order_gap2);
    return {lo >= 0.8, "slopes q1-u1 " + num(*r.order_gap1) + ", q2-u2 " + num(*r.order_gap2) + " (need >= 0.8)"};
}

// 5. convergence to the reduced solution
Outcome relaxation_convergence(const ConvergenceReport& r) {
    if (!r.error.empty() || !r.order_u1 || !r.order_u2 || !r.order_u0) return {false, "study failed: " + r.error};
    bool mono = true;
    for (const auto* v : {&r.dist_u1, &r.dist_u2, &r.dist_u0})
        for (std::size_t k = 1; k < v->size(); ++k) mono = mono && (*v)[k] < (*v)[k - 1];
    const double lo = std::min({*r.order_u1, *r.order_u2, *r.order_u0});
    return {mono && lo >= 0.5, std::string(mono ? "monotone" : "NOT monotone") + ", orders u1 " +
                                   num(*r.order_u1) + ", u2 " + num(*r.order_u2) + ", u0 " +
                                   num(*r.order_u0) + " (need >= 0.5)"};
}

// 6. initial layer, ill-prepared data
Outcome initial_layer() {
    Params p;
    p.eps = 1e-2;
    const auto g = Grid1D::make(400, p);
    const auto d = make_preset(Preset::bump, p, {.q_offset = 0.5});
    const auto s0 = sample_initial(d, g.N, p.L);
    const double ref = l1(s0.q1, s0.u1, g.dx);
    const auto traj = run_full(p, d, g);
    double worst = 0.0, literal = 0.0;
    for (const auto& s : traj.snapshots) {
        if (s.t > 10 * p.eps + 1e-12) break;
        const auto c = corrected_state(s, d, p);
        // (q - u) - (u~ - q~) = r1 - v1
        worst = std::max(worst, l1(c.r1, c.v1, g.dx));
        const auto layer = layer_eval(s.t / p.eps, s0);
        std::vector<double> a(s.size()), b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            a[i] = s.q1[i] - s.u1[i];
            b[i] = layer.q1t[i] - layer.u1t[i];
        }
        literal = std::max(literal, l1(a, b, g.dx));
    }
    return {worst <= 0.1 * ref, "max ||(q1-u1) - (u1~-q1~)|| / ||q1_0-u1_0|| = " + num(worst / ref) +
                                    " (need <= 0.1); printed sign (q1~-u1~) gives " + num(literal / ref)};
}

// 7. Picard contraction at the default window
Outcome picard_contraction() {
    const Params p;
    const auto g = Grid1D::make(200, p);
    const auto cfg = PicardConfig::defaults(p);
    const auto r = picard_solve(make_preset(Preset::smooth, p), p, g, cfg);
    const int iters = *std::max_element(r.iterations.begin(), r.iterations.end());
    const double bound = cfg.eta * r.window + 0.05;
    return {r.max_ratio <= bound && iters <= 60,
            "max ratio " + num(r.max_ratio) + " (need <= eta*T0 + 0.05 = " + num(bound) + "), max iterations " +
                std::to_string(iters) + " (need <= 60, tol 1e-10)"};
}

// 8. cross-solver distance proportional to dx
Outcome cross_solver() {
    const Params p;
    std::vector<double> C;
    for (int N : {100, 200, 400}) {
        const auto g = Grid1D::make(N, p);
        C.push_back(cross_validate(p, make_preset(Preset::smooth, p), g, PicardConfig::defaults(p)).distance / g.dx);
    }
    const double mean = (C[0] + C[1] + C[2]) / 3.0;
    double spread = 0.0;
    for (double c : C) spread = std::max(spread, std::fabs(c / mean - 1.0));
    return {spread <= 0.3, "C = " + num(C[0]) + ", " + num(C[1]) + ", " + num(C[2]) +
                               " (max deviation " + num(100 * spread) + "%, need <= 30%)"};
}

// 9. comparison principle on random paired perturbations
Outcome comparison() {
    const Params p;
    const auto g = Grid1D::make(200, p);
    const auto base = make_preset(Preset::random_bv, p, {.q_offset = 0.25, .seed = 101});
    const auto run1 = run_full(p, base, g);
    std::mt19937_64 rng(2024);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    double worst = -INFINITY;
    for (int k = 0; k < 5; ++k) {
        const double a = 0.3 * uniform(), c = 0.2 * uniform();
        const double x0 = 0.6 * uniform(), w = 0.1 + 0.3 * uniform();
        const double tb = 0.6 * uniform();
        auto bump = [a, x0, w](double x) { return (x >= x0 && x < x0 + w) ? a : 0.0; };
        ProblemData d = base;
        d.u1_0 = [f = base.u1_0, bump](double x) { return f(x) + bump(x); };
        d.q2_0 = [f = base.q2_0, bump](double x) { return f(x) + 0.5 * bump(x); };
        d.u0_0 = [f = base.u0_0, bump](double x) { return f(x) + bump(x); };
        d.u_b = [f = base.u_b, c, tb](double t) { return t >= tb ? f(t) + c : f(t); };
        const auto r = comparison_residual(run1, run_full(p, d, g), base, d, p, g);
        worst = std::max(worst, r.lhs - r.rhs);
    }
    return {worst <= 5 * g.dx, "max (lhs - rhs) = " + num(worst) + " (need <= 5 dx = " + num(5 * g.dx) + ")"};
}

// 10. regularization: no new variation, exact compatibility
Outcome regularization() {
    const Params p;
    constexpr int samples = 200001;
    double worst = 0.0;
    bool compatible = true;
    for (auto preset : {Preset::step, Preset::random_bv}) {
        const auto d = make_preset(preset, p, {.seed = 77});
        const double c = default_matching_constant(d, p);
        const RegularizationParams r{0.05, c, c};
        const auto blend = cutoff_blend(d, r, p);
        const auto reg = regularize(d, r, p);
        const std::pair<const Profile*, const Profile*> pairs[] = {
            {&blend.u1_0, &reg.u1_0}, {&blend.u2_0, &reg.u2_0}, {&blend.q1_0, &reg.q1_0},
            {&blend.q2_0, &reg.q2_0}, {&blend.u0_0, &reg.u0_0}};
        for (const auto& [in, out] : pairs) {
            const double tv_in = sampled_total_variation(*in, 0.0, p.L, samples);
            const double tv_out = sampled_total_variation(*out, 0.0, p.L, samples);
            if (tv_in > 0.0) worst = std::max(worst, tv_out / tv_in);
        }
        const double tb_in = sampled_total_variation(blend.u_b, 0.0, p.T, samples);
        const double tb_out = sampled_total_variation(reg.u_b, 0.0, p.T, samples);
        if (tb_in > 0.0) worst = std::max(worst, tb_out / tb_in);
        compatible = compatible && reg.u1_0(0.0) == reg.u_b(0.0) && reg.u2_0(p.L) == reg.u1_0(p.L);
    }
    return {worst <= 1.01 && compatible, "max TV(f_delta)/TV(blend) = " + num(worst) +
                                             " (need <= 1.01), u1(0) == u_b(0): " + (compatible ? "yes" : "no")};
}

// 11. byte-identical repeated runs
Outcome determinism() {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "henle_acceptance_det";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "c.cfg") << "data = random-bv\nseed = 5\nq_offset = 0.25\nmodel = both\n";
    auto slurp = [](const fs::path& f) {
        std::ifstream in(f, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const std::vector<std::string> files{"fields.csv", "fields_reduced.csv", "boundary.csv",
                                         "invariants.csv", "convergence.csv", "manifest.txt"};
    std::vector<std::string> first;
    for (int rep = 0; rep < 2; ++rep) {
        std::ostringstream out, err;
        const auto o = (dir / "o").string();
        if (run_command({"simulate", "--config", (dir / "c.cfg").string(), "--out", o}, out, err) != 0 ||
            run_command({"converge", "--config", (dir / "c.cfg").string(), "--out", o}, out, err) != 0)
            return {false, "run failed: " + err.str()};
        std::vector<std::string> now;
        for (const auto& f : files) now.push_back(slurp(dir / "o" / f));
        if (rep == 0) {
            first = now;
            fs::remove_all(dir / "o");
        } else if (now != first) {
            return {false, "outputs differ between runs"};
        }
    }
    return {true, std::to_string(files.size()) + " files identical across two runs"};
}

}  // namespace

int main() {
    const auto study = bump_study();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"nonnegativity", nonnegativity},
        {"L-infinity bound", linf_bound},
        {"mass balance", mass_balance},
        {"relaxation gap order", [&] { return relaxation_gap_order(study); }},
        {"convergence to reduced system", [&] { return relaxation_convergence(study); }},
        {"initial layer", initial_layer},
        {"Picard contraction", picard_contraction},
        {"cross-solver oracle", cross_solver},
        {"comparison principle", comparison},
        {"regularization", regularization},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2zu %s: %s -- %s\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                    o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

/// @file data.cpp
/// @brief Presets, sampling and validation of initial/boundary data.

#include "henle/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "henle/errors.hpp"

namespace henle {

namespace {

std::vector<double> sample(const Profile& f, int n, double L) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double dx = L / n;
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f((i + 0.5) * dx);
    return out;
}

// Uniform double in [0,1) from the top 53 bits; independent of the standard
// library's distribution implementation so seeds reproduce everywhere.
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Profile piecewise_constant(std::vector<double> levels, double length) {
    return [levels = std::move(levels), length](double x) {
        const auto n = static_cast<double>(levels.size());
        auto k = static_cast<long>(std::floor(x / length * n));
        k = std::clamp<long>(k, 0, static_cast<long>(levels.size()) - 1);
        return levels[static_cast<std::size_t>(k)];
    };
}

Profile with_offset(Profile f, double offset) {
    if (offset == 0.0) return f;
    return [f = std::move(f), offset](double x) { return f(x) + offset; };
}

}  // namespace

SampledData sample_initial(const ProblemData& d, int n, double L) {
    if (n < 1) throw InputError("sample_initial: need at least one cell");
    return {sample(d.u1_0, n, L), sample(d.u2_0, n, L), sample(d.q1_0, n, L),
            sample(d.q2_0, n, L), sample(d.u0_0, n, L), L / n};
}

State5 initial_state5(const ProblemData& d, int n, double L) {
    auto s = sample_initial(d, n, L);
    State5 st;
    st.u1 = std::move(s.u1);
    st.u2 = std::move(s.u2);
    st.q1 = std::move(s.q1);
    st.q2 = std::move(s.q2);
    st.u0 = std::move(s.u0);
    st.t = 0.0;
    return st;
}

void validate_data(const ProblemData& d, const Params& p, int n, int m) {
    const std::pair<const char*, const Profile*> profiles[] = {
        {"u1_0", &d.u1_0}, {"u2_0", &d.u2_0}, {"q1_0", &d.q1_0},
        {"q2_0", &d.q2_0}, {"u0_0", &d.u0_0}};
    for (const auto& [name, f] : profiles) {
        if (!*f) throw InputError(std::string("missing initial profile ") + name);
        for (double v : sample(*f, n, p.L)) {
            if (!std::isfinite(v) || v < 0.0)
                throw InputError(std::string("initial profile ") + name +
                                 " must be finite and nonnegative");
        }
    }
    if (!d.u_b) throw InputError("missing boundary trace u_b");
    for (int k = 0; k <= m; ++k) {
        const double v = d.u_b(p.T * k / m);
        if (!std::isfinite(v) || v < 0.0)
            throw InputError("boundary trace u_b must be finite and nonnegative");
    }
}

double data_sup(const ProblemData& d, const Params& p, int n, int m) {
    double sup = 0.0;
    for (const Profile* f : {&d.u1_0, &d.u2_0, &d.q1_0, &d.q2_0, &d.u0_0}) {
        for (double v : sample(*f, n, p.L)) sup = std::max(sup, std::fabs(v));
    }
    for (int k = 0; k <= m; ++k) sup = std::max(sup, std::fabs(d.u_b(p.T * k / m)));
    return sup;
}

Preset parse_preset(const std::string& name) {
    if (name == "constant") return Preset::constant;
    if (name == "step") return Preset::step;
    if (name == "bump") return Preset::bump;
    if (name == "smooth") return Preset::smooth;
    if (name == "random-bv" || name == "random_bv") return Preset::random_bv;
    throw ConfigError("unknown data preset '" + name + "'");
}

std::string preset_name(Preset preset) {
    switch (preset) {
        case Preset::constant: return "constant";
        case Preset::step: return "step";
        case Preset::bump: return "bump";
        case Preset::smooth: return "smooth";
        case Preset::random_bv: return "random-bv";
    }
    return "unknown";
}

ProblemData make_preset(Preset preset, const Params& p, const PresetOptions& opt) {
    const double v = opt.value;
    const double a = opt.amplitude;
    const double L = p.L;
    ProblemData d;
    switch (preset) {
        case Preset::constant: {
            auto c = [v](double) { return v; };
            d = {c, c, c, c, c, c};
            break;
        }
        case Preset::step: {
            auto f = [v, a, L](double x) { return x < 0.5 * L ? v : v + a; };
            d = {f, f, f, f, f, [v](double) { return v; }};
            break;
        }
        case Preset::bump: {
            auto f = [v, a, L](double x) {
                const double s = (x - 0.5 * L) / (0.25 * L);
                if (std::fabs(s) >= 1.0) return v;
                const double c = std::cos(0.5 * std::numbers::pi * s);
                return v + a * c * c;
            };
            d = {f, f, f, f, f, [v](double) { return v; }};
            break;
        }
        case Preset::smooth: {
            constexpr double phase = 0.3;
            const double k = 2.0 * std::numbers::pi / L;
            const double alpha = p.alpha;
            auto u1 = [=](double x) { return v + a * std::sin(phase + k * x); };
            auto u2 = [=](double x) { return v + a * std::sin(phase - k * x); };
            auto u0 = [=](double x) { return v + 0.5 * a * std::sin(0.5 * k * x); };
            // continues u1_0 upstream so that the corner (0,0) is compatible
            auto ub = [=](double t) { return v + a * std::sin(phase - k * alpha * t); };
            d = {u1, u2, u1, u2, u0, ub};
            break;
        }
        case Preset::random_bv: {
            std::mt19937_64 rng(opt.seed);
            const int pieces = std::max(1, opt.pieces);
            auto levels = [&] {
                std::vector<double> lv(static_cast<std::size_t>(pieces));
                for (auto& x : lv) x = 2.0 * v * unit_uniform(rng);
                return lv;
            };
            d.u1_0 = piecewise_constant(levels(), L);
            d.u2_0 = piecewise_constant(levels(), L);
            d.q1_0 = piecewise_constant(levels(), L);
            d.q2_0 = piecewise_constant(levels(), L);
            d.u0_0 = piecewise_constant(levels(), L);
            d.u_b = piecewise_constant(levels(), p.T);
            break;
        }
    }
    d.q1_0 = with_offset(std::move(d.q1_0), opt.q_offset);
    d.q2_0 = with_offset(std::move(d.q2_0), opt.q_offset);
    return d;
}

Profile piecewise_linear(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || xs.size() != ys.size())
        throw InputError("piecewise_linear: need matching, nonempty samples");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw InputError("piecewise_linear: abscissae must be sorted");
    return [xs = std::move(xs), ys = std::move(ys)](double x) {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const auto j = static_cast<std::size_t>(it - xs.begin());
        const double x0 = xs[j - 1], x1 = xs[j];
        if (x1 == x0) return ys[j];
        const double w = (x - x0) / (x1 - x0);
        return ys[j - 1] + w * (ys[j] - ys[j - 1]);
    };
}

ProblemData load_data_file(const std::string& path, double ub_value) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw InputError("data file '" + path + "' is empty");
    if (line != "x,u1,u2,q1,q2,u0")
        throw InputError("data file '" + path + "': expected header x,u1,u2,q1,q2,u0");
    std::vector<double> cols[6];
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        for (int c = 0; c < 6; ++c) {
            if (!std::getline(ss, cell, ','))
                throw InputError("data file '" + path + "' line " + std::to_string(lineno) +
                                 ": expected 6 columns");
            try {
                cols[c].push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InputError("data file '" + path + "' line " + std::to_string(lineno) +
                                 ": not a number '" + cell + "'");
            }
        }
    }
    if (cols[0].empty()) throw InputError("data file '" + path + "' has no rows");
    ProblemData d;
    d.u1_0 = piecewise_linear(cols[0], cols[1]);
    d.u2_0 = piecewise_linear(cols[0], cols[2]);
    d.q1_0 = piecewise_linear(cols[0], cols[3]);
    d.q2_0 = piecewise_linear(cols[0], cols[4]);
    d.u0_0 = piecewise_linear(cols[0], cols[5]);
    d.u_b = [ub_value](double) { return ub_value; };
    return d;
}

}  // namespace henle

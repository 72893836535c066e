/// @file layers.cpp
/// @brief Limit initial data, initial-layer correctors, data regularization.

#include "henle/layers.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "henle/errors.hpp"

namespace henle {

namespace {

double smooth_step_part(double z) { return z > 0.0 ? std::exp(-1.0 / z) : 0.0; }

// Samples of a mollified function on the uniform nodes k*h, k = 0..n, of [0, len].
struct FineSamples {
    double h = 0.0;
    std::vector<double> y;
};

FineSamples sample_nodes(const Profile& f, double len, double delta) {
    const int n = std::max(64, static_cast<int>(std::ceil(64.0 * len / delta)));
    FineSamples s;
    s.h = len / n;
    s.y.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) s.y[static_cast<std::size_t>(k)] = f(k * s.h);
    return s;
}

// Discrete convolution with normalized cos^2 weights of half-width delta/2.
// Written as y_i + sum w_k (y_{i+k} - y_i) so constant stretches stay exact.
FineSamples mollify(const FineSamples& in, double delta) {
    const int r = static_cast<int>(std::floor(0.5 * delta / in.h));
    std::vector<double> w(static_cast<std::size_t>(2 * r + 1));
    double total = 0.0;
    for (int k = -r; k <= r; ++k) {
        const double c = std::cos(std::numbers::pi * k * in.h / delta);
        w[static_cast<std::size_t>(k + r)] = c * c;
        total += c * c;
    }
    for (auto& x : w) x /= total;
    const int last = static_cast<int>(in.y.size()) - 1;
    FineSamples out{in.h, std::vector<double>(in.y.size())};
    for (int i = 0; i <= last; ++i) {
        const double yi = in.y[static_cast<std::size_t>(i)];
        double acc = 0.0;
        for (int k = -r; k <= r; ++k) {
            const int j = std::clamp(i + k, 0, last);
            acc += w[static_cast<std::size_t>(k + r)] * (in.y[static_cast<std::size_t>(j)] - yi);
        }
        out.y[static_cast<std::size_t>(i)] = yi + acc;
    }
    return out;
}

Profile interpolant(FineSamples s) {
    auto data = std::make_shared<const FineSamples>(std::move(s));
    return [data](double x) {
        const auto& y = data->y;
        const double pos = x / data->h;
        if (!(pos > 0.0)) return y.front();
        const auto last = y.size() - 1;
        if (pos >= static_cast<double>(last)) return y.back();
        const auto k = static_cast<std::size_t>(pos);
        const double w = pos - static_cast<double>(k);
        return y[k] + w * (y[k + 1] - y[k]);
    };
}

Profile mollified(const Profile& f, double len, double delta) {
    return interpolant(mollify(sample_nodes(f, len, delta), delta));
}

}  // namespace

LimitInitial build_limit_initial(const ProblemData& d, LimitReading reading) {
    const double w = reading == LimitReading::average ? 0.5 : 1.0;
    LimitInitial out;
    out.u1 = [u = d.u1_0, q = d.q1_0, w](double x) { return w * (u(x) + q(x)); };
    out.u2 = [u = d.u2_0, q = d.q2_0, w](double x) { return w * (u(x) + q(x)); };
    out.u0 = d.u0_0;
    return out;
}

State3 limit_initial_state(const ProblemData& d, int n, double L, LimitReading reading) {
    const auto init = build_limit_initial(d, reading);
    State3 s(static_cast<std::size_t>(n));
    const double dx = L / n;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) * dx;
        s.u1[static_cast<std::size_t>(i)] = init.u1(x);
        s.u2[static_cast<std::size_t>(i)] = init.u2(x);
        s.u0[static_cast<std::size_t>(i)] = init.u0(x);
    }
    return s;
}

LayerState layer_eval(double tau, const SampledData& d) {
    if (!(tau >= 0.0)) throw InputError("layer_eval: microscopic time must be >= 0");
    const double e = std::exp(-2.0 * tau);
    const double keep = 0.5 * (1.0 + e);
    const double moved = -0.5 * std::expm1(-2.0 * tau);  // (1 - e)/2 without cancellation
    LayerState s;
    s.tau = tau;
    const auto n = d.u1.size();
    s.u1t.resize(n);
    s.u2t.resize(n);
    s.q1t.resize(n);
    s.q2t.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double g1 = d.q1[i] - d.u1[i];
        const double g2 = d.q2[i] - d.u2[i];
        s.u1t[i] = keep * g1;
        s.q1t[i] = moved * g1;
        s.u2t[i] = keep * g2;
        s.q2t[i] = moved * g2;
    }
    return s;
}

CorrectedFields corrected_state(const State5& s, const ProblemData& d, const Params& p) {
    if (!s.consistent()) throw InputError("corrected_state: fields have different lengths");
    const auto n = static_cast<int>(s.size());
    const auto layer = layer_eval(s.t / p.eps, sample_initial(d, n, p.L));
    CorrectedFields out;
    out.t = s.t;
    out.v1.resize(s.size());
    out.v2.resize(s.size());
    out.r1.resize(s.size());
    out.r2.resize(s.size());
    out.u0 = s.u0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.v1[i] = s.u1[i] + layer.u1t[i];
        out.v2[i] = s.u2[i] + layer.u2t[i];
        out.r1[i] = s.q1[i] + layer.q1t[i];
        out.r2[i] = s.q2[i] + layer.q2t[i];
    }
    return out;
}

void RegularizationParams::validate(const Params& p) const {
    const double limit = 0.25 * std::min(p.L, p.T);
    if (!(delta > 0.0) || !(delta < limit)) {
        std::ostringstream msg;
        msg << "regularization delta " << delta << " must lie in (0, min(L, T)/4 = " << limit << ")";
        throw ConfigError(msg.str());
    }
    if (!(c1 >= 0.0) || !(c2 >= 0.0) || !std::isfinite(c1) || !std::isfinite(c2))
        throw ConfigError("regularization constants c1, c2 must be finite and >= 0");
}

double cutoff(double s) {
    const double a = std::fabs(s);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double up = smooth_step_part(2.0 - a);
    return up / (up + smooth_step_part(a - 1.0));
}

ProblemData cutoff_blend(const ProblemData& d, const RegularizationParams& r, const Params& p) {
    r.validate(p);
    const double delta = r.delta, L = p.L, c1 = r.c1, c2 = r.c2;
    ProblemData out = d;
    out.u1_0 = [f = d.u1_0, delta, L, c1, c2](double x) {
        const double left = cutoff(x / delta);
        const double right = cutoff((L - x) / delta);
        return (1.0 - left - right) * f(x) + c1 * left + c2 * right;
    };
    out.u2_0 = [f = d.u2_0, delta, L, c2](double x) {
        const double right = cutoff((L - x) / delta);
        return (1.0 - right) * f(x) + c2 * right;
    };
    out.u_b = [f = d.u_b, delta, c1](double t) {
        const double left = cutoff(t / delta);
        return (1.0 - left) * f(t) + c1 * left;
    };
    return out;
}

ProblemData regularize(const ProblemData& d, const RegularizationParams& r, const Params& p) {
    const ProblemData blend = cutoff_blend(d, r, p);
    ProblemData out;
    out.u1_0 = mollified(blend.u1_0, p.L, r.delta);
    out.u2_0 = mollified(blend.u2_0, p.L, r.delta);
    out.q1_0 = mollified(blend.q1_0, p.L, r.delta);
    out.q2_0 = mollified(blend.q2_0, p.L, r.delta);
    out.u0_0 = mollified(blend.u0_0, p.L, r.delta);
    out.u_b = mollified(blend.u_b, p.T, r.delta);
    return out;
}

double sampled_total_variation(const Profile& f, double a, double b, int samples) {
    if (samples < 2) return 0.0;
    double tv = 0.0;
    double prev = f(a);
    for (int k = 1; k < samples; ++k) {
        const double cur = f(a + (b - a) * k / (samples - 1));
        tv += std::fabs(cur - prev);
        prev = cur;
    }
    return tv;
}

double default_matching_constant(const ProblemData& d, const Params& p) {
    constexpr int samples = 20001;
    double tv = 0.0;
    for (const Profile* f : {&d.u1_0, &d.u2_0, &d.q1_0, &d.q2_0, &d.u0_0})
        tv += sampled_total_variation(*f, 0.0, p.L, samples);
    return tv + sampled_total_variation(d.u_b, 0.0, p.T, samples);
}

}  // namespace henle

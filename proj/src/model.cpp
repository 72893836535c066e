/// @file model.cpp
/// @brief Parameter validation, pump law and pointwise source terms.

#include "henle/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "henle/errors.hpp"

namespace henle {

namespace {

void require(bool ok, const char* what, double value) {
    if (!ok) {
        std::ostringstream msg;
        msg << "invalid parameter: " << what << " (got " << value << ")";
        throw ConfigError(msg.str());
    }
}

template <class Vec>
bool finite_all(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void Params::validate() const {
    require(std::isfinite(alpha) && alpha > 0.0, "alpha > 0", alpha);
    require(std::isfinite(K1) && K1 >= 0.0, "K1 >= 0", K1);
    require(std::isfinite(K2) && K2 >= 0.0, "K2 >= 0", K2);
    require(std::isfinite(eps) && eps > 0.0, "eps > 0", eps);
    require(std::isfinite(Vm) && Vm >= 0.0, "Vm >= 0", Vm);
    require(std::isfinite(kM) && kM > 0.0, "kM > 0", kM);
    require(std::isfinite(L) && L > 0.0, "L > 0", L);
    require(std::isfinite(T) && T > 0.0, "T > 0", T);
}

Params Params::make(double alpha, double K1, double K2, double eps, double Vm, double kM,
                    double L, double T) {
    Params p{alpha, K1, K2, eps, Vm, kM, L, T};
    p.validate();
    return p;
}

double Params::g_prime_sup() const { return 3.0 * Vm / (16.0 * kM); }

bool State5::consistent() const {
    const auto n = u1.size();
    return u2.size() == n && q1.size() == n && q2.size() == n && u0.size() == n;
}

bool State5::all_finite() const {
    return std::isfinite(t) && finite_all(u1) && finite_all(u2) && finite_all(q1) &&
           finite_all(q2) && finite_all(u0);
}

bool State3::consistent() const {
    const auto n = u1.size();
    return u2.size() == n && u0.size() == n;
}

bool State3::all_finite() const {
    return std::isfinite(t) && finite_all(u1) && finite_all(u2) && finite_all(u0);
}

double eval_G(double q, const Params& p) {
    if (!std::isfinite(q)) throw DomainError("eval_G: non-finite concentration");
    const double a = std::fabs(q);
    // a/(kM+a) is in [0,1): no overflow for huge a
    const double ratio = a / (p.kM + a);
    const double g = p.Vm * ratio * ratio * ratio;
    return q < 0.0 ? -g : g;
}

double eval_G_prime(double q, const Params& p) {
    if (!std::isfinite(q)) throw DomainError("eval_G_prime: non-finite concentration");
    const double a = std::fabs(q);
    const double s = 1.0 / (p.kM + a);
    const double ratio = a * s;
    return 3.0 * p.Vm * p.kM * ratio * ratio * s * s;
}

std::array<double, 5> source_rates_full(double u1, double u2, double q1, double q2, double u0,
                                        const Params& p) {
    const double inv_eps = 1.0 / p.eps;
    const double g = eval_G(q2, p);
    const double relax1 = (q1 - u1) * inv_eps;
    const double relax2 = (q2 - u2) * inv_eps;
    const double ex1 = p.K1 * (u0 - q1);
    const double ex2 = p.K2 * (u0 - q2);
    return {relax1, relax2, -relax1 + ex1, -relax2 + ex2 - g, -ex1 - ex2 + g};
}

std::array<double, 3> source_rates_reduced(double u1, double u2, double u0, const Params& p) {
    const double g = eval_G(u2, p);
    const double ex1 = p.K1 * (u0 - u1);
    const double ex2 = p.K2 * (u0 - u2);
    return {0.5 * ex1, 0.5 * (ex2 - g), -ex1 - ex2 + g};
}

}  // namespace henle

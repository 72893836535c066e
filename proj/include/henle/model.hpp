/// @file model.hpp
/// @brief Parameters, state containers and the pointwise source terms of the
///        two-tubule sodium transport model.
///
/// Full (epithelial) system, per cell:
///
///   u1_t + alpha u1_x = (q1 - u1)/eps
///   u2_t - alpha u2_x = (q2 - u2)/eps
///   q1_t = (u1 - q1)/eps + K1 (u0 - q1)
///   q2_t = (u2 - q2)/eps + K2 (u0 - q2) - G(q2)
///   u0_t = K1 (q1 - u0) + K2 (q2 - u0) + G(q2)
///
/// Reduced (eps -> 0) system:
///
///   2 u1_t + alpha u1_x = K1 (u0 - u1)
///   2 u2_t - alpha u2_x = K2 (u0 - u2) - G(u2)
///   u0_t = K1 (u1 - u0) + K2 (u2 - u0) + G(u2)
///
/// with u1(t,0) = u_b(t) and u2(t,L) = u1(t,L) in both cases.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace henle {

/// Physical and numerical constants. Construct through Params::make (or call
/// validate()) so that invalid combinations are rejected before any solve.
struct Params {
    double alpha = 1.0;  ///< fluid speed [m/s]
    double K1 = 1.0;     ///< epithelium-interstitium exchange, descending [1/s]
    double K2 = 1.0;     ///< epithelium-interstitium exchange, ascending [1/s]
    double eps = 0.1;    ///< relaxation parameter; lumen-epithelium rate is 1/eps
    double Vm = 1.0;     ///< pump maximal rate [mol/(m^3 s)]
    double kM = 1.0;     ///< pump half-saturation [mol/m^3]
    double L = 1.0;      ///< tubule length [m]
    double T = 1.0;      ///< final time [s]

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;

    static Params make(double alpha, double K1, double K2, double eps, double Vm,
                       double kM, double L, double T);

    /// sup |G| = Vm (approached as q -> infinity).
    double g_sup() const { return Vm; }
    /// sup G' over the real line, attained at q = kM: 3 Vm / (16 kM).
    double g_prime_sup() const;
};

/// Cell-sampled fields of the full system at time t.
struct State5 {
    std::vector<double> u1, u2, q1, q2, u0;
    double t = 0.0;

    State5() = default;
    explicit State5(std::size_t n, double value = 0.0)
        : u1(n, value), u2(n, value), q1(n, value), q2(n, value), u0(n, value) {}

    std::size_t size() const { return u1.size(); }
    /// True when all five fields have the same length.
    bool consistent() const;
    bool all_finite() const;
};

/// Cell-sampled fields of the reduced system at time t.
struct State3 {
    std::vector<double> u1, u2, u0;
    double t = 0.0;

    State3() = default;
    explicit State3(std::size_t n, double value = 0.0) : u1(n, value), u2(n, value), u0(n, value) {}

    std::size_t size() const { return u1.size(); }
    bool consistent() const;
    bool all_finite() const;
};

/// Michaelis-Menten pump rate Vm (q/(kM+q))^3, extended to q < 0 as an odd function.
double eval_G(double q, const Params& p);

/// Derivative of the extended pump rate: 3 Vm kM q^2 / (kM+|q|)^4.
double eval_G_prime(double q, const Params& p);

/// Right-hand sides of the full system's source terms, ordered (u1, u2, q1, q2, u0).
/// The five components sum to zero.
std::array<double, 5> source_rates_full(double u1, double u2, double q1, double q2, double u0,
                                        const Params& p);

/// Right-hand sides of the reduced system, ordered (u1, u2, u0). The u1 and u2
/// entries already include the division by the factor 2 on their time
/// derivatives, so 2*r[0] + 2*r[1] + r[2] == 0.
std::array<double, 3> source_rates_reduced(double u1, double u2, double u0, const Params& p);

}  // namespace henle

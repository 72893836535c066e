/// @file test_model.cpp
/// @brief Params validation, pump law and source terms.

#include <doctest.h>

#include <cmath>
#include <limits>

#include "henle/errors.hpp"
#include "henle/model.hpp"

using namespace henle;

TEST_CASE("Params::make rejects invalid combinations") {
    CHECK_NOTHROW(Params::make(1, 1, 1, 0.1, 1, 1, 1, 1));
    CHECK_THROWS_AS(Params::make(0, 1, 1, 0.1, 1, 1, 1, 1), ConfigError);
    CHECK_THROWS_AS(Params::make(1, -1, 1, 0.1, 1, 1, 1, 1), ConfigError);
    CHECK_THROWS_AS(Params::make(1, 1, 1, 0.0, 1, 1, 1, 1), ConfigError);
    CHECK_THROWS_AS(Params::make(1, 1, 1, 0.1, -1, 1, 1, 1), ConfigError);
    CHECK_THROWS_AS(Params::make(1, 1, 1, 0.1, 1, 0, 1, 1), ConfigError);
    CHECK_THROWS_AS(Params::make(1, 1, 1, 0.1, 1, 1, 0, 1), ConfigError);
    CHECK_THROWS_AS(Params::make(1, 1, 1, 0.1, 1, 1, 1, 0), ConfigError);
    CHECK_THROWS_AS(Params::make(1, 1, 1, std::nan(""), 1, 1, 1, 1), ConfigError);
}

TEST_CASE("pump law values") {
    const Params p;
    CHECK(eval_G(0.0, p) == 0.0);
    CHECK(eval_G(1.0, p) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(eval_G(-1.0, p) == -eval_G(1.0, p));
    CHECK(eval_G(1e12, p) < p.Vm);
    CHECK(eval_G(1e12, p) == doctest::Approx(p.Vm).epsilon(1e-10));
    CHECK_THROWS_AS(eval_G(std::numeric_limits<double>::infinity(), p), DomainError);
    CHECK_THROWS_AS(eval_G_prime(std::nan(""), p), DomainError);
}

TEST_CASE("G' matches a central difference") {
    Params p;
    p.Vm = 2.0;
    p.kM = 0.7;
    const double h = 1e-6;
    for (double q = -5.0; q <= 5.0; q += 0.137) {
        const double fd = (eval_G(q + h, p) - eval_G(q - h, p)) / (2 * h);
        CHECK(std::fabs(fd - eval_G_prime(q, p)) < 1e-8);
    }
}

TEST_CASE("sup G' from a dense scan") {
    Params p;
    p.Vm = 1.5;
    p.kM = 0.4;
    double best = 0.0;
    for (int k = 0; k <= 1000000; ++k) best = std::max(best, eval_G_prime(k * 1e-5, p));
    CHECK(best <= p.g_prime_sup() * (1 + 1e-14));
    CHECK(best == doctest::Approx(p.g_prime_sup()).epsilon(1e-9));
    CHECK(eval_G_prime(p.kM, p) == doctest::Approx(3 * p.Vm / (16 * p.kM)).epsilon(1e-15));
}

TEST_CASE("full source rates by hand") {
    Params p;
    p.eps = 0.5;
    // u1=1, u2=2, q1=3, q2=4, u0=5, K1=K2=1, Vm=kM=1: G(4) = (4/5)^3 = 0.512
    const auto r = source_rates_full(1, 2, 3, 4, 5, p);
    CHECK(r[0] == doctest::Approx(4.0));
    CHECK(r[1] == doctest::Approx(4.0));
    CHECK(r[2] == doctest::Approx(-4.0 + 2.0));
    CHECK(r[3] == doctest::Approx(-4.0 + 1.0 - 0.512));
    CHECK(r[4] == doctest::Approx(-2.0 - 1.0 + 0.512));
    CHECK(std::fabs(r[0] + r[1] + r[2] + r[3] + r[4]) < 1e-14);
}

TEST_CASE("reduced source rates conserve the weighted sum") {
    Params p;
    p.K1 = 2;
    p.K2 = 3;
    const auto r = source_rates_reduced(1, 2, 5, p);
    CHECK(r[0] == doctest::Approx(0.5 * 2 * 4));
    CHECK(r[1] == doctest::Approx(0.5 * (3 * 3 - std::pow(2.0 / 3.0, 3))));
    CHECK(std::fabs(2 * r[0] + 2 * r[1] + r[2]) < 1e-14);
}

TEST_CASE("equilibrium without pump has zero sources") {
    Params p;
    p.Vm = 0;
    const auto r = source_rates_full(2, 2, 2, 2, 2, p);
    for (double v : r) CHECK(v == 0.0);
}

TEST_CASE("State containers") {
    State5 s(4, 1.0);
    CHECK(s.size() == 4);
    CHECK(s.consistent());
    CHECK(s.all_finite());
    s.q2.push_back(0);
    CHECK_FALSE(s.consistent());
    State3 r(3);
    r.u0[1] = std::nan("");
    CHECK_FALSE(r.all_finite());
}

#include "doctest.h"

#include <cmath>
#include <random>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/kernels.hpp"
#include "expected_values.hpp"
#include "test_util.hpp"

using namespace chaosmoments;
using testutil::rel_err;
using testutil::simpson;

#define CHECK_ERROR_CODE(expr, code_)                                    \
    do {                                                                 \
        bool caught_ = false;                                            \
        try {                                                            \
            (void)(expr);                                                \
        } catch (const chaosmoments::Error& e_) {                        \
            caught_ = true;                                              \
            CHECK(e_.code() == chaosmoments::ErrorCode::code_);          \
        }                                                                \
        CHECK_MESSAGE(caught_, "expected " #code_ " from " #expr);       \
    } while (0)

TEST_CASE("heat d=1 ball mass equals the interval integral of the density") {
    KernelSpec k = KernelSpec::heat(1);
    struct C {
        double t, delta, eps;
    };
    for (const C& c : {C{0.5, 0.0, 0.3}, C{0.5, 0.4, 0.3}, C{1.0, 1.2, 0.5},
                       C{0.2, 2.0, 0.8}}) {
        CAPTURE(c.delta);
        double direct = simpson(
            [&](double u) { return kernel_value(k, c.t, {u}); }, c.delta - c.eps,
            c.delta + c.eps, 4000);
        CHECK(rel_err(ball_mass(k, c.t, c.delta, c.eps), direct) < 1e-9);
    }
    // whole-line limit: mass of a huge ball is the total mass 1
    CHECK(std::abs(ball_mass(k, 0.5, 0.0, 50.0) - 1.0) < 1e-8);
}

TEST_CASE("heat d=2 ball mass matches the frozen references") {
    KernelSpec k = KernelSpec::heat(2);
    for (const auto& c : expected::heat2_ball_mass_cases) {
        CAPTURE(c.t);
        CAPTURE(c.delta);
        CHECK(rel_err(ball_mass(k, c.t, c.delta, c.eps), c.value) < 1e-6);
    }
}

TEST_CASE("wave d=1 ball mass is the exact interval overlap") {
    KernelSpec k = KernelSpec::wave(1);
    auto overlap = [](double t, double delta, double eps) {
        double lo = std::max(delta - eps, -t), hi = std::min(delta + eps, t);
        return hi > lo ? 0.5 * (hi - lo) : 0.0;
    };
    struct C {
        double t, delta, eps;
    };
    for (const C& c : {C{0.3, 0.0, 0.5}, C{0.5, 0.0, 0.3}, C{1.0, 0.0, 1.0},
                       C{0.5, 0.4, 0.3}, C{0.5, 0.9, 0.3}, C{0.5, 2.0, 0.3},
                       C{0.7, 0.65, 0.1}}) {
        CAPTURE(c.delta);
        CHECK(std::abs(ball_mass(k, c.t, c.delta, c.eps) -
                       overlap(c.t, c.delta, c.eps)) <= 1e-10);
    }
    // centred ball: t wedge eps
    CHECK(ball_mass(k, 0.3, 0.0, 0.5) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(ball_mass(k, 0.5, 0.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("wave d=2 ball mass matches the frozen references") {
    KernelSpec k = KernelSpec::wave(2);
    for (const auto& c : expected::wave2_ball_mass_cases) {
        CAPTURE(c.delta);
        CAPTURE(c.eps);
        CHECK(rel_err(ball_mass(k, c.t, c.delta, c.eps), c.value) < 1e-6);
    }
    // centred ball with eps < t: annulus complement, t - sqrt(t^2 - eps^2)
    double t = 0.5, eps = 0.49;
    CHECK(rel_err(ball_mass(k, t, 0.0, eps),
                  t - std::sqrt(t * t - eps * eps)) < 1e-7);
}

TEST_CASE("wave d=3 spherical-cap mass agrees with sampling the sphere") {
    KernelSpec k = KernelSpec::wave(3);
    std::mt19937_64 rng(914507);
    std::normal_distribution<double> gauss(0.0, 1.0);
    struct C {
        double t, delta, eps;
    };
    for (const C& c : {C{0.8, 0.5, 0.4}, C{1.0, 0.7, 0.6}, C{0.5, 0.45, 0.2},
                       C{1.0, 0.9, 0.5}}) {
        CAPTURE(c.delta);
        const int n = 200000;
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            double gx = gauss(rng), gy = gauss(rng), gz = gauss(rng);
            double s = c.t / std::sqrt(gx * gx + gy * gy + gz * gz);
            double dx = gx * s - c.delta, dy = gy * s, dz = gz * s;
            if (dx * dx + dy * dy + dz * dz <= c.eps * c.eps) ++hits;
        }
        double p = double(hits) / n;
        double mc = c.t * p;
        double se = c.t * std::sqrt(p * (1.0 - p) / n);
        CHECK(std::abs(ball_mass(k, c.t, c.delta, c.eps) - mc) <= 3.0 * se);
    }
    // containment: whole sphere inside the ball -> total mass t
    CHECK(ball_mass(k, 0.5, 0.1, 0.9) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ball_mass(k, 0.5, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    // no intersection: ball strictly inside the sphere, or far away
    CHECK(ball_mass(k, 0.5, 0.0, 0.3) == 0.0);
    CHECK(ball_mass(k, 1.0, 3.0, 0.5) == 0.0);
}

TEST_CASE("fractional-diffusion ball mass against direct density quadrature") {
    KernelSpec k1 = KernelSpec::frac(1, 1.5, 1.2);
    double direct = simpson(
        [&](double u) { return kernel_value(k1, 0.5, {std::abs(u)}); }, 0.1, 0.7,
        4000);
    CHECK(rel_err(ball_mass(k1, 0.5, 0.4, 0.3), direct) < 1e-6);

    // d=2 via the polar arc-angle formula with a plain Simpson rule
    KernelSpec k2 = KernelSpec::frac(2, 2.0, 1.5);
    double t = 0.5, delta = 0.6, eps = 0.4;
    double polar = simpson(
        [&](double r) {
            if (r <= 0.0) return 0.0;
            double cosv = (r * r + delta * delta - eps * eps) / (2.0 * r * delta);
            cosv = std::min(1.0, std::max(-1.0, cosv));
            return kernel_value(k2, t, {r, 0.0}) * r * 2.0 * std::acos(cosv);
        },
        delta - eps, delta + eps, 6000);
    CHECK(rel_err(ball_mass(k2, t, delta, eps), polar) < 1e-5);
}

TEST_CASE("ball mass is nondecreasing in the radius") {
    struct S {
        KernelSpec k;
        double t, delta;
    };
    for (const S& s : {S{KernelSpec::heat(2), 0.5, 0.4},
                       S{KernelSpec::wave(2), 0.7, 0.3},
                       S{KernelSpec::wave(3), 0.8, 0.5},
                       S{KernelSpec::frac(1, 1.5, 1.2), 0.5, 0.2}}) {
        double prev = 0.0;
        for (double eps = 0.05; eps < 1.3; eps += 0.1) {
            double m = ball_mass(s.k, s.t, s.delta, eps);
            CHECK(m >= prev - 1e-12);
            prev = m;
        }
    }
}

TEST_CASE("ball mass guards") {
    KernelSpec k = KernelSpec::heat(1);
    CHECK_ERROR_CODE(ball_mass(k, 0.0, 0.0, 0.3), NonpositiveTime);
    CHECK_ERROR_CODE(ball_mass(k, 0.5, 0.0, 0.0), RadiusOutOfRange);
    CHECK_ERROR_CODE(ball_mass(k, 0.5, -0.1, 0.3), RadiusOutOfRange);
}

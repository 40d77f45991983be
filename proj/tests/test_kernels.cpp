#include "doctest.h"

#include <cmath>
#include <vector>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/kernels.hpp"
#include "chaosmoments/profile.hpp"
#include "chaosmoments/special.hpp"
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

namespace {

std::vector<double> point(int d, double r) {
    std::vector<double> x(d, 0.0);
    x[0] = r;
    return x;
}

}  // namespace

TEST_CASE("kernel spec validation accepts the supported regimes") {
    for (int d : {1, 2, 3}) {
        CHECK_NOTHROW(KernelSpec::heat(d));
        CHECK_NOTHROW(KernelSpec::wave(d));
        CHECK_NOTHROW(KernelSpec::alpha_heat(d, 1.5));
        CHECK_NOTHROW(KernelSpec::frac(d, 1.5, 0.8));
    }
    CHECK_NOTHROW(KernelSpec::frac(1, 1.5, 1.2));
    CHECK_NOTHROW(KernelSpec::frac(1, 1.2, 1.2));
    CHECK_NOTHROW(KernelSpec::frac(2, 2.0, 1.5));
    CHECK_NOTHROW(KernelSpec::frac(3, 2.0, 1.5));
}

TEST_CASE("kernel spec validation rejects out-of-range parameters") {
    CHECK_ERROR_CODE(KernelSpec::heat(4), DimensionCap);
    CHECK_ERROR_CODE(KernelSpec::heat(0), DimensionCap);
    CHECK_ERROR_CODE(KernelSpec::alpha_heat(1, 2.0), UnsupportedParameter);
    CHECK_ERROR_CODE(KernelSpec::alpha_heat(1, 0.0), UnsupportedParameter);
    CHECK_ERROR_CODE(KernelSpec::frac(1, 2.5, 1.2), UnsupportedParameter);
    CHECK_ERROR_CODE(KernelSpec::frac(1, 1.5, 0.4), UnsupportedParameter);
    CHECK_ERROR_CODE(KernelSpec::frac(1, 1.5, 2.0), UnsupportedParameter);
    // beta > 1 needs d = 1 with alpha >= beta, or alpha = 2 with d in {2,3}
    CHECK_ERROR_CODE(KernelSpec::frac(1, 1.2, 1.5), UnsupportedParameter);
    CHECK_ERROR_CODE(KernelSpec::frac(2, 1.5, 1.2), UnsupportedParameter);
    CHECK_ERROR_CODE(KernelSpec::frac(3, 1.9, 1.1), UnsupportedParameter);
}

TEST_CASE("scaling exponents (a, b) per kernel family") {
    CHECK(scaling_a(KernelSpec::heat(1)) == 0.0);
    CHECK(scaling_b(KernelSpec::heat(1)) == 2.0);
    CHECK(scaling_a(KernelSpec::alpha_heat(1, 1.5)) == 0.0);
    CHECK(scaling_b(KernelSpec::alpha_heat(1, 1.5)) == 1.5);
    CHECK(scaling_a(KernelSpec::wave(2)) == 1.0);
    CHECK(scaling_b(KernelSpec::wave(2)) == 1.0);
    KernelSpec f = KernelSpec::frac(1, 1.5, 1.2);
    CHECK(scaling_a(f) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(scaling_b(f) == doctest::Approx(1.25).epsilon(1e-15));
    // hbar = 2a - lambda/b
    CHECK(hbar_exponent(KernelSpec::heat(1), 0.5) == doctest::Approx(-0.25));
    CHECK(hbar_exponent(KernelSpec::wave(1), 0.5) == doctest::Approx(1.5));
    CHECK(hbar_exponent(f, 0.5) == doctest::Approx(0.4 - 0.5 / 1.25));
}

TEST_CASE("heat kernel closed form and parabolic scaling") {
    for (int d : {1, 2, 3}) {
        KernelSpec k = KernelSpec::heat(d);
        for (double t : {0.25, 1.0}) {
            for (double r : {0.0, 0.5, 1.7}) {
                double want = std::pow(2.0 * M_PI * t, -0.5 * d) *
                              std::exp(-r * r / (2.0 * t));
                CHECK(rel_err(kernel_value(k, t, point(d, r)), want) < 1e-14);
            }
        }
        // G_{c^2 t}(c x) = c^{-d} G_t(x)
        double c = 1.7, t = 0.4, r = 0.8;
        CHECK(rel_err(kernel_value(k, c * c * t, point(d, c * r)),
                      std::pow(c, -d) * kernel_value(k, t, point(d, r))) < 1e-13);
    }
}

TEST_CASE("wave kernel piecewise density") {
    KernelSpec w1 = KernelSpec::wave(1);
    CHECK(kernel_value(w1, 1.0, {0.5}) == 0.5);
    CHECK(kernel_value(w1, 1.0, {-0.75}) == 0.5);
    CHECK(kernel_value(w1, 1.0, {2.0}) == 0.0);
    KernelSpec w2 = KernelSpec::wave(2);
    CHECK(rel_err(kernel_value(w2, 1.0, {0.0, 0.0}), 1.0 / (2.0 * M_PI)) < 1e-15);
    double t = 0.8, r = 0.5;
    CHECK(rel_err(kernel_value(w2, t, {r, 0.0}),
                  1.0 / (2.0 * M_PI * std::sqrt(t * t - r * r))) < 1e-15);
    CHECK(kernel_value(w2, 0.5, {0.5, 0.0}) ==
          std::numeric_limits<double>::infinity());
    CHECK(kernel_value(w2, 0.5, {0.7, 0.0}) == 0.0);
    CHECK_ERROR_CODE(kernel_value(KernelSpec::wave(3), 1.0, {0.5, 0.0, 0.0}),
                     MeasureKernelNoDensity);
}

TEST_CASE("Fourier symbols of the four families") {
    for (double xi : {0.0, 0.7, 3.0}) {
        CHECK(rel_err(kernel_fourier(KernelSpec::heat(2), 0.5, xi),
                      std::exp(-0.25 * xi * xi)) < 1e-15);
        CHECK(rel_err(kernel_fourier(KernelSpec::alpha_heat(1, 1.5), 0.5, xi),
                      std::exp(-0.25 * std::pow(xi, 1.5))) < 1e-15);
    }
    CHECK(kernel_fourier(KernelSpec::wave(3), 0.7, 0.0) == 0.7);
    for (double xi : {0.3, 2.0})
        CHECK(rel_err(kernel_fourier(KernelSpec::wave(1), 0.7, xi),
                      std::sin(0.7 * xi) / xi) < 1e-15);
    KernelSpec f = KernelSpec::frac(1, 1.5, 1.2);
    for (double xi : {0.0, 1.0, 4.0}) {
        double want = std::pow(0.5, 0.2) *
                      mittag_leffler(1.2, 1.2,
                                     -std::pow(0.5, 1.2) * std::pow(xi, 1.5) / 2.0);
        CHECK(rel_err(kernel_fourier(f, 0.5, xi), want) < 1e-13);
    }
    CHECK_ERROR_CODE(kernel_fourier(KernelSpec::heat(1), 1.0, -0.5), RadiusOutOfRange);
}

TEST_CASE("heat density agrees with numerical inversion of its symbol") {
    KernelSpec k = KernelSpec::heat(1);
    double t = 0.5;
    for (double x : {-3.0, -1.5, 0.0, 0.7, 3.0}) {
        double inv = simpson(
                         [&](double xi) {
                             return std::cos(xi * x) * kernel_fourier(k, t, xi);
                         },
                         0.0, 12.0, 4000) /
                     M_PI;
        CHECK(std::abs(inv - kernel_value(k, t, {x})) <= 1e-5);
    }
}

TEST_CASE("alpha-stable heat densities match the frozen references") {
    for (const auto& c : expected::alpha_heat_density_cases) {
        CAPTURE(c.alpha);
        CAPTURE(c.d);
        CAPTURE(c.r);
        KernelSpec k = KernelSpec::alpha_heat(c.d, c.alpha);
        CHECK(rel_err(kernel_value(k, c.t, point(c.d, c.r)), c.value) < 2e-5);
    }
}

TEST_CASE("fractional-diffusion densities match the frozen references") {
    for (const auto& c : expected::fd_density_cases) {
        CAPTURE(c.alpha);
        CAPTURE(c.beta);
        CAPTURE(c.d);
        CAPTURE(c.r);
        KernelSpec k = KernelSpec::frac(c.d, c.alpha, c.beta);
        CHECK(rel_err(kernel_value(k, c.t, point(c.d, c.r)), c.value) < 2e-5);
    }
}

TEST_CASE("total mass identities on t in {0.1, 0.5, 1}") {
    for (double t : {0.1, 0.5, 1.0}) {
        // heat: closed-form density integrates to 1 (independent Simpson route)
        {
            KernelSpec k = KernelSpec::heat(1);
            double L = 12.0 * std::sqrt(t);
            double m = 2.0 * simpson(
                                 [&](double x) { return kernel_value(k, t, {x}); },
                                 0.0, L, 4000);
            CHECK(std::abs(m - 1.0) < 1e-8);
            CHECK(total_mass(k, t) == 1.0);
        }
        // wave d=1: support [-t,t] at height 1/2
        CHECK(std::abs(2.0 * t * kernel_value(KernelSpec::wave(1), t, {0.0}) - t) <
              1e-15);
        CHECK(total_mass(KernelSpec::wave(1), t) == t);
        // wave d=2: Int_0^t 2 pi r G dr = t via r = t sin(theta); stop just
        // short of the rim singularity and add the analytic sliver t sin(dth)
        {
            KernelSpec k = KernelSpec::wave(2);
            double dth = 1e-9;
            double m = simpson(
                           [&](double th) {
                               double r = t * std::sin(th);
                               return 2.0 * M_PI * r * kernel_value(k, t, {r, 0.0}) *
                                      t * std::cos(th);
                           },
                           0.0, M_PI / 2.0 - dth, 2000) +
                       t * std::sin(dth);
            CHECK(std::abs(m - t) < 1e-6);
        }
        CHECK(total_mass(KernelSpec::wave(3), t) == t);
    }
}

namespace {

// Int_0^inf P(w) w^{d-1} dw through the public profile interface: Simpson up
// to the spline cut plus the analytic power tail (empty when alpha = 2).
double profile_radial_integral(const RadialProfile& P, double alpha, int d) {
    double body = simpson(
        [&](double w) { return P(w) * std::pow(w, d - 1); }, 0.0, P.w_cut(), 60000);
    double tail = alpha < 2.0
                      ? P.tail_coefficient() * std::pow(P.w_cut(), -alpha) / alpha
                      : 0.0;
    return body + tail;
}

double sphere_area(int d) {
    return d == 1 ? 2.0 : (d == 2 ? 2.0 * M_PI : 4.0 * M_PI);
}

}  // namespace

TEST_CASE("fractional-diffusion and stable masses via the radial profile") {
    struct Case {
        int d;
        double alpha, beta;
    };
    for (const Case& c : {Case{1, 1.5, 1.2}, Case{1, 1.5, 0.8}, Case{2, 2.0, 1.5},
                          Case{3, 2.0, 1.5}}) {
        CAPTURE(c.d);
        CAPTURE(c.beta);
        const RadialProfile& P = radial_profile(c.alpha, c.beta, c.d);
        double m = sphere_area(c.d) * profile_radial_integral(P, c.alpha, c.d);
        CHECK(rel_err(m, 1.0 / std::tgamma(c.beta)) < 1e-5);
        for (double t : {0.1, 0.5, 1.0}) {
            KernelSpec k = KernelSpec::frac(c.d, c.alpha, c.beta);
            CHECK(rel_err(total_mass(k, t),
                          std::pow(t, c.beta - 1.0) / std::tgamma(c.beta)) < 1e-12);
        }
    }
    for (int d : {1, 2}) {
        const RadialProfile& P = radial_profile(1.5, 0.0, d);
        double m = sphere_area(d) * profile_radial_integral(P, 1.5, d);
        CHECK(rel_err(m, 1.0) < 1e-5);
        CHECK(total_mass(KernelSpec::alpha_heat(d, 1.5), 0.5) == 1.0);
    }
}

TEST_CASE("radial profile: tail matching and nonnegativity") {
    const RadialProfile& P = radial_profile(1.5, 1.2, 1);
    CHECK(P.w_cut() > 0.0);
    CHECK(P.tail_coefficient() > 0.0);
    for (double f : {1.5, 3.0, 10.0}) {
        double w = f * P.w_cut();
        CHECK(rel_err(P(w), P.tail_coefficient() * std::pow(w, -1.0 - 1.5)) < 1e-12);
    }
    CHECK(rel_err(P(P.w_cut() * (1.0 - 1e-9)),
                  P.tail_coefficient() * std::pow(P.w_cut(), -2.5)) < 1e-3);
    CHECK(P(1e-12) == doctest::Approx(P.at_zero()).epsilon(1e-3));
    for (double w = 0.0; w <= 2.0 * P.w_cut(); w += P.w_cut() / 97.0)
        CHECK(P(w) >= 0.0);

    const RadialProfile& Q = radial_profile(2.0, 1.5, 2);
    CHECK(Q.tail_coefficient() == 0.0);
    CHECK(Q(2.0 * Q.w_cut()) == 0.0);
}

TEST_CASE("density positivity across families") {
    for (double t : {0.1, 0.5, 1.0}) {
        for (double r : {0.0, 0.2, 0.7, 1.5, 4.0}) {
            CHECK(kernel_value(KernelSpec::heat(2), t, point(2, r)) >= 0.0);
            CHECK(kernel_value(KernelSpec::alpha_heat(1, 1.5), t, point(1, r)) >= 0.0);
            CHECK(kernel_value(KernelSpec::alpha_heat(3, 0.8), t, point(3, r)) >= 0.0);
            CHECK(kernel_value(KernelSpec::frac(1, 1.5, 1.2), t, point(1, r)) >= 0.0);
            CHECK(kernel_value(KernelSpec::frac(2, 2.0, 1.5), t, point(2, r)) >= 0.0);
            CHECK(kernel_value(KernelSpec::frac(3, 2.0, 1.5), t, point(3, r)) >= 0.0);
        }
    }
}

TEST_CASE("alpha-heat Nash envelope shape") {
    KernelSpec k = KernelSpec::alpha_heat(1, 1.5);
    for (double t : {0.2, 1.0}) {
        double tb = std::pow(t, 1.0 / 1.5);
        // near field: density * t^{d/alpha} bounded; far field: density |x|^{d+alpha}/t
        for (double x : {0.0, 0.3 * tb, 0.9 * tb}) {
            double v = kernel_value(k, t, {x}) * std::pow(t, 1.0 / 1.5);
            CHECK(v > 0.0);
            CHECK(v < 10.0);
        }
        for (double x : {1.1 * tb, 3.0 * tb, 20.0 * tb}) {
            double v = kernel_value(k, t, {x}) * std::pow(x, 2.5) / t;
            CHECK(v > 0.0);
            CHECK(v < 10.0);
        }
        // C-free envelope formula itself
        for (double x : {0.4, 2.0}) {
            double want = std::min(std::pow(t, -1.0 / 1.5), t / std::pow(x, 2.5));
            CHECK(alpha_heat_envelope(k, t, x) == want);
        }
    }
    CHECK_ERROR_CODE(alpha_heat_envelope(KernelSpec::heat(1), 1.0, 0.5),
                     UnsupportedParameter);
}

TEST_CASE("kernel evaluation guards") {
    CHECK_ERROR_CODE(kernel_value(KernelSpec::heat(1), 0.0, {0.5}), NonpositiveTime);
    CHECK_ERROR_CODE(kernel_value(KernelSpec::heat(1), -1.0, {0.5}), NonpositiveTime);
    CHECK_ERROR_CODE(kernel_value(KernelSpec::heat(2), 1.0, {0.5}),
                     UnsupportedParameter);
    CHECK_ERROR_CODE(kernel_fourier(KernelSpec::frac(1, 1.5, 1.2), 0.0, 1.0),
                     NonpositiveTime);
    CHECK_ERROR_CODE(total_mass(KernelSpec::heat(1), -0.5), NonpositiveTime);
}

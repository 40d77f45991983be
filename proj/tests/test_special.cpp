#include "doctest.h"

#include <cmath>

#include "chaosmoments/errors.hpp"
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

TEST_CASE("Mittag-Leffler matches the frozen big-float references") {
    for (const auto& c : expected::ml_cases) {
        CAPTURE(c.beta);
        CAPTURE(c.beta2);
        CAPTURE(c.z);
        CHECK(rel_err(mittag_leffler(c.beta, c.beta2, c.z), c.value) < 1e-10);
    }
}

TEST_CASE("Mittag-Leffler classical reductions") {
    // E_{1,1}(z) = exp(z)
    for (int i = 0; i <= 44; ++i) {
        double z = -10.0 + 11.0 * i / 44.0;
        CHECK(rel_err(mittag_leffler(1.0, 1.0, z), std::exp(z)) < 1e-10);
    }
    // E_{1,2}(z) = (exp(z) - 1) / z
    for (double z : {-3.0, 0.7, 2.0})
        CHECK(rel_err(mittag_leffler(1.0, 2.0, z), std::expm1(z) / z) < 1e-11);
    // E_{2,1}(-z^2) = cos(z)
    for (double z : {0.5, 2.0, 6.0})
        CHECK(rel_err(mittag_leffler(2.0, 1.0, -z * z), std::cos(z)) < 1e-10);
    // E_{1/2,1}(z) = exp(z^2) erfc(-z)
    for (double z : {-2.0, -0.5, 0.5, 1.0})
        CHECK(rel_err(mittag_leffler(0.5, 1.0, z), std::exp(z * z) * std::erfc(-z)) < 1e-10);
}

TEST_CASE("Wright function matches the frozen references and exp reduction") {
    for (const auto& c : expected::wright_cases) {
        CAPTURE(c.a);
        CAPTURE(c.b);
        CAPTURE(c.z);
        CHECK(rel_err(wright(c.a, c.b, c.z), c.value) < 1e-10);
    }
    for (double z : {-2.0, 0.3, 1.5})
        CHECK(rel_err(wright(0.0, 1.0, z), std::exp(z)) < 1e-12);
}

TEST_CASE("M-Wright density: half-Gaussian case and stable-density relation") {
    for (double x : {0.3, 1.0, 2.5})
        CHECK(rel_err(mwright(0.5, x), std::exp(-x * x / 4.0) / std::sqrt(M_PI)) < 1e-12);

    // one-sided 1/2-stable is the Levy density exp(-1/4x) / (2 sqrt(pi) x^{3/2})
    for (double x : {0.3, 0.9, 4.0}) {
        double levy = std::exp(-1.0 / (4.0 * x)) / (2.0 * std::sqrt(M_PI) * std::pow(x, 1.5));
        CHECK(rel_err(stable_density_oneside(0.5, x), levy) < 1e-11);
    }

    // g_beta(x) = beta x^{-beta-1} M_beta(x^{-beta})
    for (double x : {0.8, 1.7}) {
        double g = 0.75 * std::pow(x, -1.75) * mwright(0.75, std::pow(x, -0.75));
        CHECK(rel_err(stable_density_oneside(0.75, x), g) < 1e-11);
    }
}

TEST_CASE("neutral-fractional density: formula, normalisation, degenerate order") {
    auto direct = [](double alpha, double r) {
        double c = std::cos(M_PI * alpha / 2.0), s = std::sin(M_PI * alpha / 2.0);
        double ra = std::pow(r, alpha);
        return std::pow(r, alpha - 1.0) * s / (M_PI * (1.0 + 2.0 * ra * c + ra * ra));
    };
    for (double alpha : {1.2, 1.5, 1.8}) {
        for (double r : {0.2, 1.0, 3.7}) {
            NeutralResult nr = neutral_fractional(alpha, r);
            CHECK(!nr.degenerate_alpha);
            CHECK(rel_err(nr.value, direct(alpha, r)) < 1e-13);
        }
        // Int_0^inf N_alpha dr = 1/2: Simpson to R plus the r^{-alpha-1} tail
        double R = 50.0;
        double body = simpson(
            [&](double r) { return neutral_fractional(alpha, r).value; }, 0.0, R, 20000);
        double tail = std::sin(M_PI * alpha / 2.0) / (M_PI * alpha * std::pow(R, alpha));
        CHECK(rel_err(body + tail, 0.5) < 1e-4);
    }
    NeutralResult deg = neutral_fractional(2.0, 1.3);
    CHECK(deg.degenerate_alpha);
    CHECK(deg.value == 0.0);
}

TEST_CASE("subordination series has the stated leading term") {
    // H(z) ~ z^{1/alpha} / (alpha Gamma(beta - beta/alpha)) as z -> 0
    for (auto [alpha, beta] : {std::pair{1.5, 1.2}, {1.5, 0.8}, {1.8, 1.1}}) {
        double z = 1e-8;
        double lead = std::pow(z, 1.0 / alpha) /
                      (alpha * std::tgamma(beta - beta / alpha));
        CHECK(rel_err(subordination_h_series(alpha, beta, z), lead) < 1e-5);
    }
}

TEST_CASE("special-function domain validation") {
    CHECK_ERROR_CODE(mittag_leffler(0.0, 1.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(mittag_leffler(2.5, 1.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(mittag_leffler(1.0, 0.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(wright(-1.0, 1.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(mwright(0.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(mwright(1.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(mwright(0.5, -0.1), RadiusOutOfRange);
    CHECK_ERROR_CODE(stable_density_oneside(1.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(neutral_fractional(1.0, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(neutral_fractional(2.1, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(neutral_fractional(1.5, -1.0), RadiusOutOfRange);
    CHECK_ERROR_CODE(subordination_h_series(1.2, 1.2, 1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(subordination_h_series(1.5, 1.2, -1.0), UnsupportedParameter);
}

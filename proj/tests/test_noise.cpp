#include "doctest.h"

#include <cmath>
#include <vector>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/noise.hpp"
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

TEST_CASE("noise validate accepts the supported covariance combinations") {
    CHECK_NOTHROW(validate(NoiseSpec::white_white()));
    CHECK_NOTHROW(validate(NoiseSpec::riesz(0.5, 0.5, 1)));
    CHECK_NOTHROW(validate(NoiseSpec::riesz(0.9, 1.5, 2)));
    CHECK_NOTHROW(validate(NoiseSpec::riesz(0.1, 2.5, 3)));
    CHECK_NOTHROW(validate(NoiseSpec::product(0.5, {0.3, 0.7})));
    CHECK_NOTHROW(validate(NoiseSpec::product(0.5, {0.4})));
    CHECK_NOTHROW(validate(NoiseSpec::white_time_riesz(0.5, 1)));
    CHECK_NOTHROW(validate(NoiseSpec::white_time_riesz(1.2, 2)));
}

TEST_CASE("noise validate rejects out-of-range parameters") {
    CHECK_ERROR_CODE(validate(NoiseSpec::riesz(0.0, 0.5, 1)), UnsupportedParameter);
    CHECK_ERROR_CODE(validate(NoiseSpec::riesz(1.0, 0.5, 1)), UnsupportedParameter);
    CHECK_ERROR_CODE(validate(NoiseSpec::riesz(0.5, 0.0, 1)), ParameterOutOfPositivityRange);
    CHECK_ERROR_CODE(validate(NoiseSpec::riesz(0.5, 1.0, 1)), ParameterOutOfPositivityRange);
    CHECK_ERROR_CODE(validate(NoiseSpec::riesz(0.5, 2.5, 2)), ParameterOutOfPositivityRange);
    CHECK_ERROR_CODE(validate(NoiseSpec::product(0.5, {0.3, 1.0})),
                     ParameterOutOfPositivityRange);
    CHECK_ERROR_CODE(validate(NoiseSpec::product(0.5, {-0.1})), ParameterOutOfPositivityRange);

    NoiseSpec bad_dim = NoiseSpec::riesz(0.5, 0.5, 1);
    bad_dim.d = 4;
    CHECK_ERROR_CODE(validate(bad_dim), DimensionCap);

    NoiseSpec mismatched = NoiseSpec::product(0.5, {0.3, 0.7});
    mismatched.d = 1;
    CHECK_ERROR_CODE(validate(mismatched), UnsupportedParameter);

    // spatially white noise is only paired with white time and d = 1
    NoiseSpec colored_time_white_space;
    colored_time_white_space.time = TimeKind::Power;
    colored_time_white_space.gamma = 0.5;
    CHECK_ERROR_CODE(validate(colored_time_white_space), UnsupportedParameter);
    NoiseSpec white_d2;
    white_d2.d = 2;
    CHECK_ERROR_CODE(validate(white_d2), UnsupportedParameter);
}

TEST_CASE("time covariance: power law values, delta and singularity errors") {
    NoiseSpec n = NoiseSpec::riesz(0.4, 0.5, 1);
    CHECK(rel_err(time_cov(n, 0.5), std::pow(0.5, -0.4)) < 1e-15);
    CHECK(rel_err(time_cov(n, -0.5), std::pow(0.5, -0.4)) < 1e-15);
    CHECK(rel_err(time_cov(n, 3.0), std::pow(3.0, -0.4)) < 1e-15);
    CHECK_ERROR_CODE(time_cov(n, 0.0), SingularPoint);
    CHECK_ERROR_CODE(time_cov(NoiseSpec::white_white(), 0.5), EvalOfDelta);
    CHECK_ERROR_CODE(time_cov(NoiseSpec::white_time_riesz(0.5, 1), 0.5), EvalOfDelta);
}

TEST_CASE("space covariance: symmetry, scaling and singularities") {
    NoiseSpec r1 = NoiseSpec::riesz(0.5, 0.5, 1);
    CHECK(rel_err(space_cov(r1, {0.7}), std::pow(0.7, -0.5)) < 1e-15);
    CHECK(space_cov(r1, {0.7}) == space_cov(r1, {-0.7}));
    // Riesz homogeneity |cx|^{-lambda} = c^{-lambda} |x|^{-lambda}
    for (double c : {2.0, 5.0, 0.25})
        CHECK(rel_err(space_cov(r1, {c * 0.7}), std::pow(c, -0.5) * space_cov(r1, {0.7})) <
              1e-14);

    NoiseSpec r2 = NoiseSpec::riesz(0.5, 1.2, 2);
    double r = std::hypot(0.3, 0.4);
    CHECK(rel_err(space_cov(r2, {0.3, 0.4}), std::pow(r, -1.2)) < 1e-14);
    CHECK(space_cov(r2, {0.3, 0.4}) == space_cov(r2, {-0.3, -0.4}));

    NoiseSpec pr = NoiseSpec::product(0.5, {0.3, 0.7});
    CHECK(rel_err(space_cov(pr, {0.5, 2.0}),
                  std::pow(0.5, -0.3) * std::pow(2.0, -0.7)) < 1e-14);
    CHECK(space_cov(pr, {0.5, 2.0}) == space_cov(pr, {-0.5, 2.0}));

    CHECK_ERROR_CODE(space_cov(r1, {0.0}), SingularPoint);
    CHECK_ERROR_CODE(space_cov(pr, {0.0, 1.0}), SingularPoint);
    CHECK_ERROR_CODE(space_cov(NoiseSpec::white_white(), {0.5}), EvalOfDelta);
    CHECK_ERROR_CODE(space_cov(r2, {0.3}), UnsupportedParameter);
}

TEST_CASE("spectral density values") {
    NoiseSpec r1 = NoiseSpec::riesz(0.5, 0.5, 1);
    CHECK(rel_err(spectral_density(r1, {2.0}), std::pow(2.0, 0.5 - 1.0)) < 1e-15);
    NoiseSpec r3 = NoiseSpec::riesz(0.5, 1.5, 3);
    double xi = std::sqrt(1.0 + 4.0 + 0.25);
    CHECK(rel_err(spectral_density(r3, {1.0, 2.0, 0.5}), std::pow(xi, 1.5 - 3.0)) < 1e-14);
    NoiseSpec pr = NoiseSpec::product(0.5, {0.3, 0.7});
    CHECK(rel_err(spectral_density(pr, {0.5, 2.0}),
                  std::pow(0.5, 0.3 - 1.0) * std::pow(2.0, 0.7 - 1.0)) < 1e-14);
    CHECK(spectral_density(NoiseSpec::white_white(), {3.0}) == 1.0);
    CHECK(has_spectral_density(r1));
    CHECK_ERROR_CODE(spectral_density(r1, {0.0}), SingularPoint);
}

TEST_CASE("total spatial singularity order") {
    CHECK(lambda_total(NoiseSpec::riesz(0.5, 0.8, 1)) == 0.8);
    CHECK(lambda_total(NoiseSpec::riesz(0.5, 1.7, 3)) == 1.7);
    CHECK(rel_err(lambda_total(NoiseSpec::product(0.5, {0.3, 0.7})), 1.0) < 1e-15);
    CHECK(lambda_total(NoiseSpec::white_white()) == 1.0);
    CHECK(white_in_time(NoiseSpec::white_white()));
    CHECK(white_in_space(NoiseSpec::white_white()));
    CHECK(!white_in_time(NoiseSpec::riesz(0.5, 0.5, 1)));
    CHECK(!white_in_space(NoiseSpec::riesz(0.5, 0.5, 1)));
    CHECK(white_in_time(NoiseSpec::white_time_riesz(0.5, 1)));
}

TEST_CASE("gamma and Hurst conversions invert each other") {
    CHECK(rel_err(gamma_from_hurst(0.75), 0.5) < 1e-15);
    CHECK(rel_err(hurst_from_gamma(0.5), 0.75) < 1e-15);
    for (double H : {0.55, 0.6, 0.85, 0.99})
        CHECK(rel_err(hurst_from_gamma(gamma_from_hurst(H)), H) < 1e-14);
    CHECK_ERROR_CODE(gamma_from_hurst(0.5), UnsupportedParameter);
    CHECK_ERROR_CODE(gamma_from_hurst(1.0), UnsupportedParameter);
    CHECK_ERROR_CODE(hurst_from_gamma(0.0), UnsupportedParameter);
}

// The spatial covariance |x|^{-lambda} and the spectral density |xi|^{lambda-1}
// returned by the library must form a Fourier pair in the convention
// F[|x|^{-lambda}](xi) = c |xi|^{lambda-1}, c = 2 Gamma(1-lambda) sin(pi lambda / 2).
// Check Parseval against the Gaussian g(x) = exp(-x^2/2), ghat(xi) =
// sqrt(2 pi) exp(-xi^2/2):
//     Int cov(x) g(x) dx  =  (c / 2 pi) Int density(xi) ghat(xi) dxi.
// Both sides are integrated after power substitutions x = v^{1/(1-lambda)},
// xi = w^{1/lambda} that remove the endpoint singularities, and compared with
// each other and with the Gamma-function closed form.
TEST_CASE("Riesz covariance and its spectral density form the stated Fourier pair") {
    for (double lambda : {0.5, 0.3}) {
        NoiseSpec n = NoiseSpec::white_time_riesz(lambda, 1);

        double pcov = 1.0 / (1.0 - lambda);
        auto cov_integrand = [&](double v) {
            if (v == 0.0) return pcov;  // x^{-lambda} dx is v-smooth at 0
            double x = std::pow(v, pcov);
            return space_cov(n, {x}) * std::exp(-x * x / 2.0) * pcov *
                   std::pow(v, pcov - 1.0);
        };
        double vmax = std::pow(6.0, 1.0 - lambda);
        double lhs = 2.0 * simpson(cov_integrand, 0.0, vmax, 3000);

        double pden = 1.0 / lambda;
        auto den_integrand = [&](double w) {
            if (w == 0.0) return pden;
            double xi = std::pow(w, pden);
            return spectral_density(n, {xi}) * std::exp(-xi * xi / 2.0) * pden *
                   std::pow(w, pden - 1.0);
        };
        double wmax = std::pow(40.0, lambda);
        double rhs_core = 2.0 * simpson(den_integrand, 0.0, wmax, 3000);

        double c_pair = 2.0 * std::tgamma(1.0 - lambda) * std::sin(M_PI * lambda / 2.0);
        double rhs = (c_pair / (2.0 * M_PI)) * std::sqrt(2.0 * M_PI) * rhs_core;

        double closed = 2.0 * std::pow(2.0, (1.0 - lambda) / 2.0 - 1.0) *
                        std::tgamma((1.0 - lambda) / 2.0);

        CAPTURE(lambda);
        CHECK(rel_err(lhs, closed) < 1e-5);
        CHECK(rel_err(rhs, closed) < 1e-5);
        CHECK(rel_err(lhs, rhs) < 1e-5);
    }
}

TEST_CASE("describe produces distinct nonempty labels") {
    CHECK(!describe(NoiseSpec::white_white()).empty());
    CHECK(!describe(NoiseSpec::riesz(0.5, 0.5, 1)).empty());
    CHECK(describe(NoiseSpec::white_white()) != describe(NoiseSpec::riesz(0.5, 0.5, 1)));
}

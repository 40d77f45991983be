#include "chaosmoments/exponents.hpp"

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

KernelScaling kernel_scaling(KernelKind kind, const Rational& alpha, const Rational& beta) {
    switch (kind) {
        case KernelKind::Heat: return {Rational(0), Rational(2)};
        case KernelKind::AlphaHeat:
            if (!(alpha > 0 && alpha < 2))
                fail(ErrorCode::ConstraintViolated,
                     "alpha-heat stability index must lie in (0,2)");
            return {Rational(0), alpha};
        case KernelKind::Wave: return {Rational(1), Rational(1)};
        case KernelKind::FracDiff:
            if (!(alpha > 0 && alpha <= 2))
                fail(ErrorCode::ConstraintViolated,
                     "fractional-diffusion alpha must lie in (0,2]");
            if (!(beta > Rational(1, 2) && beta < 2))
                fail(ErrorCode::ConstraintViolated,
                     "fractional-diffusion beta must lie in (1/2,2)");
            return {beta - 1, alpha / beta};
    }
    fail(ErrorCode::ConstraintViolated, "unknown kernel kind");
}

Rational hbar_rational(const KernelScaling& ks, const Rational& lambda) {
    return 2 * ks.a - lambda / ks.b;
}

Rational growth_denominator(const KernelScaling& ks, const Rational& lambda) {
    Rational D = ks.b * (2 * ks.a + 1) - lambda;
    if (!(D > 0))
        fail(ErrorCode::ConstraintViolated,
             "b(2a+1) - lambda must be positive for exponential moment growth");
    return D;
}

static void check_gamma(const Rational& gamma) {
    if (!(gamma > 0 && gamma <= 1))
        fail(ErrorCode::ConstraintViolated, "time exponent gamma must lie in (0,1]");
}

RationalPair lower_exponents(const Rational& a, const Rational& b,
                             const Rational& lambda, const Rational& gamma) {
    check_gamma(gamma);
    if (!(a > -1))
        fail(ErrorCode::ConstraintViolated, "scaling exponent a must exceed -1");
    if (!(b > 0))
        fail(ErrorCode::ConstraintViolated, "scaling exponent b must be positive");
    Rational D = growth_denominator({a, b}, lambda);
    return {1 + b * (1 - gamma) / D, 1 + b / D};
}

RationalPair upper_exponents(const Rational& hbar, const Rational& gamma) {
    check_gamma(gamma);
    Rational h1 = hbar + 1;
    if (!(h1 > 0))
        fail(ErrorCode::ConstraintViolated,
             "hbar must exceed -1 for exponential moment growth");
    return {1 + (1 - gamma) / h1, 1 + 1 / h1};
}

bool matching_check(const Rational& a, const Rational& b, const Rational& lambda,
                    const Rational& gamma) {
    RationalPair lo = lower_exponents(a, b, lambda, gamma);
    RationalPair up = upper_exponents(hbar_rational({a, b}, lambda), gamma);
    return lo == up;
}

RationalPair closed_form_exponents(KernelKind kind, const Rational& alpha,
                                   const Rational& beta, const Rational& gamma,
                                   const Rational& lambda) {
    check_gamma(gamma);
    Rational H = 1 - gamma / 2;
    switch (kind) {
        case KernelKind::Heat:
            if (!(lambda < 2)) fail(ErrorCode::ConstraintViolated, "heat requires lambda < 2");
            return {(4 * H - lambda) / (2 - lambda), (4 - lambda) / (2 - lambda)};
        case KernelKind::AlphaHeat:
            if (!(lambda < alpha))
                fail(ErrorCode::ConstraintViolated, "alpha-heat requires lambda < alpha");
            return {(2 * H * alpha - lambda) / (alpha - lambda),
                    (2 * alpha - lambda) / (alpha - lambda)};
        case KernelKind::Wave:
            if (!(lambda < 3)) fail(ErrorCode::ConstraintViolated, "wave requires lambda < 3");
            return {(2 * H + 2 - lambda) / (3 - lambda), (4 - lambda) / (3 - lambda)};
        case KernelKind::FracDiff: {
            Rational den = 2 * alpha * beta - alpha - beta * lambda;
            if (!(den > 0))
                fail(ErrorCode::ConstraintViolated,
                     "2 alpha beta - alpha - beta lambda must be positive");
            return {(alpha * (2 * beta + 2 * H - 2) - beta * lambda) / den,
                    beta * (2 * alpha - lambda) / den};
        }
    }
    fail(ErrorCode::ConstraintViolated, "unknown kernel kind");
}

ExponentRow table_row(KernelKind kind, const Rational& alpha, const Rational& beta,
                      const Rational& lambda, const Rational& hurst) {
    if (!(hurst >= Rational(1, 2) && hurst < 1))
        fail(ErrorCode::ConstraintViolated, "Hurst index must lie in [1/2,1)");
    Rational gamma = 2 - 2 * hurst;
    KernelScaling ks = kernel_scaling(kind, alpha, beta);

    ExponentRow row;
    row.kind = kind;
    row.alpha = alpha;
    row.beta = beta;
    row.a = ks.a;
    row.b = ks.b;
    row.hbar = hbar_rational(ks, lambda);
    row.lambda = lambda;
    row.gamma = gamma;
    row.hurst = hurst;
    row.lower = lower_exponents(ks.a, ks.b, lambda, gamma);
    row.upper = upper_exponents(row.hbar, gamma);
    row.closed_form = closed_form_exponents(kind, alpha, beta, gamma, lambda);
    return row;
}

}  // namespace chaosmoments

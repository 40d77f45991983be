#pragma once

#include "chaosmoments/kernels.hpp"
#include "chaosmoments/rational.hpp"

namespace chaosmoments {

// Exponent pair (theta_t, theta_p) in a moment growth claim of the form
// log E|u(t,x)|^p ~ t^{theta_t} p^{theta_p}.
struct RationalPair {
    Rational t_exp;
    Rational p_exp;

    bool operator==(const RationalPair& o) const {
        return t_exp == o.t_exp && p_exp == o.p_exp;
    }
    bool operator!=(const RationalPair& o) const { return !(*this == o); }
};

// Scaling pair (a, b) of a kernel family: ball mass scales like t^a for balls
// of radius t^{1/b}.
struct KernelScaling {
    Rational a;
    Rational b;
};

// One row of the exponent table: inputs, scaling data, and the exponent pairs
// computed by the three routes (lower bound, upper bound, closed form in H).
struct ExponentRow {
    KernelKind kind;
    Rational alpha;
    Rational beta;
    Rational a;
    Rational b;
    Rational hbar;
    Rational lambda;
    Rational gamma;
    Rational hurst;
    RationalPair lower;
    RationalPair upper;
    RationalPair closed_form;
};

// (a, b) for each kernel family: heat (0,2), alpha-heat (0,alpha),
// wave (1,1), fractional diffusion (beta-1, alpha/beta).
KernelScaling kernel_scaling(KernelKind kind, const Rational& alpha = Rational(2),
                             const Rational& beta = Rational(1));

// hbar = 2a - lambda/b.
Rational hbar_rational(const KernelScaling& ks, const Rational& lambda);

// D = b(2a+1) - lambda; throws ConstraintViolated unless D > 0.
Rational growth_denominator(const KernelScaling& ks, const Rational& lambda);

// Lower-bound exponents (1 + b(1-gamma)/D, 1 + b/D) with D = b(2a+1) - lambda.
RationalPair lower_exponents(const Rational& a, const Rational& b,
                             const Rational& lambda, const Rational& gamma);

// Upper-bound exponents (1 + (1-gamma)/(hbar+1), 1 + 1/(hbar+1)).
RationalPair upper_exponents(const Rational& hbar, const Rational& gamma);

// True iff upper_exponents(2a - lambda/b, gamma) == lower_exponents(a, b,
// lambda, gamma) as exact rationals.
bool matching_check(const Rational& a, const Rational& b, const Rational& lambda,
                    const Rational& gamma);

// Closed-form exponent pairs in terms of H = 1 - gamma/2:
//   heat       ((4H-l)/(2-l),             (4-l)/(2-l))
//   alpha-heat ((2Ha-l)/(a-l),            (2a-l)/(a-l))
//   wave       ((2H+2-l)/(3-l),           (4-l)/(3-l))
//   frac diff  ((a(2b+2H-2)-bl)/(2ab-a-bl), b(2a-l)/(2ab-a-bl))
// with l = lambda, a = alpha, b = beta.
RationalPair closed_form_exponents(KernelKind kind, const Rational& alpha,
                                   const Rational& beta, const Rational& gamma,
                                   const Rational& lambda);

// Full table row for the given kernel at (lambda, H); gamma = 2 - 2H.
ExponentRow table_row(KernelKind kind, const Rational& alpha, const Rational& beta,
                      const Rational& lambda, const Rational& hurst);

}  // namespace chaosmoments

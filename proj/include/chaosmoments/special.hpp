#pragma once

namespace chaosmoments {

// Mittag-Leffler function E_{beta,beta2}(z) = sum_k z^k / Gamma(beta k + beta2)
// for real z, beta in (0,2], beta2 > 0. Negative arguments far below the
// series/asymptotic switch point use the algebraic expansion plus, for
// beta > 1, the damped oscillatory pair term; the two branches are checked
// against each other near the switch point once per (beta, beta2).
double mittag_leffler(double beta, double beta2, double z);

// Wright function phi(a,b;z) = sum_k z^k / (k! Gamma(a k + b)), a > -1.
double wright(double a, double b, double z);

// M-Wright density M_nu(x) = phi(-nu, 1-nu; -x), nu in (0,1), x >= 0.
double mwright(double nu, double x);

// One-sided stable density with Laplace transform exp(-s^beta), beta in (0,1).
double stable_density_oneside(double beta, double x);

// Neutral-fractional density N_alpha(r) on r >= 0, alpha in (1,2]:
//   (1/pi) r^{alpha-1} sin(pi alpha/2) / (1 + 2 r^alpha cos(pi alpha/2) + r^{2 alpha}).
// At alpha = 2 the numerator vanishes identically (degenerate case).
struct NeutralResult {
    double value;
    bool degenerate_alpha;
};
NeutralResult neutral_fractional(double alpha, double r);

// Residue series used by the time-subordination representation for d=1,
// beta < alpha:  H(z) = sum_l (-1)^l z^{(1+l)/alpha} / (alpha l! Gamma(beta - beta(1+l)/alpha)).
double subordination_h_series(double alpha, double beta, double z);

}  // namespace chaosmoments

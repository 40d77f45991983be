#pragma once

#include <vector>

namespace chaosmoments {

// Green-function families on R^d, d <= 3, all with unit diffusivity folded in:
//   Heat      (2 pi t)^{-d/2} exp(-|x|^2 / 2t),        symbol exp(-t |xi|^2 / 2)
//   AlphaHeat alpha-stable semigroup, alpha in (0,2),  symbol exp(-t |xi|^alpha / 2)
//   Wave      d'Alembert solution kernel,              symbol sin(t |xi|) / |xi|
//   FracDiff  time-fractional diffusion,               symbol t^{beta-1} E_{beta,beta}(-t^beta |xi|^alpha / 2)

enum class KernelKind { Heat, AlphaHeat, Wave, FracDiff };

struct KernelSpec {
    KernelKind kind = KernelKind::Heat;
    int d = 1;
    double alpha = 2.0;
    double beta = 1.0;

    static KernelSpec heat(int d);
    static KernelSpec alpha_heat(int d, double alpha);
    static KernelSpec wave(int d);
    static KernelSpec frac(int d, double alpha, double beta);
};

// Parameter admissibility. FracDiff is restricted to the regimes where the
// kernel is available here: beta in (1/2,1] with any alpha in (0,2] and d <= 3;
// beta in (1,2) with alpha = 2 and d in {2,3}; beta in (1,2) with d = 1 and
// alpha in [beta,2].
void validate(const KernelSpec& k);

// Self-similar scaling pair (a, b): sup-norm growth t^{-d/b+a}-type and the
// natural small-ball clock t = eps^b; (0,2) heat, (0,alpha) alpha-heat,
// (1,1) wave, (beta-1, alpha/beta) fractional diffusion.
double scaling_a(const KernelSpec& k);
double scaling_b(const KernelSpec& k);

// Spectral-decay exponent hbar = 2 a - lambda / b for total spatial order lambda.
double hbar_exponent(const KernelSpec& k, double lambda);

// Pointwise kernel value. Wave d=3 carries a surface measure and has no
// density (MeasureKernelNoDensity); wave d=2 returns +inf on |x| = t.
// Unbounded-at-origin fractional kernels return +inf at x = 0.
double kernel_value(const KernelSpec& k, double t, const std::vector<double>& x);

// Radial Fourier transform value at |xi| = xi_norm (xi_norm >= 0).
double kernel_fourier(const KernelSpec& k, double t, double xi_norm);

// Total mass Int_{R^d} G_t: 1, 1, t, t^{beta-1}/Gamma(beta).
double total_mass(const KernelSpec& k, double t);

// Mass the kernel centred at y puts on the ball B_eps(x), delta = |x - y|.
double ball_mass(const KernelSpec& k, double t, double delta, double eps);

// Nash-type envelope for the alpha-stable semigroup:
// C-free form min(t^{-d/alpha}, t / |x|^{d+alpha}).
double alpha_heat_envelope(const KernelSpec& k, double t, double xnorm);

}  // namespace chaosmoments

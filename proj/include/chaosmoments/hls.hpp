#pragma once

#include <utility>
#include <vector>

#include "chaosmoments/kernels.hpp"
#include "chaosmoments/noise.hpp"

namespace chaosmoments {

struct HlsReport {
    KernelSpec kernel;
    NoiseSpec noise;
    std::vector<double> t_grid;
    std::vector<double> values;
    double fitted_hbar = 0.0;
    double closed_form_hbar = 0.0;
    double abs_gap = 0.0;
};

// int |G^hat_t(xi - eta e_1)|^2 f(xi) dxi at a single shift eta, where f is
// the spectral density of the noise. d=1 integrates over the line; d=2,3
// reduce to polar/spherical coordinates (isotropic covariance only).
double hls_mass_spectral_at(const KernelSpec& spec, const NoiseSpec& noise, double t,
                            double eta);

// sup over the shift grid eta in {0, t^{-1/b}, 2 t^{-1/b}, ...}: 32 points for
// oscillatory symbols (wave, fractional diffusion with beta > 1), 4 otherwise.
double hls_mass_spectral(const KernelSpec& spec, const NoiseSpec& noise, double t);

// Physical-side route for the same quantity at d=1, computed without the
// spectral density: int ac_t(u) Lambda(u) du with ac_t the kernel
// autocorrelation (heat and alpha-heat close under convolution, wave gives a
// triangle). Used to cross-check the spectral route up to the Fourier-pair
// constant of |x|^{-lambda}.
double hls_mass_direct(const KernelSpec& spec, const NoiseSpec& noise, double t);

// (int G_t dy, sup_x int G_t(x - y) Lambda(y) dy); the sup is taken over a
// deterministic grid including x = 0. d=1 only.
std::pair<double, double> weighted_mass(const KernelSpec& spec, const NoiseSpec& noise,
                                        double t);

// Closed-form scaling exponent of the spectral mass: heat -lambda/2,
// alpha-heat -lambda/alpha, wave 2-lambda, frac diff 2(beta-1)-beta*lambda/alpha.
double hls_closed_form_hbar(const KernelSpec& spec, const NoiseSpec& noise);

// Least-squares slope of log(mass) against log(t). Requires >= 8 log-spaced
// t values spanning >= 2 decades with every t <= 0.1.
HlsReport fit_hbar(const KernelSpec& spec, const NoiseSpec& noise,
                   const std::vector<double>& t_grid);

}  // namespace chaosmoments

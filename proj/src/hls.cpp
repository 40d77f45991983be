#include "chaosmoments/hls.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/quadrature.hpp"

namespace chaosmoments {

namespace {

double sq(double x) { return x * x; }

double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
    }
    fail(ErrorCode::DimensionCap, "sphere area supports d <= 3");
}

// |G^hat_t|^2 as a function of the radius.
double symbol_sq(const KernelSpec& spec, double t, double r) {
    return sq(kernel_fourier(spec, t, r));
}

// Radius beyond which the non-wave symbol square is negligible or purely in
// its algebraic tail.
double tail_start(const KernelSpec& spec, double t) {
    switch (spec.kind) {
        case KernelKind::Heat: return std::sqrt(800.0 / t);
        case KernelKind::AlphaHeat: return std::pow(800.0 / t, 1.0 / spec.alpha);
        case KernelKind::FracDiff:
            return std::pow(100.0 / std::pow(t, spec.beta), 1.0 / spec.alpha);
        case KernelKind::Wave: break;
    }
    fail(ErrorCode::UnsupportedParameter, "tail start undefined for the wave symbol");
}

std::vector<double> sorted_unique(std::vector<double> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// d=1 spectral mass for the smooth monotone symbols.
double mass1d_smooth(const KernelSpec& spec, const NoiseSpec& noise, double t, double eta) {
    auto g = [&](double xi) { return symbol_sq(spec, t, std::abs(xi - eta)) *
                                     spectral_density(noise, {xi}); };
    double A = eta + tail_start(spec, t);
    double central = integrate_split(g, sorted_unique({-A, 0.0, eta, A}), 1e-10);
    double up = integrate_upper(g, A).value;
    double down = integrate_upper([&](double xi) { return g(-xi); }, A).value;
    return central + up + down;
}

// d=1 spectral mass for the wave symbol sin^2(t u)/u^2, integrated in the
// shifted variable u = xi - eta. The oscillation is resolved explicitly:
// a central box of a few periods, then half-range Fourier tails.
double mass1d_wave(const NoiseSpec& noise, double t, double eta) {
    auto wsq = [t](double u) {
        if (u == 0.0) return t * t;
        return sq(std::sin(t * u) / u);
    };
    auto f = [&](double y) { return spectral_density(noise, {y}); };

    double B = 4.0 * M_PI / t;
    auto g = [&](double u) { return wsq(u) * f(u + eta); };

    std::vector<double> pts{-B, 0.0, B};
    if (-eta > -B && -eta < B) pts.push_back(-eta);
    double total = integrate_split(g, sorted_unique(pts), 1e-10);

    // right tail: f(u + eta) smooth for u >= B
    auto hplus = [&](double u) { return f(u + eta) / (u * u); };
    total += 0.5 * integrate_upper(hplus, B).value;
    total -= 0.5 * integrate_fourier(hplus, B, 2.0 * t, false).value;

    // left tail, reflected to v >= B: integrand sin^2(tv)/v^2 * f(eta - v),
    // whose weight is singular at v = eta when eta > B
    auto gleft = [&](double v) { return wsq(v) * f(eta - v); };
    double vstart = B;
    if (eta > B) {
        total += integrate_split(gleft, {B, eta, 2.0 * eta}, 1e-10);
        vstart = 2.0 * eta;
    }
    auto hminus = [&](double v) { return f(eta - v) / (v * v); };
    total += 0.5 * integrate_upper(hminus, vstart).value;
    total -= 0.5 * integrate_fourier(hminus, vstart, 2.0 * t, false).value;
    return total;
}

// radial reduction at eta = 0 for isotropic noise in d >= 2
double mass_radial_origin(const KernelSpec& spec, const NoiseSpec& noise, double t) {
    double lam = lambda_total(noise);
    double area = sphere_area(spec.d);
    if (spec.kind == KernelKind::Wave) {
        double B = 4.0 * M_PI / t;
        auto g = [&](double r) { return sq(std::sin(t * r)) * std::pow(r, lam - 3.0); };
        double head = integrate_singular(g, 0.0, B).value;
        double tail_mean = 0.5 * std::pow(B, lam - 2.0) / (2.0 - lam);
        auto h = [&](double r) { return 0.5 * std::pow(r, lam - 3.0); };
        double tail_osc = integrate_fourier(h, B, 2.0 * t, false).value;
        return area * (head + tail_mean - tail_osc);
    }
    double A = tail_start(spec, t);
    auto g = [&](double r) { return symbol_sq(spec, t, r) * std::pow(r, lam - 1.0); };
    return area * (integrate_split(g, {0.0, A}, 1e-10) + integrate_upper(g, A).value);
}

// nested angular reduction for a shifted center, d >= 2, smooth symbols
double mass_radial_shift(const KernelSpec& spec, const NoiseSpec& noise, double t,
                         double eta) {
    double lam = lambda_total(noise);
    int d = spec.d;
    auto angular = [&](double r) {
        if (d == 2) {
            auto arc = [&](double theta) {
                double dist = std::sqrt(std::max(0.0, r * r + eta * eta -
                                                          2.0 * r * eta * std::cos(theta)));
                return symbol_sq(spec, t, dist);
            };
            return 2.0 * integrate(arc, 0.0, M_PI, 0.0, 1e-8).value;
        }
        auto slice = [&](double c) {
            double dist = std::sqrt(std::max(0.0, r * r + eta * eta - 2.0 * r * eta * c));
            return symbol_sq(spec, t, dist);
        };
        return 2.0 * M_PI * integrate(slice, -1.0, 1.0, 0.0, 1e-8).value;
    };
    auto g = [&](double r) { return angular(r) * std::pow(r, lam - 1.0); };
    double A = eta + tail_start(spec, t);
    return integrate_split(g, sorted_unique({0.0, eta, A}), 1e-8) +
           integrate_upper(g, A, 1e-14, 1e-8).value;
}

void check_spectral_inputs(const KernelSpec& spec, const NoiseSpec& noise, double t) {
    validate(spec);
    validate(noise);
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "time must be positive");
    if (!has_spectral_density(noise))
        fail(ErrorCode::NoSpectralDensity, "noise has no spectral density");
    if (noise.d != spec.d)
        fail(ErrorCode::BadUsage, "kernel and noise dimensions disagree");
    if (spec.kind == KernelKind::Wave && lambda_total(noise) >= 2.0)
        fail(ErrorCode::SingularityNotIntegrable,
             "wave spectral mass diverges for lambda >= 2");
    if (spec.d > 1 && noise.space == SpaceKind::ProductRL)
        fail(ErrorCode::DimensionCap,
             "product spatial covariance supported in the spectral mass at d=1 only");
}

}  // namespace

double hls_mass_spectral_at(const KernelSpec& spec, const NoiseSpec& noise, double t,
                            double eta) {
    check_spectral_inputs(spec, noise, t);
    eta = std::abs(eta);
    if (spec.d == 1) {
        if (spec.kind == KernelKind::Wave) return mass1d_wave(noise, t, eta);
        return mass1d_smooth(spec, noise, t, eta);
    }
    if (eta == 0.0) return mass_radial_origin(spec, noise, t);
    if (spec.kind == KernelKind::Wave)
        fail(ErrorCode::DimensionCap, "shifted wave spectral mass supported at d=1 only");
    return mass_radial_shift(spec, noise, t, eta);
}

double hls_mass_spectral(const KernelSpec& spec, const NoiseSpec& noise, double t) {
    check_spectral_inputs(spec, noise, t);
    bool oscillatory = spec.kind == KernelKind::Wave ||
                       (spec.kind == KernelKind::FracDiff && spec.beta > 1.0);
    int npts = oscillatory ? 32 : 4;
    if (spec.d > 1 && spec.kind == KernelKind::Wave) npts = 1;
    double spacing = std::pow(t, -1.0 / scaling_b(spec));
    double best = 0.0;
    for (int k = 0; k < npts; ++k)
        best = std::max(best, hls_mass_spectral_at(spec, noise, t, k * spacing));
    return best;
}

double hls_mass_direct(const KernelSpec& spec, const NoiseSpec& noise, double t) {
    validate(spec);
    validate(noise);
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "time must be positive");
    if (spec.d != 1 || noise.d != 1)
        fail(ErrorCode::DimensionCap, "direct mass route supported at d=1 only");

    // kernel autocorrelation: heat and alpha-heat close under convolution,
    // the wave indicator gives a triangle
    std::function<double(double)> ac;
    double support = 0.0;
    switch (spec.kind) {
        case KernelKind::Heat:
        case KernelKind::AlphaHeat:
            ac = [&](double u) { return kernel_value(spec, 2.0 * t, {u}); };
            break;
        case KernelKind::Wave:
            ac = [&](double u) {
                double a = std::abs(u);
                return a >= 2.0 * t ? 0.0 : 0.25 * (2.0 * t - a);
            };
            support = 2.0 * t;
            break;
        case KernelKind::FracDiff:
            fail(ErrorCode::UnsupportedParameter,
                 "direct mass requires a convolution square or compact support");
    }

    if (white_in_space(noise)) return ac(0.0);

    auto g = [&](double u) { return ac(u) * space_cov(noise, {u}); };
    if (support > 0.0) return 2.0 * integrate_singular(g, 0.0, support).value;

    double w = spec.kind == KernelKind::Heat ? std::sqrt(2.0 * t)
                                             : std::pow(2.0 * t, 1.0 / spec.alpha);
    return 2.0 * (integrate_singular(g, 0.0, w).value + integrate_upper(g, w).value);
}

std::pair<double, double> weighted_mass(const KernelSpec& spec, const NoiseSpec& noise,
                                        double t) {
    validate(spec);
    validate(noise);
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "time must be positive");
    if (spec.d != 1 || noise.d != 1)
        fail(ErrorCode::DimensionCap, "weighted mass supported at d=1 only");

    double total = total_mass(spec, t);
    double step = std::pow(t, 1.0 / scaling_b(spec));
    static const double kOffsets[5] = {0.0, 0.5, 1.0, 2.0, 4.0};

    auto weighted_at = [&](double x) {
        if (white_in_space(noise)) return kernel_value(spec, t, {x});
        if (spec.kind == KernelKind::Wave) {
            double lam = lambda_total(noise);
            auto prim = [lam](double y) {
                double a = std::abs(y);
                double v = std::pow(a, 1.0 - lam) / (1.0 - lam);
                return y < 0.0 ? -v : v;
            };
            return 0.5 * (prim(x + t) - prim(x - t));
        }
        auto g = [&](double y) { return kernel_value(spec, t, {x - y}) *
                                        space_cov(noise, {y}); };
        double T = std::abs(x) + (spec.kind == KernelKind::Heat
                                      ? 12.0 * std::sqrt(t)
                                      : 12.0 * std::pow(t, 1.0 / scaling_b(spec)));
        double central = integrate_split(g, sorted_unique({-T, 0.0, x, T}), 1e-9);
        double up = integrate_upper(g, T, 1e-14, 1e-9).value;
        double down = integrate_upper([&](double y) { return g(-y); }, T, 1e-14, 1e-9).value;
        return central + up + down;
    };

    double sup = 0.0;
    for (double k : kOffsets) sup = std::max(sup, weighted_at(k * step));
    return {total, sup};
}

double hls_closed_form_hbar(const KernelSpec& spec, const NoiseSpec& noise) {
    return hbar_exponent(spec, lambda_total(noise));
}

HlsReport fit_hbar(const KernelSpec& spec, const NoiseSpec& noise,
                   const std::vector<double>& t_grid) {
    std::size_t n = t_grid.size();
    if (n < 8) fail(ErrorCode::InsufficientGrid, "need at least 8 grid points");
    for (double t : t_grid)
        if (!(t > 0.0) || t > 0.1)
            fail(ErrorCode::InsufficientGrid, "every t must lie in (0, 0.1]");
    double tmin = *std::min_element(t_grid.begin(), t_grid.end());
    double tmax = *std::max_element(t_grid.begin(), t_grid.end());
    if (tmax / tmin < 99.99)
        fail(ErrorCode::InsufficientGrid, "grid must span at least two decades");
    double step = std::log(tmax / tmin) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        double expected = std::log(tmin) + static_cast<double>(i) * step;
        if (std::abs(std::log(t_grid[i]) - expected) > 1e-6)
            fail(ErrorCode::InsufficientGrid, "grid must be log-spaced ascending");
    }

    HlsReport rep;
    rep.kernel = spec;
    rep.noise = noise;
    rep.t_grid = t_grid;
    std::vector<double> lx, ly;
    for (double t : t_grid) {
        double v = hls_mass_spectral(spec, noise, t);
        rep.values.push_back(v);
        lx.push_back(std::log(t));
        ly.push_back(std::log(v));
    }
    double c0, c1, cov00, cov01, cov11, sumsq;
    gsl_fit_linear(lx.data(), 1, ly.data(), 1, n, &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
    rep.fitted_hbar = c1;
    rep.closed_form_hbar = hls_closed_form_hbar(spec, noise);
    rep.abs_gap = std::abs(rep.fitted_hbar - rep.closed_form_hbar);
    return rep;
}

}  // namespace chaosmoments

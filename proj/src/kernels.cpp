#include "chaosmoments/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/profile.hpp"
#include "chaosmoments/quadrature.hpp"
#include "chaosmoments/special.hpp"

namespace chaosmoments {

namespace {

double norm_of(const std::vector<double>& x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::sqrt(r2);
}

void check_time(double t) {
    if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "kernel time must be positive");
}

double clamp1(double v) { return std::min(1.0, std::max(-1.0, v)); }

// scale factor s and prefactor c with G_t(x) = c s^d P_d(s |x|)
struct ProfileScale {
    double s;
    double pref;
};

ProfileScale profile_scale(const KernelSpec& k, double t) {
    if (k.kind == KernelKind::AlphaHeat)
        return {std::pow(2.0 / t, 1.0 / k.alpha), 1.0};
    return {std::pow(2.0 / std::pow(t, k.beta), 1.0 / k.alpha), std::pow(t, k.beta - 1.0)};
}

const RadialProfile& profile_of(const KernelSpec& k) {
    return radial_profile(k.alpha, k.kind == KernelKind::AlphaHeat ? 0.0 : k.beta, k.d);
}

}  // namespace

KernelSpec KernelSpec::heat(int d) {
    KernelSpec k{KernelKind::Heat, d, 2.0, 1.0};
    validate(k);
    return k;
}

KernelSpec KernelSpec::alpha_heat(int d, double alpha) {
    KernelSpec k{KernelKind::AlphaHeat, d, alpha, 1.0};
    validate(k);
    return k;
}

KernelSpec KernelSpec::wave(int d) {
    KernelSpec k{KernelKind::Wave, d, 2.0, 1.0};
    validate(k);
    return k;
}

KernelSpec KernelSpec::frac(int d, double alpha, double beta) {
    KernelSpec k{KernelKind::FracDiff, d, alpha, beta};
    validate(k);
    return k;
}

void validate(const KernelSpec& k) {
    if (k.d < 1 || k.d > 3)
        fail(ErrorCode::DimensionCap, "kernel dimension must be 1, 2 or 3");
    switch (k.kind) {
        case KernelKind::Heat:
        case KernelKind::Wave:
            return;
        case KernelKind::AlphaHeat:
            if (!(k.alpha > 0.0 && k.alpha < 2.0))
                fail(ErrorCode::UnsupportedParameter,
                     "alpha-heat stability index must lie in (0,2)");
            return;
        case KernelKind::FracDiff: {
            if (!(k.alpha > 0.0 && k.alpha <= 2.0))
                fail(ErrorCode::UnsupportedParameter,
                     "fractional-diffusion alpha must lie in (0,2]");
            if (!(k.beta > 0.5 && k.beta < 2.0))
                fail(ErrorCode::UnsupportedParameter,
                     "fractional-diffusion beta must lie in (1/2,2)");
            if (k.beta <= 1.0) return;
            if (k.d == 1 && k.alpha >= k.beta) return;
            if (k.alpha == 2.0 && (k.d == 2 || k.d == 3)) return;
            fail(ErrorCode::UnsupportedParameter,
                 "beta > 1 requires d = 1 with alpha >= beta, or alpha = 2 with d in {2,3}");
        }
    }
}

double scaling_a(const KernelSpec& k) {
    switch (k.kind) {
        case KernelKind::Heat:
        case KernelKind::AlphaHeat: return 0.0;
        case KernelKind::Wave: return 1.0;
        case KernelKind::FracDiff: return k.beta - 1.0;
    }
    return 0.0;
}

double scaling_b(const KernelSpec& k) {
    switch (k.kind) {
        case KernelKind::Heat: return 2.0;
        case KernelKind::AlphaHeat: return k.alpha;
        case KernelKind::Wave: return 1.0;
        case KernelKind::FracDiff: return k.alpha / k.beta;
    }
    return 2.0;
}

double hbar_exponent(const KernelSpec& k, double lambda) {
    return 2.0 * scaling_a(k) - lambda / scaling_b(k);
}

double kernel_value(const KernelSpec& k, double t, const std::vector<double>& x) {
    check_time(t);
    if (int(x.size()) != k.d)
        fail(ErrorCode::UnsupportedParameter, "point dimension does not match kernel");
    double r = norm_of(x);
    switch (k.kind) {
        case KernelKind::Heat:
            return std::pow(2.0 * M_PI * t, -0.5 * k.d) * std::exp(-r * r / (2.0 * t));
        case KernelKind::Wave:
            if (k.d == 1) return r < t ? 0.5 : 0.0;
            if (k.d == 2) {
                if (r > t) return 0.0;
                if (r == t) return std::numeric_limits<double>::infinity();
                return 1.0 / (2.0 * M_PI * std::sqrt(t * t - r * r));
            }
            fail(ErrorCode::MeasureKernelNoDensity,
                 "wave kernel in d=3 is a surface measure without a density");
        case KernelKind::AlphaHeat:
        case KernelKind::FracDiff: {
            ProfileScale ps = profile_scale(k, t);
            double v = profile_of(k)(ps.s * r);
            return ps.pref * std::pow(ps.s, k.d) * v;
        }
    }
    fail(ErrorCode::UnsupportedParameter, "unknown kernel");
}

double kernel_fourier(const KernelSpec& k, double t, double xi_norm) {
    check_time(t);
    if (xi_norm < 0.0)
        fail(ErrorCode::RadiusOutOfRange, "Fourier radius must be >= 0");
    switch (k.kind) {
        case KernelKind::Heat:
            return std::exp(-t * xi_norm * xi_norm / 2.0);
        case KernelKind::AlphaHeat:
            return std::exp(-t * std::pow(xi_norm, k.alpha) / 2.0);
        case KernelKind::Wave:
            return xi_norm == 0.0 ? t : std::sin(t * xi_norm) / xi_norm;
        case KernelKind::FracDiff:
            return std::pow(t, k.beta - 1.0) *
                   mittag_leffler(k.beta, k.beta,
                                  -std::pow(t, k.beta) * std::pow(xi_norm, k.alpha) / 2.0);
    }
    fail(ErrorCode::UnsupportedParameter, "unknown kernel");
}

double total_mass(const KernelSpec& k, double t) { return kernel_fourier(k, t, 0.0); }

namespace {

// angular measure at radius r around the kernel centre of the ball B_eps at
// distance delta: arc angle in d=2, solid angle in d=3
double angle_d2(double r, double delta, double eps) {
    if (delta == 0.0) return r <= eps ? 2.0 * M_PI : 0.0;
    if (r <= 0.0) return delta <= eps ? 2.0 * M_PI : 0.0;
    return 2.0 * std::acos(clamp1((r * r + delta * delta - eps * eps) / (2.0 * r * delta)));
}

double solid_angle_d3(double r, double delta, double eps) {
    if (delta == 0.0) return r <= eps ? 4.0 * M_PI : 0.0;
    if (r <= 0.0) return delta <= eps ? 4.0 * M_PI : 0.0;
    return 2.0 * M_PI *
           (1.0 - clamp1((r * r + delta * delta - eps * eps) / (2.0 * r * delta)));
}

// radial-density ball mass: integrate g(r) r^{d-1} x (angular measure)
template <class G>
double radial_ball_mass(G g, int d, double delta, double eps) {
    double lo = std::max(0.0, delta - eps);
    double hi = delta + eps;
    if (d == 1) {
        // direct interval integral of g(|u|), split at the origin
        auto f = [&](double u) { return g(std::abs(u)); };
        std::vector<double> pts{delta - eps, delta + eps};
        if (delta - eps < 0.0 && delta + eps > 0.0)
            pts = {delta - eps, 0.0, delta + eps};
        return integrate_split(f, pts, 1e-9);
    }
    auto f = [&](double r) {
        double ang = d == 2 ? angle_d2(r, delta, eps) : solid_angle_d3(r, delta, eps);
        return g(r) * std::pow(r, d - 1) * ang;
    };
    std::vector<double> pts{lo};
    for (double p : {std::abs(eps - delta), delta})
        if (p > lo && p < hi) pts.push_back(p);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return integrate_split(f, pts, 1e-9);
}

double wave_ball_mass(const KernelSpec& k, double t, double delta, double eps) {
    if (k.d == 1) {
        double lo = std::max(delta - eps, -t);
        double hi = std::min(delta + eps, t);
        return hi > lo ? 0.5 * (hi - lo) : 0.0;
    }
    if (k.d == 3) {
        if (delta == 0.0) return t <= eps ? t : 0.0;
        double c = clamp1((t * t + delta * delta - eps * eps) / (2.0 * t * delta));
        return 0.5 * t * (1.0 - c);
    }
    // d=2: polar around the cone vertex, r = t sin(theta) removes the
    // inverse-square-root edge singularity
    double lo = std::max(0.0, delta - eps);
    double hi = std::min(t, delta + eps);
    if (hi <= lo) return 0.0;
    double th_lo = std::asin(clamp1(lo / t));
    double th_hi = std::asin(clamp1(hi / t));
    auto f = [&](double th) {
        double r = t * std::sin(th);
        return angle_d2(r, delta, eps) * t * std::sin(th) / (2.0 * M_PI);
    };
    return integrate(f, th_lo, th_hi, 0.0, 1e-10).value;
}

}  // namespace

double ball_mass(const KernelSpec& k, double t, double delta, double eps) {
    check_time(t);
    if (!(eps > 0.0)) fail(ErrorCode::RadiusOutOfRange, "ball radius must be positive");
    if (delta < 0.0) fail(ErrorCode::RadiusOutOfRange, "centre distance must be >= 0");
    switch (k.kind) {
        case KernelKind::Heat: {
            if (k.d == 1) {
                double s = std::sqrt(t);
                auto Phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
                return Phi((delta + eps) / s) - Phi((delta - eps) / s);
            }
            auto g = [&](double r) {
                return std::pow(2.0 * M_PI * t, -0.5 * k.d) * std::exp(-r * r / (2.0 * t));
            };
            return radial_ball_mass(g, k.d, delta, eps);
        }
        case KernelKind::Wave:
            return wave_ball_mass(k, t, delta, eps);
        case KernelKind::AlphaHeat:
        case KernelKind::FracDiff: {
            ProfileScale ps = profile_scale(k, t);
            const RadialProfile& P = profile_of(k);
            // integrate in profile units: mass = pref * Int P(v) v^{d-1} ang dv
            auto g = [&](double v) { return P(v); };
            double m = radial_ball_mass(g, k.d, ps.s * delta, ps.s * eps);
            return ps.pref * m;
        }
    }
    fail(ErrorCode::UnsupportedParameter, "unknown kernel");
}

double alpha_heat_envelope(const KernelSpec& k, double t, double xnorm) {
    if (k.kind != KernelKind::AlphaHeat)
        fail(ErrorCode::UnsupportedParameter, "envelope applies to the alpha-heat kernel");
    check_time(t);
    double far = t / std::pow(std::abs(xnorm), k.d + k.alpha);
    return std::min(std::pow(t, -double(k.d) / k.alpha), far);
}

}  // namespace chaosmoments

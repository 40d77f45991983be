#include "chaosmoments/profile.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/quadrature.hpp"
#include "chaosmoments/special.hpp"

namespace chaosmoments {

namespace {

double rgamma_pos(double x) { return std::exp(-std::lgamma(x)); }

// symbol sym(rho) = exp(-rho^alpha) or E_{beta,beta}(-rho^alpha); the
// Mittag-Leffler branch is cached on a spline in u = rho^alpha (smooth there,
// while rho -> rho^alpha has a cusp at 0 for alpha < 1)
class Symbol {
  public:
    Symbol(double alpha, double beta) : alpha_(alpha), beta_(beta) {
        if (beta_ == 0.0) return;
        u_sw_ = std::max(30.0, std::pow(22.0, beta_));
        const int n = 2000;
        const int pad = 6;
        double h = u_sw_ / n;
        std::vector<double> u, s;
        for (int i = -pad; i <= n + pad; ++i) {
            u.push_back(i * h);
            s.push_back(mittag_leffler(beta_, beta_, -i * h));
        }
        spl_ = CubicSpline(std::move(u), std::move(s));
    }

    double operator()(double rho) const {
        double u = std::pow(rho, alpha_);
        if (beta_ == 0.0) return std::exp(-u);
        if (u <= u_sw_) return spl_(u);
        return mittag_leffler(beta_, beta_, -u);
    }

    // leading coefficient of sym(rho) = s0 - s1 rho^alpha + O(rho^{2 alpha})
    double s1() const { return beta_ == 0.0 ? 1.0 : rgamma_pos(2.0 * beta_); }

  private:
    double alpha_, beta_;
    double u_sw_ = 0.0;
    CubicSpline spl_;
};

double oscillator_zero(int d, double w, int k) {
    switch (d) {
        case 1: return (k + 0.5) * M_PI / w;
        case 2: return gsl_sf_bessel_zero_J0(unsigned(k + 1)) / w;
        default: return (k + 1) * M_PI / w;
    }
}

// Fourier inversion of the radial symbol at radius w > 0, by summing the
// integrals between consecutive oscillator zeros with Levin acceleration.
double invert_at(const Symbol& sym, int d, double alpha, double w) {
    auto f = [&](double rho) -> double {
        switch (d) {
            case 1: return sym(rho) * std::cos(rho * w) / M_PI;
            case 2: return sym(rho) * gsl_sf_bessel_J0(rho * w) * rho / (2.0 * M_PI);
            default: return sym(rho) * std::sin(rho * w) * rho / (2.0 * M_PI * M_PI * w);
        }
    };
    std::vector<double> terms;
    double prev = 0.0;
    double mag = 0.0;
    bool clean = false;
    for (int k = 0; k < 360; ++k) {
        double zk = oscillator_zero(d, w, k);
        double v = (k == 0 ? integrate_singular(f, 0.0, zk, 0.0, 1e-10)
                           : integrate(f, prev, zk, 0.0, 1e-9))
                       .value;
        terms.push_back(v);
        prev = zk;
        mag = std::max(mag, std::abs(v));
        if (k > 12 && std::abs(v) < 1e-15 * mag) {
            clean = true;
            break;
        }
    }
    if (clean) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    return accelerate_series(terms);
}

double invert_at_zero(const Symbol& sym, int d, double alpha, double beta) {
    if (beta > 0.0 && 2.0 * alpha <= double(d))
        return std::numeric_limits<double>::infinity();
    auto f = [&](double rho) -> double {
        double p = sym(rho);
        switch (d) {
            case 1: return p / M_PI;
            case 2: return p * rho / (2.0 * M_PI);
            default: return p * rho * rho / (2.0 * M_PI * M_PI);
        }
    };
    double cut = std::pow(std::max(30.0, std::pow(22.0, std::max(beta, 1.0))), 1.0 / alpha);
    double head = integrate_singular(f, 0.0, 1.0, 0.0, 1e-11).value +
                  integrate(f, 1.0, cut, 0.0, 1e-11).value;
    double tail = integrate_upper(f, cut, 1e-16, 1e-9).value;
    return head + tail;
}

}  // namespace

RadialProfile::RadialProfile(double alpha, double beta, int d)
    : alpha_(alpha), beta_(beta), d_(d) {
    if (d < 1 || d > 3) fail(ErrorCode::DimensionCap, "profile dimension must be 1, 2 or 3");
    Symbol sym(alpha, beta);

    w_cut_ = 40.0;
    if (alpha < 2.0) {
        // P(w) ~ s1 c(d,alpha) w^{-d-alpha}, c from the radial transform of rho^alpha
        double c = std::pow(2.0, alpha) * std::tgamma((d + alpha) / 2.0) *
                   std::sin(M_PI * alpha / 2.0) * std::tgamma(1.0 + alpha / 2.0) /
                   (std::pow(M_PI, d / 2.0) * M_PI);
        tail_c_ = sym.s1() * c;
    } else {
        tail_c_ = 0.0;
    }

    value0_ = invert_at_zero(sym, d, alpha, beta);

    const int n = 1400;
    std::vector<double> w, p;
    int i0 = std::isfinite(value0_) ? 0 : 1;
    for (int i = i0; i <= n; ++i) {
        double wi = w_cut_ * std::pow(double(i) / n, 1.7);
        w.push_back(wi);
        p.push_back(i == 0 ? value0_ : invert_at(sym, d, alpha, wi));
    }
    w_min_ = w.front();
    spl_ = CubicSpline(std::move(w), std::move(p));
}

double RadialProfile::operator()(double w) const {
    w = std::abs(w);
    if (w > w_cut_)
        return tail_c_ > 0.0 ? tail_c_ * std::pow(w, -double(d_) - alpha_) : 0.0;
    if (!std::isfinite(value0_) && w < w_min_) {
        if (w == 0.0) return value0_;
        // unbounded-at-origin regime: P(w) ~ C w^{2 alpha - d}
        return spl_(w_min_) * std::pow(w / w_min_, 2.0 * alpha_ - double(d_));
    }
    return spl_(w);
}

const RadialProfile& radial_profile(double alpha, double beta, int d) {
    static std::map<std::tuple<double, double, int>, std::unique_ptr<RadialProfile>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(alpha, beta, d);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<RadialProfile>(alpha, beta, d)).first;
    return *it->second;
}

}  // namespace chaosmoments

#include "chaosmoments/special.hpp"

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <utility>

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

namespace {

// sin(pi x) with argument reduction done exactly in double
double sinpi(double x) {
    double r = std::remainder(x, 2.0);  // r in [-1, 1], sin(pi x) = sin(pi r)
    return std::sin(M_PI * r);
}

// 1/Gamma(x) for any real x; zero at nonpositive integer poles
double rgamma_d(double x) {
    if (x > 0.5) return std::exp(-std::lgamma(x));
    double s = sinpi(x);
    if (s == 0.0) return 0.0;
    return s / M_PI * std::exp(std::lgamma(1.0 - x));
}

// log |1/Gamma(x)| ignoring the bounded sin factor; used for term-size scans
double log_rgamma_mag(double x) {
    if (x > 0.5) return -std::lgamma(x);
    return std::lgamma(1.0 - x) - std::log(M_PI);
}

class MP {
  public:
    explicit MP(mpfr_prec_t p) { mpfr_init2(v_, p); mpfr_set_zero(v_, 1); }
    ~MP() { mpfr_clear(v_); }
    MP(const MP&) = delete;
    MP& operator=(const MP&) = delete;
    mpfr_ptr get() { return v_; }

  private:
    mpfr_t v_;
};

// peak log-magnitude of the Mittag-Leffler series terms at negative z,
// i.e. the number of nats lost to cancellation
double ml_cancellation_nats(double beta, double beta2, double z) {
    if (z >= 0.0) return 0.0;
    double az = -z;
    double lz = std::log(az);
    double kpeak = std::max(1.0, std::pow(az, 1.0 / beta) / beta);
    double peak = 0.0;
    for (double k = std::max(0.0, kpeak - 6); k <= kpeak + 7; k += 1.0)
        peak = std::max(peak, k * lz - std::lgamma(beta * k + beta2));
    return peak;
}

double ml_series(double beta, double beta2, double z) {
    double nats = ml_cancellation_nats(beta, beta2, z);
    mpfr_prec_t prec = mpfr_prec_t(64 + nats * 1.4427 + 64);
    MP zk(prec), zm(prec), arg(prec), g(prec), term(prec), sum(prec), betam(prec), beta2m(prec);
    mpfr_set_d(zm.get(), z, MPFR_RNDN);
    mpfr_set_d(betam.get(), beta, MPFR_RNDN);
    mpfr_set_d(beta2m.get(), beta2, MPFR_RNDN);
    mpfr_set_d(zk.get(), 1.0, MPFR_RNDN);
    mpfr_set_zero(sum.get(), 1);
    double kpast = std::pow(std::abs(z), 1.0 / beta) + 4.0;
    mpfr_exp_t max_exp = mpfr_get_emin();
    for (long k = 0; k < 400000; ++k) {
        mpfr_mul_si(arg.get(), betam.get(), k, MPFR_RNDN);
        mpfr_add(arg.get(), arg.get(), beta2m.get(), MPFR_RNDN);
        mpfr_gamma(g.get(), arg.get(), MPFR_RNDN);
        mpfr_div(term.get(), zk.get(), g.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        if (!mpfr_zero_p(term.get()))
            max_exp = std::max(max_exp, mpfr_get_exp(term.get()));
        mpfr_mul(zk.get(), zk.get(), zm.get(), MPFR_RNDN);
        if (beta * double(k) + beta2 > kpast && !mpfr_zero_p(term.get()) &&
            mpfr_get_exp(term.get()) < max_exp - 64 - 80)
            break;
    }
    return mpfr_get_d(sum.get(), MPFR_RNDN);
}

double ml_asymptotic(double beta, double beta2, double z) {
    // optimal truncation from the smooth part |t_k| ~ |z|^-k Gamma(beta k - beta2 + 1)
    double az = -z;
    double lz = std::log(az);
    int best_k = 1;
    double best_m = 1e300;
    for (int k = 1; k < 400; ++k) {
        double a_refl = beta * k - beta2 + 1.0;
        double m = -k * lz + (a_refl > 1.0 ? std::lgamma(a_refl) : 0.0);
        if (m < best_m) {
            best_k = k;
            best_m = m;
        }
        if (best_m < -170.0) break;
    }
    double sum = 0.0;
    double zk = 1.0 / z;
    for (int k = 1; k <= best_k; ++k) {
        sum -= zk * rgamma_d(beta2 - beta * k);
        zk /= z;
    }
    if (beta > 1.0) {
        std::complex<double> w = std::polar(std::pow(az, 1.0 / beta), M_PI / beta);
        std::complex<double> osc = std::pow(w, 1.0 - beta2) * std::exp(w);
        sum += 2.0 / beta * osc.real();
    }
    return sum;
}

double ml_zswitch(double beta) { return std::max(30.0, std::pow(22.0, beta)); }

void ml_check_overlap(double beta, double beta2) {
    static std::map<std::pair<double, double>, bool> done;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (done.count({beta, beta2})) return;
    }
    double z = -ml_zswitch(beta) * 1.02;
    double s = ml_series(beta, beta2, z);
    double a = ml_asymptotic(beta, beta2, z);
    double rel = std::abs(s - a) / std::max(std::abs(s), 1e-300);
    if (!(rel < 1e-7))
        fail(ErrorCode::QuadratureNonConvergence,
             "Mittag-Leffler branch disagreement at the switch point");
    std::lock_guard<std::mutex> lock(mu);
    done[{beta, beta2}] = true;
}

}  // namespace

double mittag_leffler(double beta, double beta2, double z) {
    if (!(beta > 0.0 && beta <= 2.0))
        fail(ErrorCode::UnsupportedParameter, "Mittag-Leffler order must lie in (0,2]");
    if (!(beta2 > 0.0))
        fail(ErrorCode::UnsupportedParameter, "Mittag-Leffler second parameter must be positive");
    if (!std::isfinite(z))
        fail(ErrorCode::UnsupportedParameter, "Mittag-Leffler argument must be finite");
    if (beta == 1.0 && beta2 == 1.0) return std::exp(z);
    if (z >= -ml_zswitch(beta)) return ml_series(beta, beta2, z);
    ml_check_overlap(beta, beta2);
    return ml_asymptotic(beta, beta2, z);
}

double wright(double a, double b, double z) {
    if (!(a > -1.0))
        fail(ErrorCode::UnsupportedParameter, "Wright function requires a > -1");
    if (!std::isfinite(z) || !std::isfinite(b))
        fail(ErrorCode::UnsupportedParameter, "Wright function arguments must be finite");
    if (z == 0.0) return rgamma_d(b);

    // scan term magnitudes for the cancellation peak and the truncation index
    double laz = std::log(std::abs(z));
    double peak = 0.0;
    long kstop = 20;
    double run_best = 1e300;
    for (long k = 0; k < 400000; ++k) {
        double m = double(k) * laz - std::lgamma(double(k) + 1.0) + log_rgamma_mag(a * k + b);
        peak = std::max(peak, m);
        run_best = std::min(run_best, m);
        kstop = k;
        if (m < peak - 230.0 && m < -230.0) break;
    }
    mpfr_prec_t prec = mpfr_prec_t(64 + peak * 1.4427 + 96);

    MP sum(prec), term(prec), coef(prec), arg(prec), g(prec), pim(prec), si(prec),
        zm(prec), am(prec), bm(prec), tmp(prec);
    mpfr_set_d(zm.get(), z, MPFR_RNDN);
    mpfr_set_d(am.get(), a, MPFR_RNDN);
    mpfr_set_d(bm.get(), b, MPFR_RNDN);
    mpfr_const_pi(pim.get(), MPFR_RNDN);
    mpfr_set_d(coef.get(), 1.0, MPFR_RNDN);  // z^k / k!
    mpfr_set_zero(sum.get(), 1);
    mpfr_exp_t max_exp = mpfr_get_emin();
    int streak = 0;
    for (long k = 0; k <= kstop + 8; ++k) {
        if (k > 0) {
            mpfr_mul(coef.get(), coef.get(), zm.get(), MPFR_RNDN);
            mpfr_div_si(coef.get(), coef.get(), k, MPFR_RNDN);
        }
        mpfr_mul_si(arg.get(), am.get(), k, MPFR_RNDN);
        mpfr_add(arg.get(), arg.get(), bm.get(), MPFR_RNDN);
        if (mpfr_cmp_d(arg.get(), 0.5) > 0) {
            mpfr_gamma(g.get(), arg.get(), MPFR_RNDN);
            mpfr_div(term.get(), coef.get(), g.get(), MPFR_RNDN);
        } else {
            // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
            mpfr_mul(tmp.get(), arg.get(), pim.get(), MPFR_RNDN);
            mpfr_sin(si.get(), tmp.get(), MPFR_RNDN);
            mpfr_ui_sub(tmp.get(), 1, arg.get(), MPFR_RNDN);
            mpfr_gamma(g.get(), tmp.get(), MPFR_RNDN);
            mpfr_mul(term.get(), coef.get(), si.get(), MPFR_RNDN);
            mpfr_mul(term.get(), term.get(), g.get(), MPFR_RNDN);
            mpfr_div(term.get(), term.get(), pim.get(), MPFR_RNDN);
        }
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        if (!mpfr_zero_p(term.get()))
            max_exp = std::max(max_exp, mpfr_get_exp(term.get()));
        bool tiny = mpfr_zero_p(term.get()) ||
                    mpfr_get_exp(term.get()) < max_exp - 64 - 96;
        if (k > 10 && tiny) {
            if (++streak >= 4) break;
        } else {
            streak = 0;
        }
    }
    return mpfr_get_d(sum.get(), MPFR_RNDN);
}

double mwright(double nu, double x) {
    if (!(nu > 0.0 && nu < 1.0))
        fail(ErrorCode::UnsupportedParameter, "M-Wright order must lie in (0,1)");
    if (x < 0.0) fail(ErrorCode::RadiusOutOfRange, "M-Wright density argument must be >= 0");
    return wright(-nu, 1.0 - nu, -x);
}

double stable_density_oneside(double beta, double x) {
    if (!(beta > 0.0 && beta < 1.0))
        fail(ErrorCode::UnsupportedParameter, "one-sided stable index must lie in (0,1)");
    if (!(x > 0.0)) return 0.0;
    return beta / std::pow(x, beta + 1.0) * mwright(beta, std::pow(x, -beta));
}

NeutralResult neutral_fractional(double alpha, double r) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        fail(ErrorCode::UnsupportedParameter, "neutral-fractional order must lie in (1,2]");
    if (r < 0.0) fail(ErrorCode::RadiusOutOfRange, "neutral-fractional argument must be >= 0");
    if (alpha == 2.0) return {0.0, true};
    if (r == 0.0) return {0.0, false};
    double ra = std::pow(r, alpha);
    double c = std::cos(M_PI * alpha / 2.0);
    double s = std::sin(M_PI * alpha / 2.0);
    double denom = 1.0 + 2.0 * ra * c + ra * ra;
    return {std::pow(r, alpha - 1.0) * s / (M_PI * denom), false};
}

double subordination_h_series(double alpha, double beta, double z) {
    if (!(alpha > beta))
        fail(ErrorCode::UnsupportedParameter,
             "subordination series requires alpha > beta (entire regime)");
    if (z < 0.0) fail(ErrorCode::UnsupportedParameter, "subordination series argument must be >= 0");
    if (z == 0.0) return 0.0;

    double lz = std::log(z);
    double peak = 0.0;
    long kstop = 20;
    for (long l = 0; l < 200000; ++l) {
        double m = (1.0 + double(l)) / alpha * lz - std::lgamma(double(l) + 1.0) -
                   std::log(alpha) + log_rgamma_mag(beta - beta * (1.0 + double(l)) / alpha);
        peak = std::max(peak, m);
        kstop = l;
        if (m < peak - 230.0 && m < -230.0) break;
    }
    mpfr_prec_t prec = mpfr_prec_t(64 + peak * 1.4427 + 96);

    MP sum(prec), term(prec), zfac(prec), zpow(prec), fact(prec), arg(prec), g(prec),
        pim(prec), si(prec), tmp(prec), betam(prec);
    mpfr_set_d(tmp.get(), z, MPFR_RNDN);
    mpfr_set_d(arg.get(), 1.0 / alpha, MPFR_RNDN);
    mpfr_pow(zfac.get(), tmp.get(), arg.get(), MPFR_RNDN);  // z^(1/alpha)
    mpfr_set(zpow.get(), zfac.get(), MPFR_RNDN);            // z^((1+l)/alpha)
    mpfr_set_d(fact.get(), 1.0, MPFR_RNDN);
    mpfr_set_d(betam.get(), beta, MPFR_RNDN);
    mpfr_const_pi(pim.get(), MPFR_RNDN);
    mpfr_set_zero(sum.get(), 1);
    mpfr_exp_t max_exp = mpfr_get_emin();
    int streak = 0;
    for (long l = 0; l <= kstop + 8; ++l) {
        if (l > 0) {
            mpfr_mul_si(fact.get(), fact.get(), l, MPFR_RNDN);
            mpfr_mul(zpow.get(), zpow.get(), zfac.get(), MPFR_RNDN);
        }
        // arg = beta - beta (1+l)/alpha, always <= 0 here for l >= ceil(alpha)-1
        mpfr_set_d(arg.get(), (1.0 + double(l)) / alpha, MPFR_RNDN);
        mpfr_mul(arg.get(), arg.get(), betam.get(), MPFR_RNDN);
        mpfr_sub(arg.get(), betam.get(), arg.get(), MPFR_RNDN);
        if (mpfr_cmp_d(arg.get(), 0.5) > 0) {
            mpfr_gamma(g.get(), arg.get(), MPFR_RNDN);
            mpfr_ui_div(g.get(), 1, g.get(), MPFR_RNDN);
        } else {
            mpfr_mul(tmp.get(), arg.get(), pim.get(), MPFR_RNDN);
            mpfr_sin(si.get(), tmp.get(), MPFR_RNDN);
            mpfr_ui_sub(tmp.get(), 1, arg.get(), MPFR_RNDN);
            mpfr_gamma(g.get(), tmp.get(), MPFR_RNDN);
            mpfr_mul(g.get(), g.get(), si.get(), MPFR_RNDN);
            mpfr_div(g.get(), g.get(), pim.get(), MPFR_RNDN);
        }
        mpfr_mul(term.get(), zpow.get(), g.get(), MPFR_RNDN);
        mpfr_div(term.get(), term.get(), fact.get(), MPFR_RNDN);
        mpfr_div_d(term.get(), term.get(), alpha, MPFR_RNDN);
        if (l % 2 == 1) mpfr_neg(term.get(), term.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        if (!mpfr_zero_p(term.get()))
            max_exp = std::max(max_exp, mpfr_get_exp(term.get()));
        bool tiny = mpfr_zero_p(term.get()) ||
                    mpfr_get_exp(term.get()) < max_exp - 64 - 96;
        if (l > 10 && tiny) {
            if (++streak >= 4) break;
        } else {
            streak = 0;
        }
    }
    return mpfr_get_d(sum.get(), MPFR_RNDN);
}

}  // namespace chaosmoments

#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sum.h>

#include <cmath>
#include <vector>

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

namespace detail {

inline void gsl_quiet() {
    static gsl_error_handler_t* old = gsl_set_error_handler_off();
    (void)old;
}

template <class F>
double gsl_trampoline(double x, void* p) {
    return (*static_cast<F*>(p))(x);
}

class Workspace {
  public:
    explicit Workspace(std::size_t n = 4000) : w_(gsl_integration_workspace_alloc(n)), n_(n) {}
    ~Workspace() { gsl_integration_workspace_free(w_); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
    gsl_integration_workspace* get() const { return w_; }
    std::size_t size() const { return n_; }

  private:
    gsl_integration_workspace* w_;
    std::size_t n_;
};

inline void check_status(int status, double result, double abserr, const char* what) {
    if (status == GSL_SUCCESS) return;
    // accept mild roundoff trouble when the reported error is already tiny
    if ((status == GSL_EROUND || status == GSL_EMAXITER) &&
        abserr <= 1e-8 * (std::abs(result) + 1e-300) + 1e-13)
        return;
    fail(ErrorCode::QuadratureNonConvergence, what);
}

}  // namespace detail

struct QuadResult {
    double value;
    double abserr;
};

// Adaptive Gauss-Kronrod on a finite interval (smooth integrands).
template <class F>
QuadResult integrate(F f, double a, double b, double epsabs = 0.0, double epsrel = 1e-10) {
    detail::gsl_quiet();
    detail::Workspace ws;
    gsl_function gf{&detail::gsl_trampoline<F>, &f};
    double result = 0.0, abserr = 0.0;
    int status = gsl_integration_qag(&gf, a, b, epsabs, epsrel, ws.size(),
                                     GSL_INTEG_GAUSS61, ws.get(), &result, &abserr);
    detail::check_status(status, result, abserr, "adaptive quadrature on finite interval");
    return {result, abserr};
}

// Adaptive quadrature tolerating integrable endpoint singularities.
template <class F>
QuadResult integrate_singular(F f, double a, double b, double epsabs = 0.0,
                              double epsrel = 1e-10) {
    detail::gsl_quiet();
    detail::Workspace ws;
    gsl_function gf{&detail::gsl_trampoline<F>, &f};
    double result = 0.0, abserr = 0.0;
    int status = gsl_integration_qags(&gf, a, b, epsabs, epsrel, ws.size(),
                                      ws.get(), &result, &abserr);
    detail::check_status(status, result, abserr, "adaptive quadrature with endpoint singularity");
    return {result, abserr};
}

// Adaptive quadrature on [a, inf).
template <class F>
QuadResult integrate_upper(F f, double a, double epsabs = 1e-14, double epsrel = 1e-10) {
    detail::gsl_quiet();
    detail::Workspace ws;
    gsl_function gf{&detail::gsl_trampoline<F>, &f};
    double result = 0.0, abserr = 0.0;
    int status = gsl_integration_qagiu(&gf, a, epsabs, epsrel, ws.size(),
                                       ws.get(), &result, &abserr);
    detail::check_status(status, result, abserr, "adaptive quadrature on semi-infinite interval");
    return {result, abserr};
}

// Integrate across a list of breakpoints, allowing singular behaviour at them.
template <class F>
double integrate_split(F f, const std::vector<double>& pts, double epsrel = 1e-10) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate_singular(f, pts[i], pts[i + 1], 0.0, epsrel).value;
    return total;
}

// Fourier integral int_a^inf f(x) {cos,sin}(omega x) dx with acceleration over cycles.
template <class F>
QuadResult integrate_fourier(F f, double a, double omega, bool use_sin,
                             double epsabs = 1e-12) {
    detail::gsl_quiet();
    detail::Workspace ws;
    detail::Workspace cyc;
    gsl_integration_qawo_table* tbl = gsl_integration_qawo_table_alloc(
        omega, 1.0, use_sin ? GSL_INTEG_SINE : GSL_INTEG_COSINE, 40);
    if (!tbl) fail(ErrorCode::QuadratureNonConvergence, "oscillatory table allocation failed");
    gsl_function gf{&detail::gsl_trampoline<F>, &f};
    double result = 0.0, abserr = 0.0;
    int status = gsl_integration_qawf(&gf, a, epsabs, ws.size(), ws.get(), cyc.get(), tbl,
                                      &result, &abserr);
    gsl_integration_qawo_table_free(tbl);
    detail::check_status(status, result, abserr, "Fourier integral on semi-infinite interval");
    return {result, abserr};
}

// Levin u acceleration of a slowly convergent (typically alternating) series.
inline double accelerate_series(const std::vector<double>& terms) {
    if (terms.size() < 4) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    gsl_sum_levin_u_workspace* w = gsl_sum_levin_u_alloc(terms.size());
    double sum = 0.0, err = 0.0;
    gsl_sum_levin_u_accel(terms.data(), terms.size(), w, &sum, &err);
    gsl_sum_levin_u_free(w);
    return sum;
}

}  // namespace chaosmoments

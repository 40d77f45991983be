#pragma once

#include "chaosmoments/spline.hpp"

namespace chaosmoments {

// Unit-scale radial density profile P_d for the symbols exp(-rho^alpha)
// (beta == 0) and E_{beta,beta}(-rho^alpha), evaluated by oscillatory Fourier
// inversion and cached on a graded spline. Kernel values scale out of this:
//   alpha-heat:  G_t(x) = s^d P_d(s |x|),            s = (2/t)^{1/alpha}
//   frac-diff:   G_t(x) = t^{beta-1} s^d P_d(s |x|), s = (2/t^beta)^{1/alpha}
class RadialProfile {
  public:
    RadialProfile(double alpha, double beta, int d);

    double operator()(double w) const;

    double at_zero() const { return value0_; }      // may be +inf
    double w_cut() const { return w_cut_; }
    double tail_coefficient() const { return tail_c_; }

  private:
    double alpha_, beta_;
    int d_;
    double w_cut_;
    double w_min_;
    double tail_c_;   // P(w) ~ tail_c w^{-d-alpha} beyond w_cut (alpha < 2 only)
    double value0_;
    CubicSpline spl_;
};

// Process-wide cache keyed on (alpha, beta, d).
const RadialProfile& radial_profile(double alpha, double beta, int d);

}  // namespace chaosmoments

#pragma once

#include <cstdint>
#include <vector>

#include "chaosmoments/diagrams.hpp"
#include "chaosmoments/exponents.hpp"
#include "chaosmoments/kernels.hpp"
#include "chaosmoments/noise.hpp"
#include "chaosmoments/rational.hpp"

namespace chaosmoments {

// n-th chaos kernel of the mild solution with constant initial data I_0:
//   f_n(t_1..t_n; x_1..x_n) =
//       I_0 G_{t-t_n}(x - x_n) G_{t_n - t_{n-1}}(x_n - x_{n-1}) ... G_{t_2 - t_1}(x_2 - x_1)
// supported on the ordered simplex 0 < t_1 < ... < t_n < t.
struct ChaosKernelSpec {
    KernelSpec kernel;
    int n = 1;
    double t = 1.0;
    std::vector<double> x;  // evaluation point; zeros(d) when empty
    double initial_value = 1.0;
};

enum class EstimateMethod { MC, Quadrature, ClosedForm };

struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;  // exactly 0 unless method == MC
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    EstimateMethod method = EstimateMethod::ClosedForm;
};

// Pointwise chaos-kernel value; 0 off the ordered simplex. Wave d=3 carries a
// surface measure and has no pointwise density (MeasureKernelNoDensity).
double eval_f_n(const ChaosKernelSpec& spec, const std::vector<double>& times,
                const std::vector<std::vector<double>>& points);

// Average of eval_f_n over all orderings of the (time, point) pairs; equals
// (1/n!) times the chain evaluated on time-sorted arguments.
double eval_f_n_symmetrized(const ChaosKernelSpec& spec, const std::vector<double>& times,
                            const std::vector<std::vector<double>>& points);

// Second moment of the n-th chaos term, Phi_n(t) = E[I_n(f_n)^2], by
// importance-sampled Monte Carlo. White-white d=1 heat uses an exact-weight
// sampler (variance only from the simplex indicator); other noises pair each
// matched vertex with a power-law displacement proposal that cancels the
// covariance singularities.
MomentEstimate phi_n(const ChaosKernelSpec& spec, const NoiseSpec& noise,
                     std::int64_t n_samples, std::uint64_t seed, int threads = 1);

// Monte Carlo value of one diagram integral F_D: rows of sizes rows.sizes all
// carry the kernel/arguments of spec (spec.n is ignored), vertices are matched
// by diag, and each matched pair contributes the time and space covariance.
// Total vertex count is capped at 8 (DimensionCap).
MomentEstimate eval_F_D(const RowLayout& rows, const Diagram& diag,
                        const ChaosKernelSpec& spec, const NoiseSpec& noise,
                        std::int64_t n_samples, std::uint64_t seed, int threads = 1);

struct TruncatedMoment {
    MomentEstimate estimate;  // sum of the retained chaos contributions
    double tail_estimate = 0.0;  // analytic estimate for the discarded n > n_max part
    int n_max = 0;
};

// E[u(t,x)^p] truncated at chaos order n_max, p in {1, 2, 4}. p = 1 returns
// the initial value exactly (all higher chaos terms are centred). p = 2 sums
// Phi_n; p = 4 enumerates diagrams over order tuples (n_1..n_4). Each retained
// term must satisfy sum n_j <= 8 (DimensionCap). The tail bound extrapolates
// the fitted envelope C^n t^{n(hbar+2H)} / (n!)^{hbar+1} of the chaos terms.
TruncatedMoment pth_moment_truncated(int p, const ChaosKernelSpec& spec,
                                     const NoiseSpec& noise, int n_max,
                                     std::int64_t n_samples, std::uint64_t seed,
                                     int threads = 1);

// Localisation plan for the moment lower bound: m_p = 2m/p interior windows
// I_j = [t_j - L/4, t_j + L/4], t_j = j t / (2(m_p+1)), L = t / (2(m_p+1)).
// Requires p even, p | 2m, and the gap/count conditions
//   t/(m_p+1) <= eps^b   and   m >= p t / (2 eps^b)
// (ConstraintViolated otherwise).
struct LowerBoundPlan {
    int p = 2;
    int m = 1;
    double eps = 1.0;
    double t = 1.0;
    double b = 2.0;
    int m_p = 1;
    double L = 0.0;
    std::vector<double> centers;  // t_1 .. t_{m_p}
};

LowerBoundPlan make_lower_bound_plan(int p, int m, double eps, double t, double b);

// Lower-bound summand with all envelope constants set to 1:
//   log( m! eps^{-m lambda} t^{-m gamma} (t p / m)^{2 m (a+1)} )
// together with the stationary chaos order m_0(eps) and the radius eps_{t,p}
// at which the count constraint saturates.
struct LowerBoundReport {
    double log_value = 0.0;
    double m0 = 0.0;
    double eps_tp = 0.0;
};

LowerBoundReport lower_bound_value(const LowerBoundPlan& plan, double a, double b,
                                   double lambda, double gamma);

// Exponents of t and p in log E[u^p] >= c t^{..} p^{..} obtained by
// substituting m = m_0(eps_{t,p}) into the summand above, as exact rationals.
// Matches lower_exponents from the exponent table identically.
RationalPair lower_bound_optimized_exponents(const Rational& a, const Rational& b,
                                             const Rational& lambda, const Rational& gamma);

// Monte Carlo value of the restricted simplex integral
//   Int prod_{l=1..p} prod_{j=1..m_p} 1_{I_j}(t^l_j) dt,
// whose exact value is (L/2)^{m_p p}. Doubled proposal windows make each
// indicator a fair coin, so the estimator is a scaled Bernoulli product.
// p * m_p is capped at 8 (DimensionCap).
MomentEstimate restricted_integral_mc(const LowerBoundPlan& plan, std::int64_t n_samples,
                                      std::uint64_t seed, int threads = 1);

double restricted_integral_closed_form(const LowerBoundPlan& plan);

}  // namespace chaosmoments

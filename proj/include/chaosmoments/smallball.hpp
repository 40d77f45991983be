#pragma once

#include <vector>

#include "chaosmoments/kernels.hpp"

namespace chaosmoments {

// One cell of the verification grid: the worst (smallest) ratio
// ball_mass / t^a over the deterministic center grid at this (eps, t).
struct SmallBallCell {
    double eps = 0.0;
    double t = 0.0;
    double ratio = 0.0;
    double worst_delta = 0.0;
    bool mass_zero = false;
};

struct SmallBallReport {
    KernelSpec kernel;
    double a = 0.0;
    double b = 0.0;
    double threshold = 0.0;
    std::vector<SmallBallCell> grid;
    double worst_ratio = 0.0;
    bool slope_mismatch = false;
    bool passed = false;
    int y_samples = 0;
};

// Distinct center offsets |y - x| <= eps drawn from a per_axis^d product grid
// over the ball plus explicit boundary points; count reports the number of
// centers the offsets represent.
struct CenterGrid {
    std::vector<double> deltas;
    int count = 0;
};
CenterGrid smallball_center_grid(int d, double eps, int per_axis);

// Checks ball_mass(t, |y-x|, eps) >= threshold * t^a over eps in eps_grid,
// t = eps^b * s with s in {1, 1/2, 1/4}, and y on the deterministic center
// grid. A ratio trend that rises by more than 10x from the largest t to the
// smallest marks the report slope_mismatch and fails it.
SmallBallReport verify_small_ball(const KernelSpec& spec, double a, double b,
                                  const std::vector<double>& eps_grid, int y_per_eps,
                                  double threshold);

// Verification of int_0^delta exp(-r^nu/2) dr >= c_nu^{-1} exp(-c/delta^nu)
// with c = (nu+1)^2/(4 nu) * (1 + 1e-6) and c_nu defined by
// c_nu * int_0^inf exp(-r^nu/2) dr = 1.
struct ExpLowerClaimReport {
    double nu = 0.0;
    double c = 0.0;
    double c_nu = 0.0;
    std::vector<double> delta;
    std::vector<double> margin;
    bool passed = false;
};
ExpLowerClaimReport exp_lower_claim_check(double nu, const std::vector<double>& delta_grid);

// Table row for the exponential-form fit: inf over centers of the ball mass
// at (t, eps); t is allowed to exceed eps^b here.
struct MassTableRow {
    double t = 0.0;
    double eps = 0.0;
    double mass = 0.0;
};

std::vector<MassTableRow> smallball_mass_table(const KernelSpec& spec,
                                               const std::vector<double>& t_grid,
                                               const std::vector<double>& eps_grid,
                                               int y_per_eps);

// Least-squares fit of log(mass / t^a) against -t^bp / eps^ce, where the
// triple (a, bp, ce) is kernel-specific: heat (0,1,2), alpha-heat (0,1,alpha),
// wave (1,1,1), fractional diffusion (beta-1, beta, alpha). Wave d=3 admits
// no such form (the cone and the ball can fail to intersect): applicable is
// false and no fit is attempted. Zero-mass rows are excluded and counted.
struct ExpFormFit {
    bool applicable = true;
    double C1 = 0.0;
    double C2 = 0.0;
    double residual_rms = 0.0;
    int rows_used = 0;
    int rows_zero_mass = 0;
};
ExpFormFit exponential_form_fit(const KernelSpec& spec, const std::vector<MassTableRow>& table);

}  // namespace chaosmoments

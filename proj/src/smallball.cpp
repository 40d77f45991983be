#include "chaosmoments/smallball.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "chaosmoments/errors.hpp"
#include "chaosmoments/quadrature.hpp"

namespace chaosmoments {

CenterGrid smallball_center_grid(int d, double eps, int per_axis) {
    if (d < 1 || d > 3) fail(ErrorCode::DimensionCap, "center grid supports d <= 3");
    if (per_axis < 2) fail(ErrorCode::BadUsage, "center grid needs at least 2 points per axis");
    if (!(eps > 0.0)) fail(ErrorCode::RadiusOutOfRange, "ball radius must be positive");

    std::vector<double> axis(per_axis);
    for (int i = 0; i < per_axis; ++i)
        axis[i] = -eps + 2.0 * eps * static_cast<double>(i) / (per_axis - 1);

    std::set<double> deltas;
    int count = 0;
    if (d == 1) {
        for (double x : axis) {
            deltas.insert(std::abs(x));
            ++count;
        }
    } else if (d == 2) {
        for (double x : axis)
            for (double y : axis) {
                double r = std::hypot(x, y);
                if (r <= eps) {
                    deltas.insert(r);
                    ++count;
                }
            }
        for (int k = 0; k < 8; ++k) {
            deltas.insert(eps);
            ++count;
        }
    } else {
        for (double x : axis)
            for (double y : axis)
                for (double z : axis) {
                    double r = std::sqrt(x * x + y * y + z * z);
                    if (r <= eps) {
                        deltas.insert(r);
                        ++count;
                    }
                }
        // 6 axis points and 8 cube-diagonal points on the boundary sphere
        for (int k = 0; k < 14; ++k) {
            deltas.insert(eps);
            ++count;
        }
    }
    deltas.insert(0.0);
    deltas.insert(eps);

    CenterGrid g;
    g.deltas.assign(deltas.begin(), deltas.end());
    g.count = count;
    return g;
}

namespace {

struct InfMass {
    double mass = 0.0;
    double delta = 0.0;
    bool saw_zero = false;
};

InfMass inf_ball_mass(const KernelSpec& spec, double t, double eps,
                      const CenterGrid& centers) {
    InfMass out;
    out.mass = std::numeric_limits<double>::infinity();
    for (double dlt : centers.deltas) {
        double m = ball_mass(spec, t, dlt, eps);
        if (m == 0.0) out.saw_zero = true;
        if (m < out.mass) {
            out.mass = m;
            out.delta = dlt;
        }
    }
    return out;
}

}  // namespace

SmallBallReport verify_small_ball(const KernelSpec& spec, double a, double b,
                                  const std::vector<double>& eps_grid, int y_per_eps,
                                  double threshold) {
    validate(spec);
    if (!(a > -1.0)) fail(ErrorCode::ConstraintViolated, "small-ball exponent a must exceed -1");
    if (!(b > 0.0)) fail(ErrorCode::ConstraintViolated, "small-ball exponent b must be positive");
    if (eps_grid.empty()) fail(ErrorCode::InsufficientGrid, "empty eps grid");
    if (!(threshold > 0.0)) fail(ErrorCode::BadUsage, "threshold must be positive");

    static const double kScales[3] = {1.0, 0.5, 0.25};

    SmallBallReport rep;
    rep.kernel = spec;
    rep.a = a;
    rep.b = b;
    rep.threshold = threshold;

    for (double eps : eps_grid) {
        if (!(eps > 0.0) || eps > 1.0)
            fail(ErrorCode::RadiusOutOfRange, "ball radius must lie in (0,1]");
        CenterGrid centers = smallball_center_grid(spec.d, eps, y_per_eps);
        rep.y_samples = centers.count;
        double t_top = std::pow(eps, b);
        for (double s : kScales) {
            double t = t_top * s;
            InfMass inf = inf_ball_mass(spec, t, eps, centers);
            SmallBallCell cell;
            cell.eps = eps;
            cell.t = t;
            cell.ratio = inf.mass / std::pow(t, a);
            cell.worst_delta = inf.delta;
            cell.mass_zero = inf.saw_zero;
            rep.grid.push_back(cell);
        }
    }

    rep.worst_ratio = std::numeric_limits<double>::infinity();
    const SmallBallCell* at_tmin = nullptr;
    const SmallBallCell* at_tmax = nullptr;
    for (const SmallBallCell& c : rep.grid) {
        rep.worst_ratio = std::min(rep.worst_ratio, c.ratio);
        if (!at_tmin || c.t < at_tmin->t) at_tmin = &c;
        if (!at_tmax || c.t > at_tmax->t) at_tmax = &c;
    }
    rep.slope_mismatch = at_tmin->ratio > 10.0 * at_tmax->ratio;
    rep.passed = !rep.slope_mismatch && rep.worst_ratio >= threshold;
    return rep;
}

ExpLowerClaimReport exp_lower_claim_check(double nu, const std::vector<double>& delta_grid) {
    if (!(nu > 0.0)) fail(ErrorCode::BadUsage, "nu must be positive");
    if (delta_grid.empty()) fail(ErrorCode::InsufficientGrid, "empty delta grid");

    auto f = [nu](double r) { return std::exp(-0.5 * std::pow(r, nu)); };
    double total = integrate_upper(f, 0.0, 1e-14, 1e-12).value;

    ExpLowerClaimReport rep;
    rep.nu = nu;
    rep.c = (nu + 1.0) * (nu + 1.0) / (4.0 * nu) * (1.0 + 1e-6);
    rep.c_nu = 1.0 / total;
    rep.passed = true;
    for (double delta : delta_grid) {
        if (!(delta > 0.0)) fail(ErrorCode::BadUsage, "delta must be positive");
        double lhs = integrate(f, 0.0, delta, 0.0, 1e-12).value;
        double rhs = total * std::exp(-rep.c / std::pow(delta, nu));
        rep.delta.push_back(delta);
        rep.margin.push_back(lhs - rhs);
        if (!(lhs - rhs > 0.0)) rep.passed = false;
    }
    return rep;
}

std::vector<MassTableRow> smallball_mass_table(const KernelSpec& spec,
                                               const std::vector<double>& t_grid,
                                               const std::vector<double>& eps_grid,
                                               int y_per_eps) {
    validate(spec);
    std::vector<MassTableRow> table;
    for (double eps : eps_grid) {
        CenterGrid centers = smallball_center_grid(spec.d, eps, y_per_eps);
        for (double t : t_grid) {
            MassTableRow row;
            row.t = t;
            row.eps = eps;
            row.mass = inf_ball_mass(spec, t, eps, centers).mass;
            table.push_back(row);
        }
    }
    return table;
}

ExpFormFit exponential_form_fit(const KernelSpec& spec, const std::vector<MassTableRow>& table) {
    validate(spec);
    ExpFormFit fit;

    double a = 0.0, bp = 1.0, ce = 2.0;
    switch (spec.kind) {
        case KernelKind::Heat:
            a = 0.0, bp = 1.0, ce = 2.0;
            break;
        case KernelKind::AlphaHeat:
            a = 0.0, bp = 1.0, ce = spec.alpha;
            break;
        case KernelKind::Wave:
            if (spec.d == 3) {
                fit.applicable = false;
                for (const MassTableRow& row : table)
                    if (row.mass == 0.0) ++fit.rows_zero_mass;
                return fit;
            }
            a = 1.0, bp = 1.0, ce = 1.0;
            break;
        case KernelKind::FracDiff:
            a = spec.beta - 1.0, bp = spec.beta, ce = spec.alpha;
            break;
    }

    std::vector<double> xs, ys;
    for (const MassTableRow& row : table) {
        if (row.mass == 0.0) {
            ++fit.rows_zero_mass;
            continue;
        }
        xs.push_back(-std::pow(row.t, bp) / std::pow(row.eps, ce));
        ys.push_back(std::log(row.mass / std::pow(row.t, a)));
    }
    fit.rows_used = static_cast<int>(xs.size());
    if (fit.rows_used < 3)
        fail(ErrorCode::InsufficientGrid, "exponential-form fit needs at least 3 nonzero rows");

    double c0 = 0.0, c1 = 0.0, cov00, cov01, cov11, sumsq;
    gsl_fit_linear(xs.data(), 1, ys.data(), 1, xs.size(), &c0, &c1, &cov00, &cov01, &cov11,
                   &sumsq);
    fit.C1 = std::exp(c0);
    fit.C2 = c1;
    fit.residual_rms = std::sqrt(sumsq / static_cast<double>(xs.size()));
    return fit;
}

}  // namespace chaosmoments

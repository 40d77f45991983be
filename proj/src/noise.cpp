#include "chaosmoments/noise.hpp"

#include <cmath>
#include <sstream>

#include "chaosmoments/errors.hpp"

namespace chaosmoments {

NoiseSpec NoiseSpec::riesz(double gamma, double lambda, int d) {
    NoiseSpec n;
    n.time = TimeKind::Power;
    n.gamma = gamma;
    n.space = SpaceKind::Riesz;
    n.lambda = lambda;
    n.d = d;
    validate(n);
    return n;
}

NoiseSpec NoiseSpec::product(double gamma, std::vector<double> lambdas) {
    NoiseSpec n;
    n.time = TimeKind::Power;
    n.gamma = gamma;
    n.space = SpaceKind::ProductRL;
    n.lambdas = std::move(lambdas);
    n.d = int(n.lambdas.size());
    validate(n);
    return n;
}

NoiseSpec NoiseSpec::white_time_riesz(double lambda, int d) {
    NoiseSpec n;
    n.time = TimeKind::White;
    n.space = SpaceKind::Riesz;
    n.lambda = lambda;
    n.d = d;
    validate(n);
    return n;
}

double gamma_from_hurst(double H) {
    if (!(H > 0.5 && H < 1.0))
        fail(ErrorCode::UnsupportedParameter, "Hurst index must lie in (1/2,1)");
    return 2.0 - 2.0 * H;
}

double hurst_from_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        fail(ErrorCode::UnsupportedParameter, "time exponent must lie in (0,1)");
    return 1.0 - gamma / 2.0;
}

void validate(const NoiseSpec& n) {
    if (n.time == TimeKind::Power && !(n.gamma > 0.0 && n.gamma < 1.0))
        fail(ErrorCode::UnsupportedParameter, "time exponent gamma must lie in (0,1)");
    if (n.d < 1 || n.d > 3)
        fail(ErrorCode::DimensionCap, "spatial dimension must be 1, 2 or 3");
    switch (n.space) {
        case SpaceKind::DeltaD1:
            if (n.d != 1)
                fail(ErrorCode::UnsupportedParameter, "white spatial noise requires d = 1");
            if (n.time != TimeKind::White)
                fail(ErrorCode::UnsupportedParameter,
                     "white spatial noise is only supported with white time");
            break;
        case SpaceKind::Riesz:
            if (!(n.lambda > 0.0 && n.lambda < double(n.d)))
                fail(ErrorCode::ParameterOutOfPositivityRange,
                     "Riesz exponent must lie in (0,d)");
            break;
        case SpaceKind::ProductRL:
            if (int(n.lambdas.size()) != n.d)
                fail(ErrorCode::UnsupportedParameter,
                     "product covariance needs one exponent per coordinate");
            for (double l : n.lambdas)
                if (!(l > 0.0 && l < 1.0))
                    fail(ErrorCode::ParameterOutOfPositivityRange,
                         "product covariance exponents must lie in (0,1)");
            break;
    }
}

double time_cov(const NoiseSpec& n, double t) {
    if (n.time == TimeKind::White)
        fail(ErrorCode::EvalOfDelta, "white-in-time covariance has no pointwise value");
    if (t == 0.0)
        fail(ErrorCode::SingularPoint, "power-law time covariance is singular at 0");
    return std::pow(std::abs(t), -n.gamma);
}

double space_cov(const NoiseSpec& n, const std::vector<double>& x) {
    if (int(x.size()) != n.d)
        fail(ErrorCode::UnsupportedParameter, "point dimension does not match noise");
    switch (n.space) {
        case SpaceKind::DeltaD1:
            fail(ErrorCode::EvalOfDelta, "white spatial covariance has no pointwise value");
        case SpaceKind::Riesz: {
            double r2 = 0.0;
            for (double v : x) r2 += v * v;
            if (r2 == 0.0)
                fail(ErrorCode::SingularPoint, "Riesz covariance is singular at 0");
            return std::pow(r2, -0.5 * n.lambda);
        }
        case SpaceKind::ProductRL: {
            double p = 1.0;
            for (int j = 0; j < n.d; ++j) {
                if (x[j] == 0.0)
                    fail(ErrorCode::SingularPoint,
                         "product covariance is singular on coordinate hyperplanes");
                p *= std::pow(std::abs(x[j]), -n.lambdas[j]);
            }
            return p;
        }
    }
    fail(ErrorCode::UnsupportedParameter, "unknown spatial covariance");
}

bool has_spectral_density(const NoiseSpec& n) { return true; }

double spectral_density(const NoiseSpec& n, const std::vector<double>& xi) {
    if (int(xi.size()) != n.d)
        fail(ErrorCode::UnsupportedParameter, "point dimension does not match noise");
    switch (n.space) {
        case SpaceKind::DeltaD1:
            return 1.0;
        case SpaceKind::Riesz: {
            double r2 = 0.0;
            for (double v : xi) r2 += v * v;
            if (r2 == 0.0)
                fail(ErrorCode::SingularPoint, "Riesz spectral density is singular at 0");
            return std::pow(r2, 0.5 * (n.lambda - double(n.d)));
        }
        case SpaceKind::ProductRL: {
            double p = 1.0;
            for (int j = 0; j < n.d; ++j) {
                if (xi[j] == 0.0)
                    fail(ErrorCode::SingularPoint,
                         "product spectral density is singular on coordinate hyperplanes");
                p *= std::pow(std::abs(xi[j]), n.lambdas[j] - 1.0);
            }
            return p;
        }
    }
    fail(ErrorCode::UnsupportedParameter, "unknown spatial covariance");
}

double lambda_total(const NoiseSpec& n) {
    switch (n.space) {
        case SpaceKind::DeltaD1:
            return 1.0;
        case SpaceKind::Riesz:
            return n.lambda;
        case SpaceKind::ProductRL: {
            double s = 0.0;
            for (double l : n.lambdas) s += l;
            return s;
        }
    }
    fail(ErrorCode::UnsupportedParameter, "unknown spatial covariance");
}

bool white_in_time(const NoiseSpec& n) { return n.time == TimeKind::White; }
bool white_in_space(const NoiseSpec& n) { return n.space == SpaceKind::DeltaD1; }

std::string describe(const NoiseSpec& n) {
    std::ostringstream os;
    if (n.time == TimeKind::White)
        os << "white time";
    else
        os << "power time gamma=" << n.gamma;
    os << ", ";
    switch (n.space) {
        case SpaceKind::DeltaD1: os << "white space d=1"; break;
        case SpaceKind::Riesz: os << "Riesz lambda=" << n.lambda << " d=" << n.d; break;
        case SpaceKind::ProductRL:
            os << "product space lambdas=(";
            for (std::size_t j = 0; j < n.lambdas.size(); ++j)
                os << (j ? "," : "") << n.lambdas[j];
            os << ")";
            break;
    }
    return os.str();
}

}  // namespace chaosmoments

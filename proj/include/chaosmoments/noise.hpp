#pragma once

#include <string>
#include <vector>

namespace chaosmoments {

// Covariance structure of the driving noise, white in time or with a
// power-law temporal correlation |t|^{-gamma}, and spatially white (d=1),
// Riesz |x|^{-lambda}, or a coordinate-wise product prod_j |x_j|^{-lambda_j}.
// All normalisation constants are folded to 1; the power-law envelope
// constants are carried as metadata only.

enum class TimeKind { White, Power };
enum class SpaceKind { DeltaD1, Riesz, ProductRL };

struct NoiseSpec {
    TimeKind time = TimeKind::White;
    double gamma = 0.0;    // exponent for TimeKind::Power, in (0,1)
    double lower_c = 1.0;  // envelope metadata, unused in evaluation
    double upper_C = 1.0;

    SpaceKind space = SpaceKind::DeltaD1;
    int d = 1;
    double lambda = 0.0;            // Riesz exponent, in (0,d)
    std::vector<double> lambdas;    // ProductRL exponents, each in (0,1)

    static NoiseSpec white_white() { return NoiseSpec{}; }
    static NoiseSpec riesz(double gamma, double lambda, int d);
    static NoiseSpec product(double gamma, std::vector<double> lambdas);
    static NoiseSpec white_time_riesz(double lambda, int d);
};

// gamma = 2 - 2H for temporal fractional correlation with Hurst index H in (1/2,1).
double gamma_from_hurst(double H);
double hurst_from_gamma(double gamma);

// Throws UnsupportedParameter / ParameterOutOfPositivityRange on invalid combinations.
void validate(const NoiseSpec& n);

// Pointwise covariance evaluations. White/delta components have no pointwise
// value (EvalOfDelta); power-law components are singular at 0 (SingularPoint).
double time_cov(const NoiseSpec& n, double t);
double space_cov(const NoiseSpec& n, const std::vector<double>& x);

// Spectral density of the spatial covariance: |xi|^{lambda-d} (Riesz),
// prod_j |xi_j|^{lambda_j-1} (ProductRL), 1 (white). Singular at xi = 0.
double spectral_density(const NoiseSpec& n, const std::vector<double>& xi);
bool has_spectral_density(const NoiseSpec& n);

// Total spatial singularity order: lambda, sum(lambda_j), or d for white space.
double lambda_total(const NoiseSpec& n);

bool white_in_time(const NoiseSpec& n);
bool white_in_space(const NoiseSpec& n);

std::string describe(const NoiseSpec& n);

}  // namespace chaosmoments

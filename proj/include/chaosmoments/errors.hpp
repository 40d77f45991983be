#pragma once

#include <stdexcept>
#include <string>

namespace chaosmoments {

// Stable error vocabulary; the CLI prints "ERROR <code>: <message>" on stderr.
enum class ErrorCode {
    EvalOfDelta,
    SingularPoint,
    OddVertexCount,
    CapExceeded,
    MeasureKernelNoDensity,
    SingularityNotIntegrable,
    DimensionCap,
    ConstraintViolated,
    UnstableDiscretization,
    QuadratureNonConvergence,
    NoSpectralDensity,
    InsufficientGrid,
    UnsupportedParameter,
    ParameterOutOfPositivityRange,
    NonpositiveTime,
    RadiusOutOfRange,
    OnLightConeSingularity,
    BadUsage,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::EvalOfDelta: return "EvalOfDelta";
        case ErrorCode::SingularPoint: return "SingularPoint";
        case ErrorCode::OddVertexCount: return "OddVertexCount";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::MeasureKernelNoDensity: return "MeasureKernelNoDensity";
        case ErrorCode::SingularityNotIntegrable: return "SingularityNotIntegrable";
        case ErrorCode::DimensionCap: return "DimensionCap";
        case ErrorCode::ConstraintViolated: return "ConstraintViolated";
        case ErrorCode::UnstableDiscretization: return "UnstableDiscretization";
        case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
        case ErrorCode::NoSpectralDensity: return "NoSpectralDensity";
        case ErrorCode::InsufficientGrid: return "InsufficientGrid";
        case ErrorCode::UnsupportedParameter: return "UnsupportedParameter";
        case ErrorCode::ParameterOutOfPositivityRange: return "ParameterOutOfPositivityRange";
        case ErrorCode::NonpositiveTime: return "NonpositiveTime";
        case ErrorCode::RadiusOutOfRange: return "RadiusOutOfRange";
        case ErrorCode::OnLightConeSingularity: return "OnLightConeSingularity";
        case ErrorCode::BadUsage: return "BadUsage";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
          code_(code), msg_(msg) {}

    ErrorCode code() const { return code_; }
    const std::string& message() const { return msg_; }

  private:
    ErrorCode code_;
    std::string msg_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace chaosmoments

#ifndef KGB_ERROR_HPP
#define KGB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgb {

enum class ErrorCode {
  InvalidParam,
  SingularSystem,
  GridTooNarrow,
  GridTooSmall,
  ToleranceNotMet,
  NonFiniteSample,
  CflViolation,
  NumericalBlowup,
  NoExtremaFound,
  TooFewExtrema,
  DegenerateVariance,
  WindowOutsideGrid,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code tells callers (the CLI in particular) how to classify the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::GridTooNarrow: return "GridTooNarrow";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::NumericalBlowup: return "NumericalBlowup";
    case ErrorCode::NoExtremaFound: return "NoExtremaFound";
    case ErrorCode::TooFewExtrema: return "TooFewExtrema";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::WindowOutsideGrid: return "WindowOutsideGrid";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace kgb

#endif  // KGB_ERROR_HPP

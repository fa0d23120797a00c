#pragma once

#include <stdexcept>
#include <string>

namespace weylp {

// Stable numeric identifiers; the CLI maps them 1:1 onto process exit codes.
enum class ErrorCode : int {
    VerificationFailed = 1,
    ConfigInvalid = 2,
    InsufficientData = 3,
    GridTooLarge = 4,
    FactorizationFailed = 5,
    PrecisionLoss = 6,
    OddDegreeWholeLine = 7,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

class ConfigInvalidError : public Error {
  public:
    explicit ConfigInvalidError(const std::string& what) : Error(ErrorCode::ConfigInvalid, what) {}
};

class InsufficientDataError : public Error {
  public:
    explicit InsufficientDataError(const std::string& what)
        : Error(ErrorCode::InsufficientData, what) {}
};

class GridTooLargeError : public Error {
  public:
    explicit GridTooLargeError(const std::string& what) : Error(ErrorCode::GridTooLarge, what) {}
};

class FactorizationFailedError : public Error {
  public:
    explicit FactorizationFailedError(const std::string& what)
        : Error(ErrorCode::FactorizationFailed, what) {}
};

class OddDegreeWholeLineError : public Error {
  public:
    explicit OddDegreeWholeLineError(const std::string& what)
        : Error(ErrorCode::OddDegreeWholeLine, what) {}
};

// Carries a rigorous enclosure of the requested value so callers can fall
// back to interval reasoning instead of a point estimate.
class PrecisionLossError : public Error {
  public:
    PrecisionLossError(const std::string& what, double fallback_lo, double fallback_hi)
        : Error(ErrorCode::PrecisionLoss, what), fallback_lo_(fallback_lo), fallback_hi_(fallback_hi) {}
    double fallback_lo() const { return fallback_lo_; }
    double fallback_hi() const { return fallback_hi_; }

  private:
    double fallback_lo_;
    double fallback_hi_;
};

}  // namespace weylp

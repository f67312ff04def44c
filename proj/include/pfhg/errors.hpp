#pragma once

#include <stdexcept>
#include <string>

namespace pfhg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct GammaNonPositiveInteger : Error {
    int index;  // 1-based position of the offending gamma
    explicit GammaNonPositiveInteger(int n)
        : Error("gamma[" + std::to_string(n) + "] is a non-positive integer"),
          index(n) {}
};

struct NotThomaeCase : Error {
    NotThomaeCase() : Error("operation requires N = 1") {}
};

struct GammaPole : Error {
    explicit GammaPole(const std::string& msg) : Error(msg) {}
};

struct OutsidePolydisc : Error {
    explicit OutsidePolydisc(const std::string& msg) : Error(msg) {}
};

struct NonConvergent : Error {
    explicit NonConvergent(const std::string& msg) : Error(msg) {}
};

struct OnSingularLocus : Error {
    explicit OnSingularLocus(const std::string& msg) : Error(msg) {}
};

struct NonGenericParameters : Error {
    explicit NonGenericParameters(const std::string& msg) : Error(msg) {}
};

struct NonIntegrableExponent : Error {
    int axis;  // 1-based cube axis
    NonIntegrableExponent(int k, const std::string& msg)
        : Error("axis " + std::to_string(k) + ": " + msg), axis(k) {}
};

struct InadmissibleChamber : Error {
    explicit InadmissibleChamber(const std::string& msg) : Error(msg) {}
};

struct QuadratureNotConverged : Error {
    explicit QuadratureNotConverged(const std::string& msg) : Error(msg) {}
};

struct StepSizeUnderflow : Error {
    explicit StepSizeUnderflow(const std::string& msg) : Error(msg) {}
};

struct ToleranceNotMet : Error {
    explicit ToleranceNotMet(const std::string& msg) : Error(msg) {}
};

struct FactorizationViolated : Error {
    explicit FactorizationViolated(const std::string& msg) : Error(msg) {}
};

struct CoincidentDeformationPoints : Error {
    explicit CoincidentDeformationPoints(const std::string& msg) : Error(msg) {}
};

struct SingularPoint : Error {
    explicit SingularPoint(const std::string& msg) : Error(msg) {}
};

struct RankTooSmall : Error {
    explicit RankTooSmall(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct CheckFailed : Error {
    explicit CheckFailed(const std::string& msg) : Error(msg) {}
};

}  // namespace pfhg

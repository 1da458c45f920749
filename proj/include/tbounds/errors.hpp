#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tbounds {

/// Base of everything thrown by the library. `kind()` is a stable,
/// machine-checkable tag (e.g. "ForbiddenRegionPresent"); what() prepends it
/// to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// A mathematical assumption of the requested operation does not hold
/// (CLI exit code 3).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A numeric procedure failed to converge or meet its tolerance
/// (CLI exit code 1).
class NumericError : public Error {
public:
    using Error::Error;
};

/// Bad names/keys/arguments (CLI exit code 2).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error("Usage", msg) {}
};

/// Quadrature gave up before reaching the requested tolerance; the best
/// estimate obtained so far is attached.
class ToleranceNotMet : public NumericError {
public:
    ToleranceNotMet(const std::string& msg, double best, double err)
        : NumericError("ToleranceNotMet", msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

[[noreturn]] inline void throw_precondition(const std::string& msg) {
    throw PreconditionError("PreconditionFailed", msg);
}
[[noreturn]] inline void throw_invalid_energy(const std::string& msg) {
    throw PreconditionError("InvalidEnergy", msg);
}
[[noreturn]] inline void throw_non_positive(const std::string& msg) {
    throw PreconditionError("NonPositive", msg);
}
[[noreturn]] inline void throw_invalid_delta(const std::string& msg) {
    throw PreconditionError("InvalidDelta", msg);
}
[[noreturn]] inline void throw_forbidden_region(const std::string& msg) {
    throw PreconditionError("ForbiddenRegionPresent", msg);
}
[[noreturn]] inline void throw_asymmetric(const std::string& msg) {
    throw PreconditionError("AsymmetricAsymptotics", msg);
}
[[noreturn]] inline void throw_divergent_asymptotics(const std::string& msg) {
    throw PreconditionError("DivergentAsymptotics", msg);
}
[[noreturn]] inline void throw_not_differentiable(const std::string& msg) {
    throw PreconditionError("NotDifferentiable", msg);
}
[[noreturn]] inline void throw_no_oracle(const std::string& msg) {
    throw PreconditionError("NoOracle", msg);
}
[[noreturn]] inline void throw_non_convergent(const std::string& msg) {
    throw NumericError("NonConvergent", msg);
}

}  // namespace tbounds

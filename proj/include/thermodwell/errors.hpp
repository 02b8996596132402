#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thermodwell {

// Invalid inputs: nonpositive frequencies, negative times, bad enum values.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Γ would be nonpositive (Δ = 0 or Im Λ ≤ 0).
class DegenerateDecayError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Evaluation point outside the operation's domain (e.g. t ∉ [t_i, t_f]).
class DomainError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Failures of a numerical procedure on otherwise valid inputs.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FitDomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

using WarningSink = std::function<void(std::string_view)>;

// Emits through the current thread's sink (stderr unless overridden).
void warn(std::string_view message);

// Installs a warning sink for the current thread for the lifetime of the guard.
class ScopedWarningSink {
public:
    explicit ScopedWarningSink(WarningSink sink);
    ~ScopedWarningSink();
    ScopedWarningSink(const ScopedWarningSink&) = delete;
    ScopedWarningSink& operator=(const ScopedWarningSink&) = delete;

private:
    WarningSink previous_;
};

}  // namespace thermodwell

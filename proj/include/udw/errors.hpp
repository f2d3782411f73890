#pragma once

#include <stdexcept>
#include <string>

namespace udw {

// Thrown when the eps -> 0 extrapolation residual of a rate integral
// stays above the requested tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the truncation window of a rate integral leaves a tail
// estimate above the requested tolerance.
struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the ODE integrator when the local error estimate cannot be
// brought below tolerance within the step budget.
struct StepTooLarge : std::runtime_error {
    explicit StepTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// A Bloch vector on the unit sphere whose derivative moves it off the
// sphere: the pure-state and mixed-state Fisher branches disagree.
struct BranchAmbiguity : std::runtime_error {
    explicit BranchAmbiguity(const std::string& what) : std::runtime_error(what) {}
};

// Density matrix with an eigenvalue below the physicality floor.
struct NonPhysicalDensity : std::runtime_error {
    explicit NonPhysicalDensity(const std::string& what) : std::runtime_error(what) {}
};

// Finite-difference derivative changed too much when the step was halved.
struct DerivativeUnstable : std::runtime_error {
    explicit DerivativeUnstable(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form expression was evaluated outside its algebraic domain
// (e.g. a denominator that must be positive came out non-positive).
struct FormulaDomainError : std::runtime_error {
    explicit FormulaDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Sweep configuration failed validation; message carries field-level detail.
struct ConfigInvalid : std::invalid_argument {
    explicit ConfigInvalid(const std::string& what) : std::invalid_argument(what) {}
};

// Figure preset id not recognized.
struct UnknownFigure : std::invalid_argument {
    explicit UnknownFigure(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace udw

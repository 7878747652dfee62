#pragma once

#include <stdexcept>
#include <string>

namespace khessian {

// Error taxonomy. Everything derives from std::runtime_error so callers can
// catch broadly; specific types exist where a caller is expected to react.

struct ExtrapolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Step size underflow inside the adaptive integrator.
struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Entire-problem tails not decayed enough for reconstruction.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tail fit impossible (zeros or sign changes in the window).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-integrable tail fed to the Green kernel.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Monotone iteration produced an out-of-order step (strict mode only).
struct IterationOrderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateDatumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Newton hit a singular Jacobian; continuation interprets this as a fold.
struct FoldSignal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace khessian

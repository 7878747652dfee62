#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "khessian/problem.hpp"

namespace khessian {

using PlanarField = std::function<PlanarState(double, const PlanarState&)>;

// Zero-crossing detector evaluated along the trajectory.
struct EventSpec {
    std::string name;
    std::function<double(double, const PlanarState&)> predicate;
    bool terminal = false;
};

struct EventHit {
    std::string name;
    double t = 0;
    PlanarState state{0, 0};
};

enum class TerminalKind { ReachedEnd, BlowUp, Event, StepUnderflow };

struct Terminal {
    TerminalKind kind = TerminalKind::ReachedEnd;
    double t = 0;              // escape time / event time / end time
    PlanarState state{0, 0};   // state at termination
    std::string event_name;    // for kind == Event
};

struct TrajectorySample {
    double t;
    PlanarState state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples; // t strictly monotone
    std::vector<EventHit> hits;            // all located crossings
    Terminal terminal;
    double tolerance_used = 0;
    bool backward = false; // true when t decreases along samples

    const TrajectorySample& front() const { return samples.front(); }
    const TrajectorySample& back() const { return samples.back(); }
};

struct IntegrateOptions {
    double tol = 1e-10;           // admissible range [1e-13, 1e-3]
    double blowup_threshold = 1e6;
    double max_step = 0.5;
    std::vector<EventSpec> events;
};

// Adaptive Dormand-Prince 5(4) with cubic-Hermite event bisection
// (|dt| < 1e-10). Backward runs (t1 < t0) integrate the time-reversed field;
// samples then carry decreasing t. Blow-up is a terminal outcome, not an
// error; a step-size underflow below 1e-14 throws StiffnessError.
Trajectory integrate(const PlanarField& field, const PlanarState& state0, double t0,
                     double t1, const IntegrateOptions& opts = {});

// Trajectory state at time t by cubic Hermite interpolation between the two
// bracketing samples; the field supplies endpoint derivatives.
PlanarState sample_at(const Trajectory& traj, const PlanarField& field, double t);

// Least-squares slope of ln|z| vs t over the trailing `window_fraction` of
// the time span. Throws FitError when the window contains zeros or sign
// changes of z.
double fit_decay_exponent(const Trajectory& traj, double window_fraction = 0.25);
double fit_decay_exponent(const std::vector<double>& t, const std::vector<double>& z,
                          double window_fraction = 0.25);

} // namespace khessian

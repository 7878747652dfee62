#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "khessian/integrate.hpp"
#include "khessian/problem.hpp"

namespace khessian {

enum class Classification {
    Saddle,
    SourceNode,
    SourceFocus,
    SinkNode,
    SinkFocus,
    Center,
    Degenerate
};

std::string to_string(Classification c);

struct Equilibrium {
    PlanarState point{0, 0};
    std::array<std::array<double, 2>, 2> jacobian{};
    std::array<std::complex<double>, 2> eigenvalues{};
    // unit eigenvectors, populated for real spectra (column per eigenvalue)
    std::array<PlanarState, 2> eigenvectors{};
    bool real_spectrum = false;
    Classification classification = Classification::Degenerate;
};

// Equilibria of the autonomous (lambda = 0) field. k=2: origin and
// ((2N-4)/alpha, 0) when b0 > 0 (they merge at N=2); k=3: origin and
// (+-sqrt(b0/alpha), 0). Throws on lambda != 0 or unsupported k.
std::vector<Equilibrium> equilibria(const ProblemSpec& spec);

// Spectrum-based taxonomy; |Re mu| or |mu| below `zero_tol` counts as zero.
Classification classify(const std::array<std::complex<double>, 2>& eigenvalues,
                        double zero_tol = 1e-9);

// First integral of the N=4, k=2 planar system.
double conserved_V(double z, double y);

enum class ManifoldBranch { StableLeft, StableRight, UnstableLeft, UnstableRight };

enum class ManifoldVerdict {
    Homoclinic,
    Heteroclinic,
    AxisCrossing,
    LineCrossing,
    Unbounded,
    Inconclusive
};

std::string to_string(ManifoldVerdict v);
std::string to_string(ManifoldBranch b);

struct ManifoldTrace {
    ManifoldBranch branch;
    double offset = 1e-6;
    Trajectory trajectory;
    ManifoldVerdict verdict = ManifoldVerdict::Inconclusive;
    std::optional<PlanarState> target;   // equilibrium reached (heteroclinic)
    std::optional<PlanarState> crossing; // first recorded boundary-set hit
    std::vector<EventHit> axis_hits;     // z = 0 with |y| above the origin filter
    std::vector<EventHit> line_hits;     // y = mu_plus z away from the origin
    double convergence_distance = 0;     // final distance to the target
    bool verdict_stable = false;         // epsilon/2 Richardson re-run agrees
};

struct TraceOptions {
    double horizon = 40.0;
    double offset = 1e-6;
    double tol = 1e-10;
    bool record_crossings = true;
    // convergence = staying inside this ball for one time unit
    double capture_radius = 1e-3;
    bool richardson_check = true;
};

// Seeds at eq +- offset * (unit eigenvector) and integrates stable branches
// backward, unstable branches forward. Requires a one-dimensional manifold of
// the requested stability (a saddle, or the degenerate N=2 origin whose
// spectrum is {0, -2}).
ManifoldTrace trace_manifold(const Equilibrium& eq, ManifoldBranch branch,
                             const ProblemSpec& spec, const TraceOptions& opts = {});

struct CertificateReport {
    std::vector<EventHit> dirichlet_crossings; // z = 0, y != 0
    std::vector<EventHit> navier_crossings;    // y = mu_plus z, (z,y) != 0
    std::vector<ManifoldTrace> traces;
    bool certified = false; // no crossings on either boundary set
    std::string note;
};

// Traces both stable branches of the origin and reports every crossing of
// the Dirichlet set {z = 0, y != 0} and the Navier set
// {y = (N-1-gamma) z, (z,y) != 0}. Empty lists for N >= 4 constitute the
// floating-point non-existence certificate.
CertificateReport nonexistence_certificate(const ProblemSpec& spec,
                                           const TraceOptions& opts = {});

} // namespace khessian

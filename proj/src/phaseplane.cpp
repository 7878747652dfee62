#include "khessian/phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "khessian/errors.hpp"

namespace khessian {

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Saddle: return "saddle";
        case Classification::SourceNode: return "source-node";
        case Classification::SourceFocus: return "source-focus";
        case Classification::SinkNode: return "sink-node";
        case Classification::SinkFocus: return "sink-focus";
        case Classification::Center: return "center";
        case Classification::Degenerate: return "degenerate";
    }
    return "?";
}

std::string to_string(ManifoldVerdict v) {
    switch (v) {
        case ManifoldVerdict::Homoclinic: return "homoclinic";
        case ManifoldVerdict::Heteroclinic: return "heteroclinic";
        case ManifoldVerdict::AxisCrossing: return "axis-crossing";
        case ManifoldVerdict::LineCrossing: return "line-crossing";
        case ManifoldVerdict::Unbounded: return "unbounded";
        case ManifoldVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(ManifoldBranch b) {
    switch (b) {
        case ManifoldBranch::StableLeft: return "stable-left";
        case ManifoldBranch::StableRight: return "stable-right";
        case ManifoldBranch::UnstableLeft: return "unstable-left";
        case ManifoldBranch::UnstableRight: return "unstable-right";
    }
    return "?";
}

Classification classify(const std::array<std::complex<double>, 2>& ev, double zero_tol) {
    const auto l1 = ev[0], l2 = ev[1];
    const bool complex_pair = std::abs(l1.imag()) > zero_tol;
    if (complex_pair) {
        const double re = l1.real();
        if (std::abs(re) <= zero_tol) return Classification::Center;
        return re > 0 ? Classification::SourceFocus : Classification::SinkFocus;
    }
    const double a = l1.real(), b = l2.real();
    if (std::abs(a) <= zero_tol || std::abs(b) <= zero_tol) return Classification::Degenerate;
    if (a * b < 0) return Classification::Saddle;
    return a > 0 ? Classification::SourceNode : Classification::SinkNode;
}

namespace {
Equilibrium make_equilibrium(double zstar, const Coefficients& c, int k) {
    Equilibrium eq;
    eq.point = {zstar, 0.0};
    double zk1 = 1.0;
    for (int i = 0; i < k - 1; ++i) zk1 *= zstar;
    const double j21 = c.b0 - k * c.alpha * zk1;
    eq.jacobian = {{{0.0, 1.0}, {j21, c.b1}}};
    // mu^2 - b1 mu - j21 = 0
    const double disc = c.b1 * c.b1 + 4.0 * j21;
    if (disc >= 0) {
        const double sq = std::sqrt(disc);
        const double m1 = 0.5 * (c.b1 + sq);
        const double m2 = 0.5 * (c.b1 - sq);
        eq.eigenvalues = {std::complex<double>(m1, 0), std::complex<double>(m2, 0)};
        eq.real_spectrum = true;
        for (int i = 0; i < 2; ++i) {
            const double mu = eq.eigenvalues[i].real();
            const double norm = std::sqrt(1.0 + mu * mu);
            eq.eigenvectors[i] = {1.0 / norm, mu / norm};
        }
    } else {
        const double sq = std::sqrt(-disc);
        eq.eigenvalues = {std::complex<double>(0.5 * c.b1, 0.5 * sq),
                          std::complex<double>(0.5 * c.b1, -0.5 * sq)};
        eq.real_spectrum = false;
    }
    eq.classification = classify(eq.eigenvalues);
    return eq;
}
} // namespace

std::vector<Equilibrium> equilibria(const ProblemSpec& spec) {
    if (spec.lambda != 0.0)
        throw std::domain_error("equilibria: field is non-autonomous for lambda != 0");
    require_supported_order(spec.k);
    const Coefficients c = coefficients(spec.k, spec.N);
    std::vector<Equilibrium> out;
    out.push_back(make_equilibrium(0.0, c, spec.k));
    if (spec.k == 2) {
        const double zs = c.b0 / c.alpha;
        if (zs != 0.0) out.push_back(make_equilibrium(zs, c, 2)); // merges with 0 at N=2
    } else {
        const double zs = std::sqrt(c.b0 / c.alpha);
        out.push_back(make_equilibrium(zs, c, 3));
        out.push_back(make_equilibrium(-zs, c, 3));
    }
    return out;
}

double conserved_V(double z, double y) { return 0.5 * y * y - 2.0 * z * z + 0.5 * z * z * z; }

namespace {

struct StableDirection {
    PlanarState v; // unit eigenvector, oriented with positive z-component
    double mu;
};

StableDirection branch_direction(const Equilibrium& eq, ManifoldBranch branch) {
    const bool stable = branch == ManifoldBranch::StableLeft ||
                        branch == ManifoldBranch::StableRight;
    if (!eq.real_spectrum)
        throw std::domain_error("trace_manifold: equilibrium has no real spectrum");
    int idx = -1;
    for (int i = 0; i < 2; ++i) {
        const double mu = eq.eigenvalues[i].real();
        if (stable && mu < 0) idx = i;
        if (!stable && mu > 0) idx = i;
    }
    if (idx < 0)
        throw std::domain_error(stable
                                    ? "trace_manifold: no one-dimensional stable manifold"
                                    : "trace_manifold: no one-dimensional unstable manifold");
    // require the complementary eigenvalue not to oppose (1-D manifold of the
    // requested kind; the degenerate N=2 origin with spectrum {0,-2} passes)
    const double other = eq.eigenvalues[1 - idx].real();
    if (stable && other < 0)
        throw std::domain_error("trace_manifold: stable manifold is two-dimensional");
    if (!stable && other > 0)
        throw std::domain_error("trace_manifold: unstable manifold is two-dimensional");
    PlanarState v = eq.eigenvectors[idx];
    if (v[0] < 0) v = {-v[0], -v[1]};
    return {v, eq.eigenvalues[idx].real()};
}

bool near(const PlanarState& a, const PlanarState& b, double r) {
    return std::hypot(a[0] - b[0], a[1] - b[1]) <= r;
}

// earliest sample index from which the orbit stays inside the capture ball
// for one full time unit; scanning starts at `begin` (past the seed's own
// departure from its equilibrium)
std::optional<std::size_t> capture_index(const Trajectory& traj, const PlanarState& target,
                                         double radius, std::size_t begin) {
    const auto& ss = traj.samples;
    std::size_t i = begin;
    while (i < ss.size()) {
        if (!near(ss[i].state, target, radius)) { ++i; continue; }
        bool failed = false, covered = false;
        std::size_t j = i;
        while (j + 1 < ss.size()) {
            ++j;
            if (!near(ss[j].state, target, radius)) { failed = true; break; }
            if (std::abs(ss[j].t - ss[i].t) >= 1.0) { covered = true; break; }
        }
        if (!failed && covered) return i;
        if (!failed) return std::nullopt; // trajectory ended inside, span < 1
        i = j + 1;
    }
    return std::nullopt;
}

ManifoldTrace trace_once(const Equilibrium& eq, ManifoldBranch branch,
                         const ProblemSpec& spec, const TraceOptions& opts, double eps) {
    const StableDirection dir = branch_direction(eq, branch);
    const bool stable = branch == ManifoldBranch::StableLeft ||
                        branch == ManifoldBranch::StableRight;
    const bool left = branch == ManifoldBranch::StableLeft ||
                      branch == ManifoldBranch::UnstableLeft;
    const double sgn = left ? -1.0 : 1.0;
    PlanarState seed = {eq.point[0] + sgn * eps * dir.v[0],
                        eq.point[1] + sgn * eps * dir.v[1]};

    const Coefficients c = coefficients(spec.k, spec.N);
    const double navier_slope = spec.N - 1 - c.gamma; // = mu_plus
    PlanarField field = make_field(spec);

    IntegrateOptions io;
    io.tol = opts.tol;
    if (opts.record_crossings) {
        io.events.push_back({"axis", [](double, const PlanarState& s) { return s[0]; }, false});
        io.events.push_back({"line",
                             [navier_slope](double, const PlanarState& s) {
                                 return s[1] - navier_slope * s[0];
                             },
                             false});
    }
    const double t1 = stable ? -opts.horizon : opts.horizon;
    ManifoldTrace tr;
    tr.branch = branch;
    tr.offset = eps;
    tr.trajectory = integrate(field, seed, 0.0, t1, io);

    // filter hits that merely witness the asymptotic approach to the origin
    const double filter = 10.0 * opts.capture_radius;
    for (const auto& h : tr.trajectory.hits) {
        if (h.name == "axis" && std::abs(h.state[1]) > filter) tr.axis_hits.push_back(h);
        if (h.name == "line" && std::hypot(h.state[0], h.state[1]) > filter)
            tr.line_hits.push_back(h);
    }

    if (tr.trajectory.terminal.kind == TerminalKind::BlowUp) {
        tr.verdict = ManifoldVerdict::Unbounded;
    } else {
        // convergence counts only after the orbit has left the seed region
        std::size_t begin = 0;
        const double escape_radius = 10.0 * opts.capture_radius;
        while (begin < tr.trajectory.samples.size() &&
               near(tr.trajectory.samples[begin].state, eq.point, escape_radius))
            ++begin;
        for (const auto& other : equilibria(spec)) {
            const auto idx =
                capture_index(tr.trajectory, other.point, opts.capture_radius, begin);
            if (idx) {
                const bool same = near(other.point, eq.point, 1e-9);
                tr.verdict = same ? ManifoldVerdict::Homoclinic : ManifoldVerdict::Heteroclinic;
                if (!same) tr.target = other.point;
                const auto& last = tr.trajectory.samples[*idx];
                tr.convergence_distance =
                    std::hypot(last.state[0] - other.point[0], last.state[1] - other.point[1]);
                break;
            }
        }
        if (tr.verdict == ManifoldVerdict::Inconclusive) {
            if (!tr.axis_hits.empty() &&
                (tr.line_hits.empty() || std::abs(tr.axis_hits.front().t) <=
                                             std::abs(tr.line_hits.front().t))) {
                tr.verdict = ManifoldVerdict::AxisCrossing;
                tr.crossing = tr.axis_hits.front().state;
            } else if (!tr.line_hits.empty()) {
                tr.verdict = ManifoldVerdict::LineCrossing;
                tr.crossing = tr.line_hits.front().state;
            }
        } else if (!tr.axis_hits.empty()) {
            tr.crossing = tr.axis_hits.front().state;
        }
    }
    return tr;
}

} // namespace

ManifoldTrace trace_manifold(const Equilibrium& eq, ManifoldBranch branch,
                             const ProblemSpec& spec, const TraceOptions& opts) {
    if (spec.lambda != 0.0)
        throw std::domain_error("trace_manifold: requires lambda = 0");
    if (!(opts.offset >= 1e-8 && opts.offset <= 1e-4))
        throw std::domain_error("trace_manifold: seed offset outside [1e-8, 1e-4]");
    ManifoldTrace tr = trace_once(eq, branch, spec, opts, opts.offset);
    if (opts.richardson_check) {
        const ManifoldTrace half = trace_once(eq, branch, spec, opts, opts.offset / 2.0);
        tr.verdict_stable = (half.verdict == tr.verdict);
    }
    return tr;
}

CertificateReport nonexistence_certificate(const ProblemSpec& spec,
                                           const TraceOptions& opts) {
    if (spec.lambda != 0.0)
        throw std::domain_error("nonexistence_certificate: requires lambda = 0");
    require_supported_order(spec.k);
    CertificateReport rep;
    const auto eqs = equilibria(spec);
    const Equilibrium& origin = eqs.front();
    for (ManifoldBranch b : {ManifoldBranch::StableRight, ManifoldBranch::StableLeft}) {
        ManifoldTrace tr = trace_manifold(origin, b, spec, opts);
        for (const auto& h : tr.axis_hits) rep.dirichlet_crossings.push_back(h);
        for (const auto& h : tr.line_hits) rep.navier_crossings.push_back(h);
        rep.traces.push_back(std::move(tr));
    }
    rep.certified = rep.dirichlet_crossings.empty() && rep.navier_crossings.empty();
    rep.note = "floating-point evidence from stable-manifold traces, not a rigorous proof";
    return rep;
}

} // namespace khessian

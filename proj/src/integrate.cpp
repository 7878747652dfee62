#include "khessian/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "khessian/errors.hpp"
#include "khessian/numerics.hpp"

namespace khessian {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

inline PlanarState axpy(const PlanarState& y, double h, double c1, const PlanarState& k1) {
    return {y[0] + h * c1 * k1[0], y[1] + h * c1 * k1[1]};
}

inline double norm_inf(const PlanarState& s) {
    return std::max(std::abs(s[0]), std::abs(s[1]));
}

PlanarState hermite(const PlanarState& y0, const PlanarState& f0, const PlanarState& y1,
                    const PlanarState& f1, double h, double s) {
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    PlanarState out;
    for (int i = 0; i < 2; ++i)
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    return out;
}

} // namespace

Trajectory integrate(const PlanarField& field, const PlanarState& state0, double t0,
                     double t1, const IntegrateOptions& opts) {
    if (!(opts.tol >= 1e-13 && opts.tol <= 1e-3))
        throw std::domain_error("integrate: tol must lie in [1e-13, 1e-3]");
    const PlanarState f00 = field(t0, state0);
    if (!std::isfinite(f00[0]) || !std::isfinite(f00[1]))
        throw std::domain_error("integrate: field not finite at initial state");

    const bool backward = t1 < t0;
    // backward runs integrate the reversed field on increasing internal time
    PlanarField g = field;
    if (backward)
        g = [&field](double tau, const PlanarState& s) -> PlanarState {
            const PlanarState v = field(-tau, s);
            return {-v[0], -v[1]};
        };
    const double a = backward ? -t0 : t0;
    const double b = backward ? -t1 : t1;
    auto user_time = [backward](double tau) { return backward ? -tau : tau; };

    Trajectory traj;
    traj.tolerance_used = opts.tol;
    traj.backward = backward;
    traj.samples.push_back({t0, state0});

    double t = a;
    PlanarState y = state0;
    PlanarState k1 = backward ? PlanarState{-f00[0], -f00[1]} : f00;
    std::vector<double> evvals(opts.events.size());
    for (std::size_t i = 0; i < opts.events.size(); ++i)
        evvals[i] = opts.events[i].predicate(user_time(t), y);

    double h = std::min(opts.max_step, std::max(1e-6, (b - a) * 1e-4));
    const double safety = 0.9;

    while (t < b) {
        h = std::min(h, b - t);
        PlanarState k2, k3, k4, k5, k6, k7, ynew, yerr;
        {
            PlanarState s1 = {y[0] + h * A21 * k1[0], y[1] + h * A21 * k1[1]};
            k2 = g(t + C2 * h, s1);
            PlanarState s2 = {y[0] + h * (A31 * k1[0] + A32 * k2[0]),
                              y[1] + h * (A31 * k1[1] + A32 * k2[1])};
            k3 = g(t + C3 * h, s2);
            PlanarState s3 = {y[0] + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0]),
                              y[1] + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1])};
            k4 = g(t + C4 * h, s3);
            PlanarState s4 = {
                y[0] + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0]),
                y[1] + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1])};
            k5 = g(t + C5 * h, s4);
            PlanarState s5 = {y[0] + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] +
                                          A64 * k4[0] + A65 * k5[0]),
                              y[1] + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] +
                                          A64 * k4[1] + A65 * k5[1])};
            k6 = g(t + h, s5);
            for (int i = 0; i < 2; ++i)
                ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                                      B6 * k6[i]);
            k7 = g(t + h, ynew);
            for (int i = 0; i < 2; ++i)
                yerr[i] = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                               E6 * k6[i] + E7 * k7[i]);
        }
        double errnorm = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sc = opts.tol + opts.tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            errnorm += (yerr[i] / sc) * (yerr[i] / sc);
        }
        errnorm = std::sqrt(0.5 * errnorm);

        if (!std::isfinite(errnorm) || errnorm > 1.0) {
            const double fac = std::isfinite(errnorm)
                                   ? std::max(0.2, safety * std::pow(errnorm, -0.2))
                                   : 0.2;
            h *= fac;
            if (h < 1e-14) throw StiffnessError("integrate: step size underflow");
            continue;
        }

        const double tnew = t + h;
        bool stop = false;
        if (!opts.events.empty()) {
            for (std::size_t ie = 0; ie < opts.events.size(); ++ie) {
                const auto& ev = opts.events[ie];
                const double v0 = evvals[ie];
                const double v1 = ev.predicate(user_time(tnew), ynew);
                if (v0 != 0.0 && v0 * v1 < 0.0) {
                    // bisection on the cubic Hermite interpolant
                    double sa = 0.0, sb = 1.0, fa = v0;
                    while ((sb - sa) * h > 1e-10) {
                        const double sm = 0.5 * (sa + sb);
                        const PlanarState ym = hermite(y, k1, ynew, k7, h, sm);
                        const double fm = ev.predicate(user_time(t + sm * h), ym);
                        if (fa * fm <= 0.0) sb = sm;
                        else { sa = sm; fa = fm; }
                    }
                    const double te = t + sb * h;
                    const PlanarState ye = hermite(y, k1, ynew, k7, h, sb);
                    traj.hits.push_back({ev.name, user_time(te), ye});
                    if (ev.terminal) {
                        traj.samples.push_back({user_time(te), ye});
                        traj.terminal = {TerminalKind::Event, user_time(te), ye, ev.name};
                        return traj;
                    }
                }
                evvals[ie] = v1;
            }
        }
        (void)stop;

        t = tnew;
        y = ynew;
        k1 = k7; // FSAL
        traj.samples.push_back({user_time(t), y});

        if (norm_inf(y) > opts.blowup_threshold) {
            traj.terminal = {TerminalKind::BlowUp, user_time(t), y, {}};
            return traj;
        }

        const double fac = errnorm > 0 ? safety * std::pow(errnorm, -0.2) : 5.0;
        h = std::min(opts.max_step, h * std::clamp(fac, 0.2, 5.0));
        if (h < 1e-14) throw StiffnessError("integrate: step size underflow");
    }
    traj.terminal = {TerminalKind::ReachedEnd, user_time(t), y, {}};
    return traj;
}

PlanarState sample_at(const Trajectory& traj, const PlanarField& field, double t) {
    const auto& ss = traj.samples;
    if (ss.size() < 2) return ss.front().state;
    // map to increasing internal order
    auto tt = [&](std::size_t i) { return traj.backward ? -ss[i].t : ss[i].t; };
    const double ti = traj.backward ? -t : t;
    if (ti <= tt(0)) return ss.front().state;
    if (ti >= tt(ss.size() - 1)) return ss.back().state;
    std::size_t lo = 0, hi = ss.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (tt(mid) <= ti) lo = mid;
        else hi = mid;
    }
    const double h = ss[hi].t - ss[lo].t;
    const double s = (t - ss[lo].t) / h;
    const PlanarState f0 = field(ss[lo].t, ss[lo].state);
    const PlanarState f1 = field(ss[hi].t, ss[hi].state);
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    PlanarState out;
    for (int i = 0; i < 2; ++i)
        out[i] = h00 * ss[lo].state[i] + h10 * h * f0[i] + h01 * ss[hi].state[i] +
                 h11 * h * f1[i];
    return out;
}

double fit_decay_exponent(const std::vector<double>& t, const std::vector<double>& z,
                          double window_fraction) {
    if (t.size() != z.size() || t.size() < 3)
        throw std::invalid_argument("fit_decay_exponent: bad input");
    const double t0 = t.front(), t1 = t.back();
    const double cut = t1 - window_fraction * (t1 - t0);
    std::vector<double> xs, ys;
    int sign = 0;
    double prev_abs = 0;
    bool monotone = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < cut) continue;
        if (z[i] == 0.0) throw FitError("fit_decay_exponent: zero in tail window");
        const int s = z[i] > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) throw FitError("fit_decay_exponent: sign change in tail window");
        const double az = std::abs(z[i]);
        if (!xs.empty() && az > prev_abs) monotone = false;
        prev_abs = az;
        xs.push_back(t[i]);
        ys.push_back(std::log(az));
    }
    (void)monotone;
    if (xs.size() < 3) throw FitError("fit_decay_exponent: window too small");
    return num::ls_slope(xs, ys);
}

double fit_decay_exponent(const Trajectory& traj, double window_fraction) {
    std::vector<double> t, z;
    t.reserve(traj.samples.size());
    z.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        t.push_back(s.t);
        z.push_back(s.state[0]);
    }
    if (traj.backward) {
        std::reverse(t.begin(), t.end());
        std::reverse(z.begin(), z.end());
    }
    return fit_decay_exponent(t, z, window_fraction);
}

} // namespace khessian

#include "khessian/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "khessian/errors.hpp"
#include "khessian/numerics.hpp"

namespace khessian {

std::vector<double> z_from_w(const std::vector<double>& w_values,
                             const std::vector<double>& t_grid, double gamma) {
    if (w_values.size() != t_grid.size())
        throw std::invalid_argument("z_from_w: mismatched lengths");
    std::vector<double> z(w_values.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = std::exp(-gamma * t_grid[i]) * w_values[i];
    return z;
}

std::vector<double> w_from_z(const std::vector<double>& z_values,
                             const std::vector<double>& t_grid, double gamma) {
    if (z_values.size() != t_grid.size())
        throw std::invalid_argument("w_from_z: mismatched lengths");
    std::vector<double> w(z_values.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = std::exp(gamma * t_grid[i]) * z_values[i];
    return w;
}

std::vector<double> reconstruct_u(const std::vector<double>& t_grid,
                                  const std::vector<double>& z_values,
                                  const ProblemSpec& spec) {
    const std::size_t n = t_grid.size();
    if (z_values.size() != n || n < 2)
        throw std::invalid_argument("reconstruct_u: bad grid");
    const Coefficients c = coefficients(spec.k, spec.N);
    // u(e^{-t}) = int_{lower}^{t} e^{gamma tau} z(tau) dtau
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i)
        integrand[i] = std::exp(c.gamma * t_grid[i]) * z_values[i];
    std::vector<double> cum = num::cumulative_integral(t_grid, integrand);

    if (spec.boundary != Boundary::Entire) {
        if (std::abs(t_grid.front()) > 1e-12)
            throw std::invalid_argument("reconstruct_u: ball grid must start at t = 0");
        return cum; // u(1) = 0 exactly by construction
    }

    // entire problem: both tails must have decayed
    const double zl = std::abs(z_values.front());
    const double zr = std::abs(z_values.back());
    if (zl > 1e-10 || zr > 1e-10)
        throw TruncationError("reconstruct_u: entire tails not decayed below 1e-10");

    // left tail correction: fit z ~ A e^{nu t} (nu > 0 towards t -> -inf)
    double tail = 0.0;
    std::optional<double> nu_opt;
    if (integrand.front() != 0.0) {
        std::vector<double> ts, ls;
        int sign = z_values.front() > 0 ? 1 : -1;
        const double span = t_grid.back() - t_grid.front();
        for (std::size_t i = 0; i < n && t_grid[i] <= t_grid.front() + 0.1 * span; ++i) {
            if (z_values[i] == 0.0 || (z_values[i] > 0 ? 1 : -1) != sign) break;
            ts.push_back(t_grid[i]);
            ls.push_back(std::log(std::abs(z_values[i])));
        }
        if (ts.size() >= 4) {
            const double nu = num::ls_slope(ts, ls); // decay exponent of z at -inf
            nu_opt = nu;
            const double nu_int = nu + c.gamma;      // integrand exponent
            if (nu_int > 0.05) tail = integrand.front() / nu_int;
        }
    }
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = tail + cum[i];
    return u;
}

SolutionProfile make_profile(std::vector<double> t_grid, std::vector<double> z_values,
                             const ProblemSpec& spec) {
    const Coefficients c = coefficients(spec.k, spec.N);
    SolutionProfile p;
    p.boundary = spec.boundary;
    p.w_values = w_from_z(z_values, t_grid, c.gamma);
    p.u_values = reconstruct_u(t_grid, z_values, spec);
    p.r_grid.resize(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) p.r_grid[i] = std::exp(-t_grid[i]);
    p.t_grid = std::move(t_grid);
    p.z_values = std::move(z_values);
    return p;
}

double radial_residual(const std::vector<double>& u_values,
                       const std::vector<double>& r_grid, const ProblemSpec& spec,
                       const RadialResidualOptions& opts) {
    const std::size_t n = r_grid.size();
    if (n < 7) throw std::invalid_argument("radial_residual: grid too coarse (< 7 points)");
    if (u_values.size() != n) throw std::invalid_argument("radial_residual: length mismatch");

    // work on an increasing copy
    std::vector<double> r(r_grid), u(u_values);
    if (r.front() > r.back()) {
        std::reverse(r.begin(), r.end());
        std::reverse(u.begin(), u.end());
    }
    for (std::size_t i = 1; i < n; ++i)
        if (!(r[i] > r[i - 1]))
            throw std::invalid_argument("radial_residual: grid not strictly monotone");

    const int N = spec.N, k = spec.k;
    double binom = 1.0;
    for (int i = 1; i <= k - 1; ++i) binom = binom * (N - k + i) / i;
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;

    const int npts = static_cast<int>(std::min<std::size_t>(11, (n % 2 == 0) ? n - 1 : n));
    const int half = npts / 2;
    double worst = 0.0;
    bool any = false;
    std::vector<double> xs(npts), du(npts);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= 4 ? i - 4 : 0;
        const std::size_t hi = std::min(n - 1, i + 4);
        const double hloc = (r[hi] - r[lo]) / static_cast<double>(hi - lo);
        int m = std::max(1, static_cast<int>(std::lround(opts.target_spacing / hloc)));
        if (static_cast<long>(i) - static_cast<long>(half) * m < 0 ||
            i + static_cast<std::size_t>(half) * m > n - 1)
            continue;
        for (int j = 0; j < npts; ++j) {
            const std::size_t idx = i + static_cast<std::size_t>((j - half) * m);
            xs[j] = r[idx];
            du[j] = u[idx] - u[i]; // remove the constant mode before differencing
        }
        const auto w = num::fd_weights(xs, r[i], 4);
        double d1 = 0, d2 = 0, d3 = 0, d4 = 0;
        for (int j = 0; j < npts; ++j) {
            d1 += w[j][1] * du[j];
            d2 += w[j][2] * du[j];
            d3 += w[j][3] * du[j];
            d4 += w[j][4] * du[j];
        }
        const double ri = r[i];
        const double cN = N - 1;
        const double lhs = d4 + 2 * cN / ri * d3 + cN * (N - 3) / (ri * ri) * d2 -
                           cN * (N - 3) / (ri * ri * ri) * d1;
        double d1k = 1.0, d1k1 = 1.0;
        for (int j = 0; j < k; ++j) d1k *= d1;
        for (int j = 0; j < k - 1; ++j) d1k1 *= d1;
        double rk = 1.0, rk1 = 1.0;
        for (int j = 0; j < k; ++j) rk *= ri;
        for (int j = 0; j < k - 1; ++j) rk1 *= ri;
        double rhs = (sign_k / k) * binom * ((N - k) * d1k / rk + k * d1k1 * d2 / rk1);
        if (spec.lambda != 0.0 && !spec.datum.is_zero()) {
            double rN1 = 1.0;
            for (int j = 0; j < N - 1; ++j) rN1 *= ri;
            rhs += spec.lambda * spec.datum.value(ri) / rN1;
        }
        worst = std::max(worst, std::abs(lhs - rhs));
        any = true;
    }
    if (!any) throw std::invalid_argument("radial_residual: no interior point fits a stencil");
    return worst;
}

} // namespace khessian

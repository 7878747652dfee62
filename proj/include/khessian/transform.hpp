#pragma once

#include <optional>
#include <vector>

#include "khessian/problem.hpp"

namespace khessian {

// Radial profile in all four variable levels. r = e^{-t}, w = e^{gamma t} z,
// u reconstructed by quadrature of u'(r) = -w(-ln r).
struct SolutionProfile {
    std::vector<double> t_grid;   // increasing
    std::vector<double> z_values;
    std::vector<double> w_values;
    std::vector<double> r_grid;   // e^{-t}, decreasing
    std::vector<double> u_values;
    Boundary boundary = Boundary::Dirichlet;
    // set when an entire-problem tail was closed analytically
    std::optional<double> left_tail_exponent;
};

std::vector<double> z_from_w(const std::vector<double>& w_values,
                             const std::vector<double>& t_grid, double gamma);
std::vector<double> w_from_z(const std::vector<double>& z_values,
                             const std::vector<double>& t_grid, double gamma);

// u at the profile radii.
//   ball:   u(r) = int_r^1 w(-ln s) ds with u(1) = 0 (grid must start at t=0)
//   entire: u(r) = int_r^R w(-ln s) ds + analytic tail from the fitted decay
//           exponent of the left z-tail, with u(inf) = 0
// In t the integrand is e^{(gamma-1) tau} w... reduced to e^{gamma tau} z;
// quadrature is the cubic-panel cumulative rule on the solver's own grid.
std::vector<double> reconstruct_u(const std::vector<double>& t_grid,
                                  const std::vector<double>& z_values,
                                  const ProblemSpec& spec);

// Builds the full profile from a z-grid function.
SolutionProfile make_profile(std::vector<double> t_grid, std::vector<double> z_values,
                             const ProblemSpec& spec);

struct RadialResidualOptions {
    // Effective stencil spacing the strided 11-point differences aim for;
    // balances h^8 truncation against the eps/h^4 rounding floor of the
    // fourth derivative.
    double target_spacing = 0.012;
};

// Max abs difference between the two sides of the radial equation
//   Delta_r^2 u = ((-1)^k / k) binom(N-1, k-1) (1/r^{N-1}) [r^{N-k} (u')^k]'
//                 + lambda g(r) / r^{N-1}
// over interior points where the centered (strided) stencil fits.
// r_grid must be strictly monotone with >= 7 points, bounded away from 0.
double radial_residual(const std::vector<double>& u_values,
                       const std::vector<double>& r_grid, const ProblemSpec& spec,
                       const RadialResidualOptions& opts = {});

} // namespace khessian

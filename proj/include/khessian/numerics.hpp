#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace khessian::num {

// Finite-difference weights on arbitrary nodes (Fornberg's algorithm).
// Returns weights[j][d] so that f^(d)(x0) ~ sum_j weights[j][d] * f(x[j])
// for derivative orders d = 0..max_order.
std::vector<std::vector<double>> fd_weights(std::span<const double> x, double x0,
                                            int max_order);

// Cumulative integral of samples f on a strictly increasing grid t.
// Per-interval quadrature integrates the cubic through the four nearest
// nodes (clamped at the ends), O(h^4) on smooth data, non-uniform safe.
// Result[0] = 0, result[i] = integral from t[0] to t[i].
std::vector<double> cumulative_integral(std::span<const double> t,
                                        std::span<const double> f);

// Least-squares slope of y vs x.
double ls_slope(std::span<const double> x, std::span<const double> y);

// Moments M_j = integral_0^h s^j e^{mu s} ds for j = 0..3.
// Series branch for small |mu h| avoids the cancellation in the closed form.
void exp_moments(double mu, double h, double out[4]);

// Banded LU solve with partial pivoting, kl sub- and ku super-diagonals.
// `band` is indexed band[i][j - i + kl] for |j - i| within the bandwidth
// (row-major compact storage, width kl + ku + 1). Solves in place into rhs.
// Returns false on a numerically singular pivot.
class BandedMatrix {
  public:
    BandedMatrix(std::size_t n, int kl, int ku);
    double& at(std::size_t i, std::size_t j);
    double at(std::size_t i, std::size_t j) const;
    std::size_t size() const { return n_; }
    // Factor + solve; returns false if a pivot falls below `pivot_tol`
    // relative to the largest entry.
    bool solve(std::vector<double>& rhs, double pivot_tol = 1e-14) const;
    double inf_norm() const;

  private:
    std::size_t n_;
    int kl_, ku_;
    std::vector<double> a_;
};

// Second-order dual number: carries value, first and second derivative.
// Enough exp/arithmetic coverage for the closed forms in this project.
struct Dual2 {
    double v = 0, d1 = 0, d2 = 0;
    static Dual2 variable(double x) { return {x, 1.0, 0.0}; }
    static Dual2 constant(double c) { return {c, 0.0, 0.0}; }
};

Dual2 operator+(Dual2 a, Dual2 b);
Dual2 operator-(Dual2 a, Dual2 b);
Dual2 operator*(Dual2 a, Dual2 b);
Dual2 operator/(Dual2 a, Dual2 b);
Dual2 operator*(double c, Dual2 a);
Dual2 operator+(double c, Dual2 a);
Dual2 operator-(double c, Dual2 a);
Dual2 exp(Dual2 a);
Dual2 pow_int(Dual2 a, int n);

} // namespace khessian::num

#include "khessian/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace khessian::num {

std::vector<std::vector<double>> fd_weights(std::span<const double> x, double x0,
                                            int max_order) {
    const int n = static_cast<int>(x.size());
    const int m = max_order;
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int s = mn; s >= 1; --s)
                    c[i][s] = c1 * (s * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int s = mn; s >= 1; --s)
                c[j][s] = (c4 * c[j][s] - s * c[j][s - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return c;
}

namespace {
// Integral over [t[i], t[i+1]] of the cubic through nodes i0..i0+3.
double cubic_panel(std::span<const double> t, std::span<const double> f,
                   std::size_t i, std::size_t i0) {
    const double a = t[i], b = t[i + 1];
    double total = 0.0;
    for (std::size_t j = i0; j < i0 + 4; ++j) {
        // integral of the Lagrange basis L_j over [a, b], exact
        double xs[3];
        int k = 0;
        double denom = 1.0;
        for (std::size_t l = i0; l < i0 + 4; ++l) {
            if (l == j) continue;
            xs[k++] = t[l];
            denom *= t[j] - t[l];
        }
        // expand (x-xs0)(x-xs1)(x-xs2) = x^3 - e1 x^2 + e2 x - e3
        const double e1 = xs[0] + xs[1] + xs[2];
        const double e2 = xs[0] * xs[1] + xs[0] * xs[2] + xs[1] * xs[2];
        const double e3 = xs[0] * xs[1] * xs[2];
        auto prim = [&](double x) {
            return ((x * x * x * x) / 4.0) - e1 * (x * x * x) / 3.0 +
                   e2 * (x * x) / 2.0 - e3 * x;
        };
        total += f[j] * (prim(b) - prim(a)) / denom;
    }
    return total;
}
} // namespace

std::vector<double> cumulative_integral(std::span<const double> t,
                                        std::span<const double> f) {
    const std::size_t n = t.size();
    if (f.size() != n) throw std::invalid_argument("cumulative_integral: length mismatch");
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n < 4) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            out[i + 1] = out[i] + 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
        return out;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t i0 = (i == 0) ? 0 : i - 1;
        if (i0 + 3 >= n) i0 = n - 4;
        out[i + 1] = out[i] + cubic_panel(t, f, i, i0);
    }
    return out;
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("ls_slope: bad input");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ls_slope: degenerate abscissae");
    return sxy / sxx;
}

void exp_moments(double mu, double h, double out[4]) {
    const double x = mu * h;
    if (std::abs(x) < 0.5) {
        // M_j = h^{j+1} sum_m x^m / (m! (j+m+1))
        for (int j = 0; j <= 3; ++j) {
            double term = 1.0 / (j + 1);
            double sum = term;
            double xm = 1.0;
            double fact = 1.0;
            for (int m = 1; m < 30; ++m) {
                xm *= x;
                fact *= m;
                const double t = xm / (fact * (j + m + 1));
                sum += t;
                if (std::abs(t) < 1e-18 * std::abs(sum)) break;
            }
            double hp = h;
            for (int p = 0; p < j; ++p) hp *= h;
            out[j] = hp * sum;
        }
        return;
    }
    const double e = std::exp(x);
    out[0] = (e - 1.0) / mu;
    double hp = 1.0;
    for (int j = 1; j <= 3; ++j) {
        hp *= h;
        out[j] = (hp * e - j * out[j - 1]) / mu;
    }
}

BandedMatrix::BandedMatrix(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), a_(n * (kl + ku + 1 + kl), 0.0) {}
// extra kl columns of storage hold fill-in generated by row pivoting

double& BandedMatrix::at(std::size_t i, std::size_t j) {
    const int off = static_cast<int>(j) - static_cast<int>(i) + kl_;
    return a_[i * (kl_ + ku_ + 1 + kl_) + static_cast<std::size_t>(off)];
}

double BandedMatrix::at(std::size_t i, std::size_t j) const {
    const int off = static_cast<int>(j) - static_cast<int>(i) + kl_;
    return a_[i * (kl_ + ku_ + 1 + kl_) + static_cast<std::size_t>(off)];
}

double BandedMatrix::inf_norm() const {
    const int w = kl_ + ku_ + 1;
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int o = 0; o < w; ++o) s += std::abs(a_[i * (w + kl_) + o]);
        best = std::max(best, s);
    }
    return best;
}

bool BandedMatrix::solve(std::vector<double>& rhs, double pivot_tol) const {
    // work on a copy; factorization with partial pivoting over kl rows
    const int w = kl_ + ku_ + 1 + kl_;
    std::vector<double> a = a_;
    std::vector<double>& b = rhs;
    const std::size_t n = n_;
    auto A = [&](std::size_t i, std::size_t j) -> double& {
        return a[i * w + (static_cast<int>(j) - static_cast<int>(i) + kl_)];
    };
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;

    for (std::size_t col = 0; col < n; ++col) {
        // pivot search in rows col..col+kl
        std::size_t piv = col;
        double best = std::abs(A(col, col));
        const std::size_t rmax = std::min(n - 1, col + static_cast<std::size_t>(kl_));
        for (std::size_t r = col + 1; r <= rmax; ++r) {
            const double v = std::abs(A(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best < pivot_tol * scale) return false;
        if (piv != col) {
            const std::size_t jmax = std::min(n - 1, col + static_cast<std::size_t>(ku_ + kl_));
            for (std::size_t j = col; j <= jmax; ++j)
                std::swap(A(col, j), A(piv, j));
            std::swap(b[col], b[piv]);
        }
        const double d = A(col, col);
        for (std::size_t r = col + 1; r <= rmax; ++r) {
            const double m = A(r, col) / d;
            if (m == 0.0) continue;
            const std::size_t jmax = std::min(n - 1, col + static_cast<std::size_t>(ku_ + kl_));
            for (std::size_t j = col + 1; j <= jmax; ++j) A(r, j) -= m * A(col, j);
            b[r] -= m * b[col];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        const std::size_t jmax = std::min(n - 1, ii + static_cast<std::size_t>(ku_ + kl_));
        for (std::size_t j = ii + 1; j <= jmax; ++j) s -= A(ii, j) * b[j];
        b[ii] = s / A(ii, ii);
    }
    return true;
}

Dual2 operator+(Dual2 a, Dual2 b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Dual2 operator-(Dual2 a, Dual2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Dual2 operator*(Dual2 a, Dual2 b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
Dual2 operator/(Dual2 a, Dual2 b) {
    const double v = a.v / b.v;
    const double d1 = (a.d1 - v * b.d1) / b.v;
    const double d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) / b.v;
    return {v, d1, d2};
}
Dual2 operator*(double c, Dual2 a) { return {c * a.v, c * a.d1, c * a.d2}; }
Dual2 operator+(double c, Dual2 a) { return {c + a.v, a.d1, a.d2}; }
Dual2 operator-(double c, Dual2 a) { return {c - a.v, -a.d1, -a.d2}; }
Dual2 exp(Dual2 a) {
    const double e = std::exp(a.v);
    return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}
Dual2 pow_int(Dual2 a, int n) {
    Dual2 r = Dual2::constant(1.0);
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}

} // namespace khessian::num

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace khessian {

enum class Boundary { Dirichlet, Navier, Entire };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

// Datum g on [0,1] (ball problems) or [0,inf) (entire problems).
// The solvers only ever consume the cumulative integral G(s) = int_0^s g.
class Datum {
  public:
    enum class Kind { Zero, PowerLaw, Indicator, Tabulated };

    static Datum zero();
    // g(s) = c * s^p, p > -1 so that g is integrable at 0.
    static Datum power_law(double c, double p);
    // g(s) = c on [a, b], 0 elsewhere; 0 <= a < b.
    static Datum indicator(double a, double b, double c);
    // Ordered (s, g(s)) samples, s >= 0 strictly increasing. Below the first
    // sample g is taken as 0 (keeps cumulative(0) = 0); above the last sample
    // queries raise ExtrapolationError.
    static Datum tabulated(std::vector<std::pair<double, double>> samples);

    Kind kind() const { return kind_; }
    double amplitude() const { return c_; }
    double exponent() const { return p_; }
    double interval_a() const { return a_; }
    double interval_b() const { return b_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    // G(s) = int_0^s g. Monotone for g >= 0; tabulated uses trapezoidal
    // accumulation and linear interpolation of the cumulative, never of g.
    double cumulative(double s) const;

    // Pointwise g(s). Tabulated interpolates g linearly (used only by the
    // radial residual RHS).
    double value(double s) const;

    double scaled_total() const; // cumulative at the largest meaningful s
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool nonnegative() const;

    Datum scaled(double factor) const;

  private:
    Kind kind_ = Kind::Zero;
    double c_ = 0, p_ = 0, a_ = 0, b_ = 0;
    std::vector<std::pair<double, double>> samples_;
    std::vector<double> cum_; // tabulated cumulative at sample nodes
};

struct ProblemSpec {
    int k = 2;
    int N = 4;
    double lambda = 0.0;
    Boundary boundary = Boundary::Dirichlet;
    Datum datum = Datum::zero();

    ProblemSpec() = default;
    ProblemSpec(int k_, int N_, double lambda_, Boundary b_, Datum d_ = Datum::zero());
};

// Derived constants of the z-equation
//   -z'' + b1 z' + b0 z = alpha z^k + lambda e^{(N-3-gamma)t} G(e^{-t}).
struct Coefficients {
    double gamma;    // (3-k)/(k-1)
    double alpha;    // (1/k) binom(N-1, k-1)
    double b1;       // N-2-2gamma
    double b0;       // N-1+gamma(N-2)-gamma^2
    double mu_plus;  // growing characteristic root, (b1+N)/2
    double mu_minus; // decaying characteristic root, (b1-N)/2
};

// Throws std::domain_error unless 2 <= k <= N.
Coefficients coefficients(int k, int N);

// Forcing profile F(t) = e^{(N-3-gamma)t} * cumulative(e^{-t}).
// The lambda factor is applied by callers.
double forcing_F(double t, const ProblemSpec& spec);

using PlanarState = std::array<double, 2>; // (z, y)

// Right-hand side of the planar system: dz = y,
// dy = b1 y + b0 z - alpha z^k - lambda F(t).
PlanarState vector_field(const PlanarState& state, double t, const ProblemSpec& spec);

// Convenience: a reusable closure over precomputed coefficients.
std::function<PlanarState(double, const PlanarState&)> make_field(const ProblemSpec& spec);

struct AssumptionReport {
    bool holds = false;
    bool inconclusive = false;
    std::string witness;
};

// Checks the data assumption lim_{t->inf} e^{(N-3)t} G(e^{-t}) = 0,
// and additionally the t -> -inf limit for the entire boundary.
// Symbolic families decide by exponent comparison; tabulated data are probed
// on a log-spaced t grid up to t = 40 (threshold 1e-6, non-increasing tail).
AssumptionReport assumption_check(const Datum& datum, int N, Boundary boundary);

// A k outside {2,3} is representable but the nonlinear machinery only
// analyses quadratic and cubic fields; solvers call this gate.
void require_supported_order(int k);

} // namespace khessian

#include "khessian/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "khessian/errors.hpp"

namespace khessian {

std::string to_string(Boundary b) {
    switch (b) {
        case Boundary::Dirichlet: return "dirichlet";
        case Boundary::Navier: return "navier";
        case Boundary::Entire: return "entire";
    }
    return "?";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "dirichlet") return Boundary::Dirichlet;
    if (s == "navier") return Boundary::Navier;
    if (s == "entire") return Boundary::Entire;
    throw ConfigError("unknown boundary kind: " + s);
}

Datum Datum::zero() { return Datum{}; }

Datum Datum::power_law(double c, double p) {
    if (!(p > -1.0)) throw std::domain_error("power_law: need p > -1 for an integrable datum");
    Datum d;
    d.kind_ = Kind::PowerLaw;
    d.c_ = c;
    d.p_ = p;
    return d;
}

Datum Datum::indicator(double a, double b, double c) {
    if (!(a >= 0.0 && b > a)) throw std::domain_error("indicator: need 0 <= a < b");
    Datum d;
    d.kind_ = Kind::Indicator;
    d.a_ = a;
    d.b_ = b;
    d.c_ = c;
    return d;
}

Datum Datum::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw std::domain_error("tabulated: need at least 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].first < 0.0) throw std::domain_error("tabulated: s must be >= 0");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw std::domain_error("tabulated: s must be strictly increasing");
    }
    Datum d;
    d.kind_ = Kind::Tabulated;
    d.samples_ = std::move(samples);
    d.cum_.resize(d.samples_.size(), 0.0);
    // trapezoidal accumulation; g taken 0 below the first sample
    for (std::size_t i = 1; i < d.samples_.size(); ++i) {
        const auto& [s0, g0] = d.samples_[i - 1];
        const auto& [s1, g1] = d.samples_[i];
        d.cum_[i] = d.cum_[i - 1] + 0.5 * (s1 - s0) * (g0 + g1);
    }
    return d;
}

double Datum::cumulative(double s) const {
    if (s < 0.0) throw std::domain_error("cumulative: s must be >= 0");
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::PowerLaw:
            return c_ * std::pow(s, p_ + 1.0) / (p_ + 1.0);
        case Kind::Indicator:
            return c_ * std::max(0.0, std::min(s, b_) - a_);
        case Kind::Tabulated: {
            if (s <= samples_.front().first) return 0.0;
            if (s > samples_.back().first) {
                std::ostringstream os;
                os << "tabulated datum queried at s=" << s << " beyond last sample s="
                   << samples_.back().first;
                throw ExtrapolationError(os.str());
            }
            auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                                       [](double v, const auto& p) { return v < p.first; });
            const std::size_t i = static_cast<std::size_t>(it - samples_.begin());
            const double s0 = samples_[i - 1].first, s1 = samples_[i].first;
            const double w = (s - s0) / (s1 - s0);
            return cum_[i - 1] + w * (cum_[i] - cum_[i - 1]);
        }
    }
    return 0.0;
}

double Datum::value(double s) const {
    if (s < 0.0) throw std::domain_error("value: s must be >= 0");
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::PowerLaw:
            return c_ * std::pow(s, p_);
        case Kind::Indicator:
            return (s >= a_ && s <= b_) ? c_ : 0.0;
        case Kind::Tabulated: {
            if (s < samples_.front().first) return 0.0;
            if (s > samples_.back().first)
                throw ExtrapolationError("tabulated datum queried beyond sample range");
            auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                                       [](double v, const auto& p) { return v < p.first; });
            if (it == samples_.end()) return samples_.back().second;
            const std::size_t i = static_cast<std::size_t>(it - samples_.begin());
            if (i == 0) return samples_.front().second;
            const double s0 = samples_[i - 1].first, s1 = samples_[i].first;
            const double w = (s - s0) / (s1 - s0);
            return samples_[i - 1].second + w * (samples_[i].second - samples_[i - 1].second);
        }
    }
    return 0.0;
}

double Datum::scaled_total() const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::PowerLaw: return cumulative(1.0);
        case Kind::Indicator: return c_ * (b_ - a_);
        case Kind::Tabulated: return cum_.back();
    }
    return 0.0;
}

bool Datum::nonnegative() const {
    switch (kind_) {
        case Kind::Zero: return true;
        case Kind::PowerLaw: return c_ >= 0.0;
        case Kind::Indicator: return c_ >= 0.0;
        case Kind::Tabulated:
            return std::all_of(samples_.begin(), samples_.end(),
                               [](const auto& p) { return p.second >= 0.0; });
    }
    return false;
}

Datum Datum::scaled(double factor) const {
    Datum d = *this;
    d.c_ *= factor;
    for (auto& [s, g] : d.samples_) g *= factor;
    for (auto& c : d.cum_) c *= factor;
    return d;
}

ProblemSpec::ProblemSpec(int k_, int N_, double lambda_, Boundary b_, Datum d_)
    : k(k_), N(N_), lambda(lambda_), boundary(b_), datum(std::move(d_)) {
    if (!(2 <= k && k <= N && N >= 2)) throw std::domain_error("ProblemSpec: need 2 <= k <= N");
    if (!std::isfinite(lambda)) throw std::domain_error("ProblemSpec: lambda must be finite");
}

namespace {
double binom(int n, int r) {
    double v = 1.0;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}
} // namespace

Coefficients coefficients(int k, int N) {
    if (!(2 <= k && k <= N))
        throw std::domain_error("coefficients: need 2 <= k <= N");
    Coefficients c{};
    c.gamma = static_cast<double>(3 - k) / (k - 1);
    c.alpha = binom(N - 1, k - 1) / k;
    c.b1 = N - 2 - 2.0 * c.gamma;
    c.b0 = N - 1 + c.gamma * (N - 2) - c.gamma * c.gamma;
    // roots of mu^2 - b1 mu - b0; the discriminant b1^2 + 4 b0 collapses to N^2
    c.mu_plus = 0.5 * (c.b1 + N);
    c.mu_minus = 0.5 * (c.b1 - N);
    return c;
}

double forcing_F(double t, const ProblemSpec& spec) {
    const Coefficients c = coefficients(spec.k, spec.N);
    const double s = std::exp(-t);
    return std::exp((spec.N - 3 - c.gamma) * t) * spec.datum.cumulative(s);
}

PlanarState vector_field(const PlanarState& state, double t, const ProblemSpec& spec) {
    if (!std::isfinite(state[0]) || !std::isfinite(state[1]))
        throw std::domain_error("vector_field: non-finite state");
    const Coefficients c = coefficients(spec.k, spec.N);
    const double z = state[0], y = state[1];
    double zk = z;
    for (int i = 1; i < spec.k; ++i) zk *= z;
    double dy = c.b1 * y + c.b0 * z - c.alpha * zk;
    if (spec.lambda != 0.0) dy -= spec.lambda * forcing_F(t, spec);
    return {y, dy};
}

std::function<PlanarState(double, const PlanarState&)> make_field(const ProblemSpec& spec) {
    const Coefficients c = coefficients(spec.k, spec.N);
    const int k = spec.k;
    if (spec.lambda == 0.0) {
        return [c, k](double, const PlanarState& s) -> PlanarState {
            const double z = s[0], y = s[1];
            double zk = z;
            for (int i = 1; i < k; ++i) zk *= z;
            return {y, c.b1 * y + c.b0 * z - c.alpha * zk};
        };
    }
    const ProblemSpec sp = spec;
    return [c, k, sp](double t, const PlanarState& s) -> PlanarState {
        const double z = s[0], y = s[1];
        double zk = z;
        for (int i = 1; i < k; ++i) zk *= z;
        return {y, c.b1 * y + c.b0 * z - c.alpha * zk - sp.lambda * forcing_F(t, sp)};
    };
}

namespace {
// e^{(N-3)t} G(e^{-t}) along a log-spaced grid; the clamp treats data beyond
// the last tabulated sample as exhausted mass (compact-support reading).
double w_level_expr(const Datum& d, int N, double t) {
    const double s = std::exp(-t);
    double G;
    try {
        G = d.cumulative(s);
    } catch (const ExtrapolationError&) {
        G = d.scaled_total();
    }
    return std::exp((N - 3) * t) * G;
}
} // namespace

AssumptionReport assumption_check(const Datum& datum, int N, Boundary boundary) {
    AssumptionReport rep;
    std::ostringstream w;
    switch (datum.kind()) {
        case Datum::Kind::Zero:
            rep.holds = true;
            rep.witness = "zero datum";
            return rep;
        case Datum::Kind::PowerLaw: {
            // expression = c/(p+1) e^{(N-4-p) t}
            const double e = N - 4 - datum.exponent();
            const bool plus_ok = datum.amplitude() == 0.0 || e < 0.0;
            if (boundary != Boundary::Entire) {
                rep.holds = plus_ok;
                w << "exponent N-3-(p+1) = " << e << (plus_ok ? " < 0" : " >= 0");
            } else {
                // t -> -inf needs e > 0; a power law cannot satisfy both
                const bool minus_ok = datum.amplitude() == 0.0 || e > 0.0;
                rep.holds = plus_ok && minus_ok;
                w << "exponent N-4-p = " << e << "; needs < 0 at +inf and > 0 at -inf";
            }
            rep.witness = w.str();
            return rep;
        }
        case Datum::Kind::Indicator: {
            // G(e^{-t}) vanishes once e^{-t} < a, so the +inf limit holds
            // whenever a > 0; for a = 0, G(e^{-t}) ~ c e^{-t}.
            const bool plus_ok = datum.interval_a() > 0.0 || datum.amplitude() == 0.0 || N < 4;
            if (boundary != Boundary::Entire) {
                rep.holds = plus_ok;
                w << (datum.interval_a() > 0.0 ? "support starts at a > 0"
                                               : "a = 0: behaves like e^{(N-4)t}");
            } else {
                const bool minus_ok = N > 3 || datum.amplitude() == 0.0;
                rep.holds = plus_ok && minus_ok;
                w << "bounded mass: -inf limit needs N > 3 (N = " << N << ")";
            }
            rep.witness = w.str();
            return rep;
        }
        case Datum::Kind::Tabulated:
            break;
    }
    // numeric probe for tabulated data
    auto probe = [&](double sign) {
        std::vector<double> ts, vals;
        for (double t = 0.25; t <= 40.0; t *= 1.25) {
            ts.push_back(sign * t);
            vals.push_back(std::abs(w_level_expr(datum, N, sign * t)));
        }
        // last-decade samples (|t| in [30, 40]-ish range)
        bool nonincreasing = true;
        std::size_t i0 = vals.size() >= 4 ? vals.size() - 4 : 0;
        for (std::size_t i = i0 + 1; i < vals.size(); ++i)
            if (vals[i] > vals[i - 1] + 1e-15) nonincreasing = false;
        const double last = vals.back();
        if (last < 1e-6 && nonincreasing) return 1;   // decays
        if (last > 1e-6 && !nonincreasing) return -1; // grows
        return 0;                                     // unclear
    };
    const int plus = probe(+1.0);
    const int minus = (boundary == Boundary::Entire) ? probe(-1.0) : 1;
    if (plus == 1 && minus == 1) {
        rep.holds = true;
        rep.witness = "sampled expression decays below 1e-6 on the last decade (t <= 40)";
    } else if (plus == -1 || minus == -1) {
        rep.holds = false;
        rep.witness = "sampled expression grows on the last decade";
    } else {
        rep.holds = false;
        rep.inconclusive = true;
        rep.witness = "sampled expression neither clearly decays nor grows";
    }
    return rep;
}

void require_supported_order(int k) {
    if (k != 2 && k != 3)
        throw std::domain_error("unsupported order: nonlinear analysis covers k in {2, 3}");
}

} // namespace khessian

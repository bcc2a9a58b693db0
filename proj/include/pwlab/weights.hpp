#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pwlab/errors.hpp"

namespace pwlab {

enum class WeightKind { Log, Power };

struct WeightFlags {
    bool subadditive = false;
    bool satisfiesBmm = false;
    std::optional<double> bmmH;
};

/// Non-quasianalytic weight: log(1+t) or t^a with 0 < a < 1.
class WeightFunction {
public:
    static WeightFunction logWeight() {
        WeightFunction w;
        w.kind_ = WeightKind::Log;
        w.gammaA_ = 0.0;
        w.gammaB_ = 1.0;
        w.alphaL_ = 1.0;
        w.flags_ = {true, false, std::nullopt};
        return w;
    }

    static WeightFunction powerWeight(double a) {
        if (!(a > 0.0 && a < 1.0)) throw DomainError("power weight exponent must lie in (0,1)");
        WeightFunction w;
        w.kind_ = WeightKind::Power;
        w.a_ = a;
        // t^a - log(1+t) is minimized where a t^(a-1) (1+t) = 1.
        double lo = 0.0;
        for (double t = 1e-6; t < 1e7; t *= 1.01) lo = std::min(lo, std::pow(t, a) - std::log1p(t));
        w.gammaA_ = lo - 1e-9;
        w.gammaB_ = 1.0;
        w.alphaL_ = std::pow(2.0, a);
        double h = std::pow(2.0, 1.0 / a);
        w.flags_ = {true, true, h};
        return w;
    }

    WeightKind kind() const { return kind_; }
    double exponent() const { return a_; }
    double gammaA() const { return gammaA_; }
    double gammaB() const { return gammaB_; }
    double alphaConstant() const { return alphaL_; }
    const WeightFlags& flags() const { return flags_; }

    std::string id() const {
        if (kind_ == WeightKind::Log) return "log";
        char buf[64];
        std::snprintf(buf, sizeof buf, "power:%.17g", a_);
        return buf;
    }

    /// omega(t) for scalar t >= 0.
    double operator()(double t) const {
        if (!(t >= 0.0)) throw DomainError("weight evaluated at a negative or NaN argument");
        return eval(t);
    }

    /// omega(|z|) with the Euclidean norm.
    double operator()(std::span<const double> z) const {
        double s = 0.0;
        for (double v : z) {
            if (!std::isfinite(v)) throw DomainError("weight evaluated at a non-finite point");
            s += v * v;
        }
        return eval(std::sqrt(s));
    }

    /// phi(t) = omega(e^t), evaluated without overflow for large t.
    double phi(double t) const {
        if (kind_ == WeightKind::Log) return t > 30.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
        return std::exp(a_ * t);
    }

    /// Asymptotic slope of phi; the conjugate diverges beyond it.
    double phiSlopeLimit() const {
        return kind_ == WeightKind::Log ? 1.0 : std::numeric_limits<double>::infinity();
    }

private:
    WeightFunction() = default;
    double eval(double t) const { return kind_ == WeightKind::Log ? std::log1p(t) : std::pow(t, a_); }

    WeightKind kind_ = WeightKind::Log;
    double a_ = 0.0;
    double gammaA_ = 0.0;
    double gammaB_ = 1.0;
    double alphaL_ = 1.0;
    WeightFlags flags_;
};

struct ConditionReport {
    bool alpha = false;
    double alphaWitnessL = 0.0;
    bool beta = false;
    double betaIntegral = 0.0;   // quadrature on [1, grid max]
    double betaTailBound = 0.0;  // bound on the remaining tail
    double betaTotal = 0.0;
    bool gamma = false;
    double gammaA = 0.0;
    double gammaB = 0.0;
    bool delta = false;
    double deltaMinSecondDifference = 0.0;
    bool subadditive = false;
    bool bmm = false;
    double bmmH = 0.0;

    bool allAxioms() const { return alpha && beta && gamma && delta; }
};

namespace detail {

inline double simpson(auto&& f, double a, double b, int panels) {
    if (panels % 2) ++panels;
    double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Smallest H in a geometric candidate list with 2w(t) <= w(Ht) + H on the points.
inline std::optional<double> minimalBmmH(const WeightFunction& w, const std::vector<double>& pts) {
    for (double h = 1.001; h < 1e4; h *= 1.001) {
        bool ok = true;
        for (double t : pts)
            if (2.0 * w(t) > w(h * t) + h + 1e-12) {
                ok = false;
                break;
            }
        if (ok) return h;
    }
    return std::nullopt;
}

}  // namespace detail

/// Grid certificates for the weight axioms, subadditivity and (bmm).
inline ConditionReport checkWeightConditions(const WeightFunction& w, const std::vector<double>& grid) {
    if (grid.size() < 100) throw ParameterError("condition grid needs at least 100 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ParameterError("condition grid must be strictly increasing");
    if (grid.front() < 0.0 || grid.front() > 1.0 || grid.back() < 1e6)
        throw ParameterError("condition grid must span [0, 1e6]");

    ConditionReport r;
    const double tmax = grid.back();

    double L = 0.0;
    for (double t : grid) L = std::max(L, w(2.0 * t) / (w(t) + 1.0));
    r.alphaWitnessL = L;
    r.alpha = std::isfinite(L) && L <= std::max(1.0, w.alphaConstant()) * (1.0 + 1e-12);

    // Integral of w(t)/t^2 on [1, tmax] with t = e^u.
    r.betaIntegral = detail::simpson([&](double u) { return w(std::exp(u)) * std::exp(-u); }, 0.0, std::log(tmax),
                                     200000);
    // Tail: local growth exponent c on the last decade; w(t) <= w(T)(t/T)^c gives w(T)/(T(1-c)).
    double c = std::log(w(tmax) / w(tmax / 10.0)) / std::log(10.0);
    r.betaTailBound = c < 1.0 ? w(tmax) / (tmax * (1.0 - c)) : std::numeric_limits<double>::infinity();
    r.betaTotal = r.betaIntegral + r.betaTailBound;
    r.beta = std::isfinite(r.betaTotal);

    // (gamma): b = min(1, w/log(1+t) at the top of the grid), a = min of w - b log(1+t).
    double b = std::min(1.0, w(tmax) / std::log1p(tmax));
    double a = std::numeric_limits<double>::infinity();
    for (double t : grid) a = std::min(a, w(t) - b * std::log1p(t));
    r.gammaA = a;
    r.gammaB = b;
    r.gamma = b > 0.0 && std::isfinite(a);

    // (delta): convexity of u -> w(e^u) on the log-grid.
    std::vector<double> us, ph;
    for (double t : grid)
        if (t > 0.0) {
            us.push_back(std::log(t));
            ph.push_back(w.phi(std::log(t)));
        }
    double minDd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < us.size(); ++i) {
        double d1 = (ph[i] - ph[i - 1]) / (us[i] - us[i - 1]);
        double d2 = (ph[i + 1] - ph[i]) / (us[i + 1] - us[i]);
        double scale = std::max({1.0, std::abs(d1), std::abs(d2)});
        minDd = std::min(minDd, (d2 - d1) / scale);
    }
    r.deltaMinSecondDifference = minDd;
    r.delta = minDd >= -1e-9;

    // Subadditivity on a subsample of pairs.
    std::vector<double> sub;
    std::size_t step = std::max<std::size_t>(1, grid.size() / 200);
    for (std::size_t i = 0; i < grid.size(); i += step) sub.push_back(grid[i]);
    bool sa = true;
    for (double s : sub)
        for (double t : sub)
            if (w(s + t) > w(s) + w(t) + 1e-12 * (1.0 + w(s + t))) sa = false;
    r.subadditive = sa;

    // (bmm): H must not grow with the tested range.
    std::vector<double> lower;
    for (double t : sub)
        if (t <= 1e3) lower.push_back(t);
    if (w.flags().bmmH) {
        double h = *w.flags().bmmH;
        bool ok = true;
        for (double t : sub)
            if (2.0 * w(t) > w(h * t) + h + 1e-12) ok = false;
        r.bmm = ok;
        r.bmmH = h;
    } else {
        auto hLow = detail::minimalBmmH(w, lower);
        auto hAll = detail::minimalBmmH(w, sub);
        r.bmm = hLow && hAll && *hAll <= *hLow * 1.01;
        r.bmmH = hAll.value_or(std::numeric_limits<double>::infinity());
    }
    return r;
}

/// Dense default grid for checkWeightConditions: 0 plus log-spaced points up to 1e6.
inline std::vector<double> defaultConditionGrid(std::size_t points = 2000) {
    std::vector<double> g{0.0};
    double lo = std::log(1e-4), hi = std::log(1e6);
    for (std::size_t i = 0; i + 1 < points; ++i) g.push_back(std::exp(lo + (hi - lo) * i / (points - 2)));
    g.back() = 1e6;
    return g;
}

/// lambda * phi^*(s / lambda) with phi^*(sigma) = sup_{t>=0} (sigma t - phi(t)).
/// Returns +inf when the supremum diverges.
inline double scaledYoungConjugate(const WeightFunction& w, double lambda, double s) {
    if (!(lambda > 0.0)) throw DomainError("Young conjugate needs lambda > 0");
    if (!(s >= 0.0)) throw DomainError("Young conjugate needs s >= 0");
    const double sigma = s / lambda;
    if (sigma > w.phiSlopeLimit()) return std::numeric_limits<double>::infinity();
    auto g = [&](double t) { return sigma * t - w.phi(t); };

    // phi convex, so g is concave; bracket the maximizer.
    double hi = 1.0;
    const double tCap = 700.0;
    while (hi < tCap && (w.phi(hi) - w.phi(hi * 0.5)) / (hi * 0.5) < sigma) hi *= 2.0;
    if (hi >= tCap) {
        // Still ascending at the cap: either the supremum is approached at infinity
        // (slope equal to the asymptotic one) or it diverges.
        double gain = g(tCap) - g(tCap * 0.5);
        if (gain > 1e-9) return std::numeric_limits<double>::infinity();
        return lambda * g(tCap);
    }
    double lo = 0.0;
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (g(m1) < g(m2))
            lo = m1;
        else
            hi = m2;
    }
    double best = std::max(g(0.5 * (lo + hi)), g(0.0));
    return lambda * best;
}

/// Tabulated lambda phi^*(s/lambda).
struct YoungConjugateTable {
    double lambda = 1.0;
    std::string weightId;
    std::vector<std::pair<double, double>> samples;
};

inline YoungConjugateTable makeYoungConjugateTable(const WeightFunction& w, double lambda,
                                                   const std::vector<double>& sValues) {
    YoungConjugateTable t;
    t.lambda = lambda;
    t.weightId = w.id();
    for (double s : sValues) t.samples.emplace_back(s, scaledYoungConjugate(w, lambda, s));
    return t;
}

}  // namespace pwlab

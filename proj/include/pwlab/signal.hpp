#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "pwlab/errors.hpp"
#include "pwlab/fft.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/log_magnitude.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/weights.hpp"

namespace pwlab {

/// Spectral coefficients below this fraction of the peak are FFT roundoff and get zeroed
/// before any growing multiplier is applied.
inline constexpr double kSpectralNoiseFloor = 1e-13;
/// Largest admissible edge-to-peak ratio of a multiplied spectrum.
inline constexpr double kNyquistTolerance = 1e-8;
/// Largest admissible edge-to-peak ratio of a spectrum that is about to be differentiated.
inline constexpr double kSpectrumDecayTolerance = 1e-12;

namespace detail {

inline double checkerSign(std::size_t i) { return (i & 1u) ? -1.0 : 1.0; }

inline double flatSign(const GridSpec& g, std::size_t i) {
    if (g.dim == 1) return checkerSign(i);
    return checkerSign(i / g.points + i % g.points);
}

inline void rawTransform(const GridSpec& g, std::vector<cplx>& a, fft::Direction dir) {
    if (g.dim == 1)
        fft::transform1d(a.data(), g.points, dir);
    else
        fft::transform2d(a.data(), g.points, g.points, dir);
}

// f-hat(xi_k) = Delta^d (-1)^k DFT[(-1)^j f_j]_k; valid because N/2 is even.
inline std::vector<cplx> forwardSamples(const GridSpec& g, std::vector<cplx> a) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= flatSign(g, i);
    rawTransform(g, a, fft::Direction::Forward);
    const double cell = g.cellVolume();
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= cell * flatSign(g, i);
    return a;
}

// f(x_j) = (dxi/2pi)^d (-1)^j IDFT[(-1)^k F_k]_j with dxi the spacing of the frequency grid fg.
inline std::vector<cplx> inverseSamples(const GridSpec& fg, std::vector<cplx> a) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= flatSign(fg, i);
    rawTransform(fg, a, fft::Direction::Backward);
    const double c = std::pow(fg.spacing() / (2.0 * std::numbers::pi), fg.dim);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= c * flatSign(fg, i);
    return a;
}

inline double shellMaxRatio(const GridSamples& f, const std::vector<double>& logAbs) {
    const double edge = 0.95 * f.grid.halfWidth;
    double mx = -std::numeric_limits<double>::infinity(), shell = mx;
    for (std::size_t i = 0; i < f.size(); ++i) {
        mx = std::max(mx, logAbs[i]);
        if (f.supNormCoord(i) >= edge) shell = std::max(shell, logAbs[i]);
    }
    if (mx == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(shell - mx);
}

}  // namespace detail

/// Fourier transform f-hat(xi) = int f(x) e^{-i<x,xi>} dx by the Riemann sum on the grid.
inline Spectrum forwardFT(const SampledFunction& f) {
    requireBoundaryDecay(f, "forwardFT");
    return Spectrum(f.grid.frequencyGrid(), detail::forwardSamples(f.grid, f.samples));
}

/// Inverse transform f(x) = (2pi)^{-d} int F(xi) e^{i<x,xi>} dxi.
inline SampledFunction inverseFT(const Spectrum& F) {
    for (const auto& v : F.samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DataError("inverseFT: non-finite sample");
    return SampledFunction(F.grid.frequencyGrid(), detail::inverseSamples(F.grid, F.samples));
}

/// Zeroes coefficients with |F| < relFloor * max|F|.
inline Spectrum filterSpectrum(const Spectrum& F, double relFloor = kSpectralNoiseFloor) {
    Spectrum out = F;
    const double cut = relFloor * F.maxAbs();
    for (auto& v : out.samples)
        if (std::abs(v) < cut) v = 0.0;
    return out;
}

/// Result of a multiplier application: the true function is f * 2^exponent.
struct ScaledFunction {
    SampledFunction f;
    int exponent = 0;
};

/// Applies m(xi) = exp(logMod(i) + i*phase(i)) to F and transforms back. The product is
/// rescaled by a power of two so that its peak is O(1). Throws NyquistError when the
/// product is not negligible on the outer 5% shell of the frequency grid.
template <class LogModulus, class Phase>
ScaledFunction applySpectralMultiplier(const Spectrum& F, LogModulus&& logMod, Phase&& phase, const char* who) {
    const std::size_t n = F.size();
    std::vector<double> la(n);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::abs(F[i]);
        la[i] = a > 0.0 ? std::log(a) + logMod(i) : -std::numeric_limits<double>::infinity();
        if (std::isnan(la[i])) throw DataError(std::string(who) + ": multiplier is not a number");
        mx = std::max(mx, la[i]);
    }
    if (mx == -std::numeric_limits<double>::infinity())
        return {SampledFunction(F.grid.frequencyGrid()), 0};
    double edge = detail::shellMaxRatio(F, la);
    if (edge > kNyquistTolerance) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s: multiplied spectrum reaches %.3e of its peak at the Nyquist edge", who,
                      edge);
        throw NyquistError(edge, buf);
    }
    const int e = static_cast<int>(std::floor(mx / std::numbers::ln2));
    std::vector<cplx> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (la[i] == -std::numeric_limits<double>::infinity()) continue;
        double mag = std::exp(la[i] - e * std::numbers::ln2);
        g[i] = std::polar(mag, std::arg(F[i]) + phase(i));
    }
    return {SampledFunction(F.grid.frequencyGrid(), detail::inverseSamples(F.grid, std::move(g))), e};
}

/// Throws NyquistError when F itself has not decayed before the Nyquist edge.
inline void requireSpectrumDecay(const Spectrum& F, const char* who) {
    std::vector<double> la(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) la[i] = std::log(std::abs(F[i]));
    double edge = detail::shellMaxRatio(F, la);
    if (edge > kSpectrumDecayTolerance) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s: spectrum is %.3e of its peak at the Nyquist edge", who, edge);
        throw NyquistError(edge, buf);
    }
}

/// log|xi^alpha| and arg(xi^alpha) at flat index i of a frequency grid.
struct MonomialSymbol {
    const GridSamples* grid;
    int alpha[2] = {0, 0};

    double logModulus(std::size_t i) const {
        double c[2];
        grid->coords(i, c);
        double s = 0.0;
        for (int a = 0; a < grid->grid.dim; ++a)
            if (alpha[a] > 0) s += alpha[a] * std::log(std::abs(c[a]));
        return s;
    }
    double phase(std::size_t i) const {
        double c[2];
        grid->coords(i, c);
        int neg = 0;
        for (int a = 0; a < grid->grid.dim; ++a)
            if (c[a] < 0.0) neg += alpha[a];
        return (neg & 1) ? std::numbers::pi : 0.0;
    }
};

/// Multi-index with dim entries.
using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

/// D^alpha on a filtered spectrum, returned with its power-of-two scale.
inline ScaledFunction derivativeScaled(const Spectrum& filtered, const MultiIndex& alpha) {
    if (static_cast<int>(alpha.size()) != filtered.grid.dim) throw ParameterError("multi-index length must equal dim");
    MonomialSymbol m{&filtered, {}};
    for (int a = 0; a < filtered.grid.dim; ++a) {
        if (alpha[a] < 0) throw ParameterError("multi-index entries must be non-negative");
        m.alpha[a] = alpha[a];
    }
    return applySpectralMultiplier(
        filtered, [&](std::size_t i) { return m.logModulus(i); }, [&](std::size_t i) { return m.phase(i); },
        "spectralDerivative");
}

inline constexpr int kDefaultMaxOrder = 64;

/// D^alpha f = F^{-1}[xi^alpha f-hat] with D_j = -i d/dx_j.
inline SampledFunction spectralDerivative(const SampledFunction& f, const MultiIndex& alpha,
                                          int maxOrder = kDefaultMaxOrder) {
    if (order(alpha) > maxOrder) throw ParameterError("derivative order exceeds the configured maximum");
    Spectrum F = forwardFT(f);
    requireSpectrumDecay(filterSpectrum(F), "spectralDerivative");
    if (order(alpha) == 0) return f;
    ScaledFunction s = derivativeScaled(filterSpectrum(F), alpha);
    for (auto& v : s.f.samples) v = std::ldexp(1.0, s.exponent) * v;
    return s.f;
}

/// e^{strength * omega((|x|/(shrink+1))^{1/rootDegree})} with Euclidean |x|.
struct SpatialWeight {
    const WeightFunction* weight = nullptr;
    double strength = 0.0;
    int shrink = 0;
    int rootDegree = 1;

    double logFactor(double r) const {
        if (weight == nullptr || strength == 0.0) return 0.0;
        double t = r / (shrink + 1.0);
        if (rootDegree != 1) t = std::pow(t, 1.0 / rootDegree);
        return strength * (*weight)(t);
    }
};

inline void requireFinite(const GridSamples& f, const char* who) {
    for (const auto& v : f.samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DataError(std::string(who) + ": non-finite sample");
}

inline void requireExponent(double p, const char* who) {
    if (!(p >= 1.0)) throw ParameterError(std::string(who) + ": exponent must be in [1, inf]");
}

/// log ||e^{weight} f||_{L^p} with Riemann cell Delta^d, in the log domain.
inline LogMagnitude weightedLpNorm(const GridSamples& f, double p, const SpatialWeight& sw) {
    requireExponent(p, "weightedLpNorm");
    requireFinite(f, "weightedLpNorm");
    if (sw.strength < 0.0) throw ParameterError("weightedLpNorm: weight strength must be >= 0");
    LogLpAccumulator acc(p, std::log(f.grid.cellVolume()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        double a = std::abs(f[i]);
        if (a == 0.0) continue;
        acc.add(std::log(a) + sw.logFactor(f.euclidCoord(i)));
    }
    return LogMagnitude::fromLog(acc.result());
}

inline LogMagnitude weightedLpNorm(const GridSamples& f, double p, const WeightFunction& w, double lambda,
                                   int shrink) {
    return weightedLpNorm(f, p, SpatialWeight{&w, lambda, shrink, 1});
}

inline LogMagnitude lpNorm(const GridSamples& f, double p) { return weightedLpNorm(f, p, SpatialWeight{}); }

enum class TransformKind { STFT, Wigner, Ambiguity };

inline const char* kindName(TransformKind k) {
    switch (k) {
        case TransformKind::STFT: return "stft";
        case TransformKind::Wigner: return "wigner";
        case TransformKind::Ambiguity: return "ambiguity";
    }
    return "?";
}

/// Samples F(x_i, xi_k) on a product grid (d = 1), stored x-major.
struct TimeFreqField {
    GridSpec xGrid;
    GridSpec xiGrid;
    std::vector<cplx> samples;
    TransformKind kind = TransformKind::STFT;

    std::size_t nx() const { return xGrid.points; }
    std::size_t nxi() const { return xiGrid.points; }
    cplx& at(std::size_t i, std::size_t k) { return samples[i * nxi() + k]; }
    const cplx& at(std::size_t i, std::size_t k) const { return samples[i * nxi() + k]; }
    double maxAbs() const {
        double m = 0.0;
        for (const auto& v : samples) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Weight along one axis of a time-frequency field:
/// strength * omega(|c|/(shrink+1)) + moment * log|c|.
struct AxisWeight {
    const WeightFunction* weight = nullptr;
    double strength = 0.0;
    int shrink = 0;
    int moment = 0;

    double logFactor(double c) const {
        double s = 0.0;
        if (weight != nullptr && strength != 0.0) s += strength * (*weight)(std::abs(c) / (shrink + 1.0));
        if (moment > 0) s += moment * std::log(std::abs(c));
        return s;
    }
};

/// Weight e^{strength * omega(|(x, xi)|)} on the joint variable.
struct JointWeight {
    const WeightFunction* weight = nullptr;
    double strength = 0.0;
};

/// log|F| stored xi-major (contiguous along x); -inf marks zero samples.
struct LogAbsField {
    GridSpec xGrid;
    GridSpec xiGrid;
    std::vector<double> logAbs;

    explicit LogAbsField(const TimeFreqField& F) : xGrid(F.xGrid), xiGrid(F.xiGrid), logAbs(F.samples.size()) {
        const std::size_t nx = F.nx(), nk = F.nxi();
        for (const auto& v : F.samples)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DataError("mixedLpqNorm: non-finite sample");
        parallelFor(nk, [&](std::size_t k) {
            for (std::size_t i = 0; i < nx; ++i) {
                double a = std::abs(F.samples[i * nk + k]);
                logAbs[k * nx + i] = a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(a);
            }
        });
    }
    std::size_t nx() const { return xGrid.points; }
    std::size_t nxi() const { return xiGrid.points; }
};

/// log of (int (int |F|^p dx)^{q/p} dxi)^{1/q} with the given weights.
inline LogMagnitude mixedLpqNorm(const LogAbsField& F, double p, double q, const AxisWeight& xw = {},
                                 const AxisWeight& xiw = {}, const JointWeight& jw = {}) {
    requireExponent(p, "mixedLpqNorm");
    requireExponent(q, "mixedLpqNorm");
    const std::size_t nx = F.nx(), nk = F.nxi();
    std::vector<double> xf(nx), kf(nk);
    for (std::size_t i = 0; i < nx; ++i) xf[i] = xw.logFactor(F.xGrid.coord(i));
    for (std::size_t k = 0; k < nk; ++k) kf[k] = xiw.logFactor(F.xiGrid.coord(k));
    const bool joint = jw.weight != nullptr && jw.strength != 0.0;
    const double logDx = std::log(F.xGrid.spacing());
    std::vector<double> inner(nk);
    parallelFor(nk, [&](std::size_t k) {
        LogLpAccumulator acc(p, logDx);
        const double xiCoord = F.xiGrid.coord(k);
        const double* col = F.logAbs.data() + k * nx;
        for (std::size_t i = 0; i < nx; ++i) {
            if (col[i] == -std::numeric_limits<double>::infinity()) continue;
            double t = col[i] + xf[i];
            if (joint) t += jw.strength * (*jw.weight)(std::hypot(F.xGrid.coord(i), xiCoord));
            acc.add(t);
        }
        inner[k] = acc.result() + kf[k];
    });
    LogLpAccumulator outer(q, std::log(F.xiGrid.spacing()));
    for (std::size_t k = 0; k < nk; ++k) outer.add(inner[k]);
    return LogMagnitude::fromLog(outer.result());
}

inline LogMagnitude mixedLpqNorm(const TimeFreqField& F, double p, double q, const AxisWeight& xw = {},
                                 const AxisWeight& xiw = {}, const JointWeight& jw = {}) {
    return mixedLpqNorm(LogAbsField(F), p, q, xw, xiw, jw);
}

/// Largest |xi|_inf with |F(xi)| >= tau * max|F| (tau = 0: every nonzero sample). Zero spectrum gives 0.
inline double supportRadiusSupNorm(const GridSamples& F, double tau = 1e-8) {
    const double mx = F.maxAbs();
    if (mx == 0.0) return 0.0;
    double r = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        double a = std::abs(F[i]);
        if ((tau > 0.0 && a >= tau * mx) || (tau == 0.0 && a > 0.0)) r = std::max(r, F.supNormCoord(i));
    }
    return r;
}

/// Per-axis extent [lo, hi] of the detected support.
struct SupportExtent {
    std::vector<double> lo;
    std::vector<double> hi;
};

inline SupportExtent supportExtent(const GridSamples& F, double tau = 1e-8) {
    const int d = F.grid.dim;
    SupportExtent e{std::vector<double>(d, std::numeric_limits<double>::infinity()),
                    std::vector<double>(d, -std::numeric_limits<double>::infinity())};
    const double mx = F.maxAbs();
    if (mx == 0.0) return {std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    double c[2];
    for (std::size_t i = 0; i < F.size(); ++i) {
        double a = std::abs(F[i]);
        if (!((tau > 0.0 && a >= tau * mx) || (tau == 0.0 && a > 0.0))) continue;
        F.coords(i, c);
        for (int ax = 0; ax < d; ++ax) {
            e.lo[ax] = std::min(e.lo[ax], c[ax]);
            e.hi[ax] = std::max(e.hi[ax], c[ax]);
        }
    }
    return e;
}

}  // namespace pwlab

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pwlab/errors.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/log_magnitude.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/signal.hpp"
#include "pwlab/transforms.hpp"
#include "pwlab/weights.hpp"

namespace pwlab {

enum class Method { DerivativeGrowth, WignerXiMoment, WignerXMoment, GaborMoment, PolyIterate };

inline const char* methodName(Method m) {
    switch (m) {
        case Method::DerivativeGrowth: return "derivative";
        case Method::WignerXiMoment: return "wigner-xi";
        case Method::WignerXMoment: return "wigner-x";
        case Method::GaborMoment: return "gabor";
        case Method::PolyIterate: return "poly";
    }
    return "?";
}

enum class TruncationReason { Cap, NoiseFloor };

inline const char* truncationName(TruncationReason r) { return r == TruncationReason::Cap ? "cap" : "noise-floor"; }

struct SequenceEntry {
    int n = 0;
    LogMagnitude logNorm;
};

struct SequenceParams {
    double p = 2.0;
    double q = 2.0;
    double lambda = 0.0;
    double mu = 0.0;
    std::string weightId;
    std::string windowId;
    std::string symbolId;
};

/// log-norms whose n-th roots approach a spectral radius.
struct RadiusSequence {
    Method method = Method::DerivativeGrowth;
    std::vector<SequenceEntry> entries;
    SequenceParams params;
    int nUsed = 0;
    TruncationReason reason = TruncationReason::Cap;
    bool zeroInput = false;

    double root(std::size_t i) const { return std::exp(entries[i].logNorm.log() / entries[i].n); }
    double ratio(std::size_t i) const { return std::exp(entries[i].logNorm.log() - entries[i - 1].logNorm.log()); }
};

struct RadiusEstimate {
    double rootLimit = 0.0;   // model fit of log a_n = L_n / n
    double ratioLimit = 0.0;  // model fit of log(a_{n+1}/a_n) = L_{n+1} - L_n
    double richardson = 0.0;  // Aitken delta^2 on the last three roots
    double lastRoot = 0.0;
    double lastRatio = 0.0;
    double oracle = std::numeric_limits<double>::quiet_NaN();
    double relErrRoot = std::numeric_limits<double>::quiet_NaN();
    double relErrRatio = std::numeric_limits<double>::quiet_NaN();
    bool divergent = false;
    double ratioGrowthSlope = 0.0;  // d log(ratio) / d log n over the last entries
    int entriesUsed = 0;
};

/// Relative size of amplified roundoff below which an entry is retained.
inline constexpr double kNoiseFloorTolerance = 1e-6;
/// Divergence: roots increasing over the last entries and ratios growing like a power of n.
inline constexpr int kDivergenceWindow = 10;
inline constexpr double kDivergenceStep = 0.05;
inline constexpr double kDivergenceSlope = 0.35;

namespace detail {

inline std::vector<MultiIndex> multiIndices(int dim, int n) {
    std::vector<MultiIndex> out;
    if (dim == 1) {
        out.push_back({n});
    } else {
        for (int a = 0; a <= n; ++a) out.push_back({a, n - a});
    }
    return out;
}

inline void requireAdmissible(const WeightFunction* w, double lambda) {
    if (lambda < 0.0) throw ParameterError("weight strength must be >= 0");
    if (lambda > 0.0) {
        if (w == nullptr) throw ParameterError("positive weight strength needs a weight");
        if (!(w->flags().subadditive || w->flags().satisfiesBmm))
            throw UnsupportedWeightError("weight is neither subadditive nor (bmm): estimator unsupported");
    }
}

// Rms FFT roundoff estimate for coefficients of `samples`.
inline double roundoffLevel(const std::vector<cplx>& samples) {
    double s = 0.0;
    for (const auto& v : samples) s += std::norm(v);
    double rms = std::sqrt(s / static_cast<double>(samples.size()));
    return DBL_EPSILON * std::sqrt(std::log2(static_cast<double>(samples.size()))) * rms;
}

// log of sum |c_i| exp(logMult(i)) over retained coefficients, and of roundoff * sum exp(logMult(i)).
// Their difference is the relative weight of amplified roundoff in an entry.
template <class LogMult>
double noiseRatio(const std::vector<cplx>& retained, double roundoff, LogMult&& logMult) {
    LogSumAccumulator sig, noise;
    for (std::size_t i = 0; i < retained.size(); ++i) {
        double a = std::abs(retained[i]);
        if (a == 0.0) continue;
        double lm = logMult(i);
        sig.add(std::log(a) + lm);
        noise.add(lm);
    }
    if (sig.result() == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(std::log(roundoff) + noise.result() - sig.result());
}

// Index of the first n whose noise ratio exceeds the tolerance (nMax+1 if none).
inline int noiseCut(int nMax, const std::function<double(int)>& ratioAt) {
    for (int n = 0; n <= nMax; ++n)
        if (ratioAt(n) > kNoiseFloorTolerance) return n;
    return nMax + 1;
}

inline RadiusSequence finish(RadiusSequence seq, std::vector<SequenceEntry> entries, int cut, int nMax) {
    seq.entries = std::move(entries);
    seq.nUsed = static_cast<int>(seq.entries.size()) - 1;
    seq.reason = cut <= nMax ? TruncationReason::NoiseFloor : TruncationReason::Cap;
    for (const auto& e : seq.entries)
        if (!e.logNorm.isFinite()) throw DataError("sequence entry is not finite");
    return seq;
}

inline TimeFreqField filterField(TimeFreqField F, double relFloor = kSpectralNoiseFloor) {
    const double cut = relFloor * F.maxAbs();
    for (auto& v : F.samples)
        if (std::abs(v) < cut) v = 0.0;
    return F;
}

}  // namespace detail

/// Entry n: log max_{|alpha|=n} || e^{lambda omega(x/(n+1))} D^alpha f ||_{L^p}.
inline RadiusSequence derivativeGrowthSequence(const SampledFunction& f, const WeightFunction* w, double lambda,
                                               double p, int nMax) {
    detail::requireAdmissible(w, lambda);
    requireExponent(p, "derivativeGrowthSequence");
    RadiusSequence seq;
    seq.method = Method::DerivativeGrowth;
    seq.params = {p, p, lambda, 0.0, w ? w->id() : "none", "", ""};
    if (f.maxAbs() == 0.0) {
        seq.zeroInput = true;
        return seq;
    }
    const Spectrum F = forwardFT(f);
    const Spectrum Ff = filterSpectrum(F);
    const double roundoff = detail::roundoffLevel(F.samples);
    const int d = f.grid.dim;
    int cut = detail::noiseCut(nMax, [&](int n) {
        double worst = 0.0;
        for (const auto& a : detail::multiIndices(d, n)) {
            MonomialSymbol m{&Ff, {a[0], d == 2 ? a[1] : 0}};
            worst = std::max(worst, detail::noiseRatio(Ff.samples, roundoff,
                                                       [&](std::size_t i) { return m.logModulus(i); }));
        }
        return worst;
    });
    const int last = std::min(nMax, cut - 1);
    std::vector<SequenceEntry> entries(last + 1);
    parallelFor(static_cast<std::size_t>(last + 1), [&](std::size_t n) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& a : detail::multiIndices(d, static_cast<int>(n))) {
            ScaledFunction g = derivativeScaled(Ff, a);
            double l = weightedLpNorm(g.f, p, SpatialWeight{w, lambda, static_cast<int>(n), 1}).log() +
                       g.exponent * std::numbers::ln2;
            best = std::max(best, l);
        }
        entries[n] = {static_cast<int>(n), LogMagnitude::fromLog(best)};
    });
    return detail::finish(std::move(seq), std::move(entries), cut, nMax);
}

enum class MomentAxis { Xi, X };

namespace detail {

// Moment sequence of a (filtered) time-frequency field along one axis.
inline RadiusSequence fieldMomentSequence(const TimeFreqField& raw, MomentAxis axis, const WeightFunction* w,
                                          double lambda, double mu, double p, double q, int nMax, Method method) {
    requireAdmissible(w, lambda);
    requireAdmissible(w, mu);
    requireExponent(p, "moment sequence");
    requireExponent(q, "moment sequence");
    RadiusSequence seq;
    seq.method = method;
    seq.params = {p, q, lambda, mu, w ? w->id() : "none", "", ""};
    if (raw.maxAbs() == 0.0) {
        seq.zeroInput = true;
        return seq;
    }
    const TimeFreqField F = filterField(raw);
    const double roundoff = roundoffLevel(raw.samples);
    const std::size_t nk = F.nxi();
    auto coordLog = [&](std::size_t id) {
        double c = axis == MomentAxis::Xi ? F.xiGrid.coord(id % nk) : F.xGrid.coord(id / nk);
        return std::log(std::abs(c));
    };
    int cut = noiseCut(nMax, [&](int n) {
        return noiseRatio(F.samples, roundoff, [&](std::size_t id) { return n == 0 ? 0.0 : n * coordLog(id); });
    });
    const int last = std::min(nMax, cut - 1);
    std::vector<SequenceEntry> entries(last + 1);
    const LogAbsField logF(F);
    // mixedLpqNorm parallelizes internally; entries are evaluated in order.
    for (int n = 0; n <= last; ++n) {
        AxisWeight xw{w, lambda, n, axis == MomentAxis::X ? n : 0};
        AxisWeight kw{w, mu, 0, axis == MomentAxis::Xi ? n : 0};
        entries[n] = {n, mixedLpqNorm(logF, p, q, xw, kw)};
    }
    return finish(std::move(seq), std::move(entries), cut, nMax);
}

}  // namespace detail

/// Entry N: log || e^{lambda omega(x/(N+1)) + mu omega(xi)} |c|^N Wig f ||_{L^{p,q}}, c = xi or x.
inline RadiusSequence wignerMomentSequence(const TimeFreqField& wig, MomentAxis axis, const WeightFunction* w,
                                           double lambda, double mu, double p, double q, int nMax) {
    if (wig.kind != TransformKind::Wigner) throw ParameterError("wignerMomentSequence needs a Wigner field");
    return detail::fieldMomentSequence(wig, axis, w, lambda, mu, p, q, nMax,
                                       axis == MomentAxis::Xi ? Method::WignerXiMoment : Method::WignerXMoment);
}

inline RadiusSequence wignerMomentSequence(const SampledFunction& f, MomentAxis axis, const WeightFunction* w,
                                           double lambda, double mu, double p, double q, int nMax) {
    return wignerMomentSequence(wigner(f), axis, w, lambda, mu, p, q, nMax);
}

/// Entry N: log || e^{lambda omega(x/(N+1)) + mu omega(xi)} |xi|^N V_window f ||_{L^{p,q}}.
inline RadiusSequence gaborMomentSequence(const TimeFreqField& V, const WeightFunction* w, double lambda, double mu,
                                          double p, double q, int nMax) {
    if (V.kind != TransformKind::STFT) throw ParameterError("gaborMomentSequence needs an STFT field");
    return detail::fieldMomentSequence(V, MomentAxis::Xi, w, lambda, mu, p, q, nMax, Method::GaborMoment);
}

inline RadiusSequence gaborMomentSequence(const SampledFunction& f, const SampledFunction& window,
                                          const WeightFunction* w, double lambda, double mu, double p, double q,
                                          int nMax) {
    return gaborMomentSequence(stft(f, window), w, lambda, mu, p, q, nMax);
}

namespace detail {

// Least-squares intercept of y against the basis (first column is the constant).
inline double fitIntercept(const std::vector<double>& t, const std::vector<double>& y,
                           const std::vector<std::function<double(double)>>& basis) {
    const Eigen::Index rows = static_cast<Eigen::Index>(t.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) A(r, c) = basis[c](t[r]);
        b(r) = y[r];
    }
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < cols; ++c)
        if (scale(c) > 0.0) A.col(c) /= scale(c);
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    return x(0) / scale(0);
}

inline std::vector<std::function<double(double)>> truncatedBasis(std::vector<std::function<double(double)>> basis,
                                                                 std::size_t points) {
    std::size_t keep = std::max<std::size_t>(1, std::min(basis.size(), points >= 3 ? points - 2 : 1));
    basis.resize(keep);
    return basis;
}

}  // namespace detail

/// Fits use entries with n > kFitWindowFraction * n_last.
inline constexpr double kFitWindowFraction = 0.4;

/// Limits of a radius sequence. rootLimit and ratioLimit come from least-squares fits of the
/// asymptotic model L_n = n log R + c1 sqrt(n) + c2 log n + c3 + c4 / sqrt(n) (a smooth spectral
/// edge of exp(-c/distance) type gives the sqrt(n) term); lastRoot and lastRatio are the raw values.
/// Even and odd orders differ by a small alternating term, so the root fit uses entries of the
/// parity of the last one and the ratio fit uses two-step increments (L_n - L_{n-2}) / 2 of that parity.
inline RadiusEstimate extrapolateLimit(const RadiusSequence& seq, std::optional<double> oracle = std::nullopt) {
    RadiusEstimate est;
    if (oracle) est.oracle = *oracle;
    auto setErr = [&] {
        if (oracle && std::isfinite(*oracle) && *oracle != 0.0) {
            est.relErrRoot = std::abs(est.rootLimit - *oracle) / *oracle;
            est.relErrRatio = std::abs(est.ratioLimit - *oracle) / *oracle;
        }
    };
    if (seq.zeroInput) {
        setErr();
        return est;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < seq.entries.size(); ++i)
        if (seq.entries[i].n >= 1) idx.push_back(i);
    if (seq.entries.size() < 8 || idx.size() < 4) throw ParameterError("extrapolateLimit needs at least 8 entries");
    est.entriesUsed = static_cast<int>(seq.entries.size());

    const std::size_t last = seq.entries.size() - 1;
    est.lastRoot = seq.root(last);
    est.lastRatio = seq.ratio(last);

    {
        double r0 = seq.root(last - 2), r1 = seq.root(last - 1), r2 = seq.root(last);
        double den = (r2 - r1) - (r1 - r0);
        est.richardson = std::abs(den) > 1e-14 * std::abs(r2) ? r2 - (r2 - r1) * (r2 - r1) / den : r2;
    }

    const int nLast = seq.entries[last].n;
    const double nFrom = kFitWindowFraction * nLast;
    {
        std::vector<double> t, y;
        for (int pass = 0; pass < 2 && t.size() < 3; ++pass) {
            t.clear();
            y.clear();
            for (std::size_t i : idx) {
                const auto& e = seq.entries[i];
                if (e.n <= nFrom && pass == 0) continue;
                if (pass == 0 && (nLast - e.n) % 2 != 0) continue;
                t.push_back(e.n);
                y.push_back(e.logNorm.log() / e.n);
            }
        }
        auto basis = detail::truncatedBasis({[](double) { return 1.0; }, [](double n) { return 1.0 / std::sqrt(n); },
                                             [](double n) { return std::log(n) / n; }, [](double n) { return 1.0 / n; },
                                             [](double n) { return std::pow(n, -1.5); }},
                                            t.size());
        est.rootLimit = std::exp(detail::fitIntercept(t, y, basis));
    }
    {
        std::vector<double> t, y;
        for (int step = 2; step >= 1 && t.size() < 3; --step) {
            t.clear();
            y.clear();
            for (std::size_t i = 1; i <= last; ++i) {
                const auto& e = seq.entries[i];
                if (step == 2 && (e.n <= nFrom || (nLast - e.n) % 2 != 0)) continue;
                for (std::size_t j = i; j-- > 0;) {
                    if (seq.entries[j].n == e.n - step) {
                        t.push_back(e.n - 0.5 * step);
                        y.push_back((e.logNorm.log() - seq.entries[j].logNorm.log()) / step);
                        break;
                    }
                    if (seq.entries[j].n < e.n - step) break;
                }
            }
        }
        auto basis = detail::truncatedBasis({[](double) { return 1.0; }, [](double m) { return 1.0 / std::sqrt(m); },
                                             [](double m) { return 1.0 / m; }, [](double m) { return std::pow(m, -1.5); }},
                                            t.size());
        est.ratioLimit = std::exp(detail::fitIntercept(t, y, basis));
    }

    // Divergence over the last window of roots.
    {
        std::size_t w = std::min<std::size_t>(kDivergenceWindow, idx.size() - 1);
        bool increasing = true, steep = true;
        for (std::size_t j = idx.size() - w; j < idx.size(); ++j) {
            double prev = seq.root(idx[j - 1]), cur = seq.root(idx[j]);
            if (!(cur > prev)) increasing = false;
            if (!(cur > prev * (1.0 + kDivergenceStep))) steep = false;
        }
        // Least-squares slope of the log-ratio against log n.
        std::vector<double> lx, lr;
        for (std::size_t j = idx.size() - w; j < idx.size(); ++j) {
            std::size_t i = idx[j];
            if (i == 0) continue;
            const auto &e1 = seq.entries[i], &e0 = seq.entries[i - 1];
            lx.push_back(std::log(0.5 * (e1.n + e0.n)));
            lr.push_back((e1.logNorm.log() - e0.logNorm.log()) / (e1.n - e0.n));
        }
        double mx = 0.0, my = 0.0;
        for (std::size_t j = 0; j < lx.size(); ++j) {
            mx += lx[j];
            my += lr[j];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t j = 0; j < lx.size(); ++j) {
            sxy += (lx[j] - mx) * (lr[j] - my);
            sxx += (lx[j] - mx) * (lx[j] - mx);
        }
        est.ratioGrowthSlope = sxx > 0.0 ? sxy / sxx : 0.0;
        est.divergent = increasing && (steep || est.ratioGrowthSlope > kDivergenceSlope);
    }
    setErr();
    return est;
}

/// One labelled row of a diagnostic table; values are natural logs unless stated otherwise.
struct DiagnosticRow {
    double parameter = 0.0;
    std::vector<double> values;
};

struct DiagnosticTable {
    std::string title;
    std::string parameterName;
    std::string abscissaName;
    std::vector<double> abscissa;
    std::vector<DiagnosticRow> rows;
};

/// exp(last - first) of a running-sup row (1 for a flat or empty profile).
inline double profileGrowth(const DiagnosticRow& row) {
    if (row.values.size() < 2 || !std::isfinite(row.values.front())) return 1.0;
    return std::exp(row.values.back() - row.values.front());
}

/// Running sup over |alpha| <= alphaCap of log sup_x R^{-|alpha|} e^{lambda omega(x/(|alpha|+1))} |D^alpha f(x)|.
inline DiagnosticTable pwSeminormCheck(const SampledFunction& f, double R, const WeightFunction* w,
                                       const std::vector<double>& lambdas, int alphaCap) {
    if (!(R > 0.0)) throw ParameterError("pwSeminormCheck needs R > 0");
    for (double l : lambdas) detail::requireAdmissible(w, l);
    DiagnosticTable t;
    t.title = "pw-seminorm";
    t.parameterName = "lambda";
    t.abscissaName = "order";
    for (int a = 0; a <= alphaCap; ++a) t.abscissa.push_back(a);
    const int d = f.grid.dim;
    if (f.maxAbs() == 0.0) {
        for (double l : lambdas)
            t.rows.push_back({l, std::vector<double>(alphaCap + 1, -std::numeric_limits<double>::infinity())});
        return t;
    }
    const Spectrum Ff = filterSpectrum(forwardFT(f));
    // terms[a][li]
    std::vector<std::vector<double>> terms(alphaCap + 1, std::vector<double>(lambdas.size()));
    parallelFor(static_cast<std::size_t>(alphaCap + 1), [&](std::size_t a) {
        std::vector<double> best(lambdas.size(), -std::numeric_limits<double>::infinity());
        for (const auto& mi : detail::multiIndices(d, static_cast<int>(a))) {
            ScaledFunction g = derivativeScaled(Ff, mi);
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                double l = weightedLpNorm(g.f, std::numeric_limits<double>::infinity(),
                                          SpatialWeight{w, lambdas[li], static_cast<int>(a), 1})
                               .log() +
                           g.exponent * std::numbers::ln2 - static_cast<double>(a) * std::log(R);
                best[li] = std::max(best[li], l);
            }
        }
        terms[a] = best;
    });
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        DiagnosticRow row{lambdas[li], {}};
        double run = -std::numeric_limits<double>::infinity();
        for (int a = 0; a <= alphaCap; ++a) {
            run = std::max(run, terms[a][li]);
            row.values.push_back(run);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// log|f(iy)| - H_R(y) + k omega(|y|) with f(iy) = (2pi)^{-d} int F(xi) e^{-<y,xi>} dxi and
/// H_R(y) = R sum |y_j|. Rows are indexed by k, columns by the points of yList.
inline DiagnosticTable analyticGrowthCheck(const Spectrum& F, double R, const WeightFunction& w,
                                           const std::vector<double>& kList,
                                           const std::vector<std::vector<double>>& yList) {
    const int d = F.grid.dim;
    if (supportRadiusSupNorm(F) > R * (1.0 + 1e-12)) throw ParameterError("spectral support exceeds R");
    const Spectrum Ff = filterSpectrum(F);
    DiagnosticTable t;
    t.title = "analytic-growth";
    t.parameterName = "k";
    t.abscissaName = "y-index";
    for (std::size_t j = 0; j < yList.size(); ++j) t.abscissa.push_back(static_cast<double>(j));
    std::vector<double> logF(yList.size());
    const double logCell = std::log(F.grid.cellVolume()) - d * std::log(2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < yList.size(); ++j) {
        const auto& y = yList[j];
        if (static_cast<int>(y.size()) != d) throw ParameterError("y points must have dim entries");
        double shift = -std::numeric_limits<double>::infinity();
        double c[2];
        for (std::size_t i = 0; i < Ff.size(); ++i) {
            if (Ff[i] == cplx(0.0)) continue;
            Ff.coords(i, c);
            double e = 0.0;
            for (int a = 0; a < d; ++a) e -= y[a] * c[a];
            shift = std::max(shift, e);
        }
        cplx s = 0.0;
        for (std::size_t i = 0; i < Ff.size(); ++i) {
            if (Ff[i] == cplx(0.0)) continue;
            Ff.coords(i, c);
            double e = 0.0;
            for (int a = 0; a < d; ++a) e -= y[a] * c[a];
            s += Ff[i] * std::exp(e - shift);
        }
        logF[j] = std::log(std::abs(s)) + shift + logCell;
    }
    for (double k : kList) {
        DiagnosticRow row{k, {}};
        for (std::size_t j = 0; j < yList.size(); ++j) {
            double h = 0.0;
            for (double v : yList[j]) h += R * std::abs(v);
            row.values.push_back(logF[j] - h + k * w(std::span<const double>(yList[j])));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace pwlab

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pwlab/errors.hpp"
#include "pwlab/estimators.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/signal.hpp"
#include "pwlab/weights.hpp"

namespace pwlab {

inline constexpr std::size_t kPolyCoefficientCap = 100000;

/// Complex polynomial in dim variables; coefficient map without explicit zeros.
class PolySymbol {
public:
    using Index = std::array<int, 2>;

    explicit PolySymbol(int dim = 1) : dim_(dim) {
        if (dim != 1 && dim != 2) throw ParameterError("polynomial dimension must be 1 or 2");
    }

    static PolySymbol constant(int dim, cplx c) {
        PolySymbol p(dim);
        p.set({0, 0}, c);
        return p;
    }

    /// Single variable xi_axis (axis 0 or 1).
    static PolySymbol variable(int dim, int axis) {
        PolySymbol p(dim);
        Index k{0, 0};
        k[axis] = 1;
        p.set(k, 1.0);
        return p;
    }

    int dim() const { return dim_; }
    const std::map<Index, cplx>& coefficients() const { return c_; }
    std::size_t termCount() const { return c_.size(); }
    bool isZero() const { return c_.empty(); }

    void set(Index k, cplx v) {
        if (k[0] < 0 || k[1] < 0 || (dim_ == 1 && k[1] != 0)) throw ParameterError("invalid polynomial index");
        if (v == cplx(0.0))
            c_.erase(k);
        else
            c_[k] = v;
        if (c_.size() > kPolyCoefficientCap) throw CapExceededError("polynomial coefficient cap exceeded");
    }

    cplx coefficient(Index k) const {
        auto it = c_.find(k);
        return it == c_.end() ? cplx(0.0) : it->second;
    }

    int degree() const {
        int m = 0;
        for (const auto& [k, v] : c_) m = std::max(m, k[0] + k[1]);
        return m;
    }

    cplx operator()(const double* xi) const {
        cplx s = 0.0;
        for (const auto& [k, v] : c_) {
            double m = 1.0;
            for (int a = 0; a < dim_; ++a) m *= ipow(xi[a], k[a]);
            s += v * m;
        }
        return s;
    }

    friend PolySymbol operator+(const PolySymbol& a, const PolySymbol& b) {
        requireSameDim(a, b);
        PolySymbol r = a;
        for (const auto& [k, v] : b.c_) r.set(k, r.coefficient(k) + v);
        return r;
    }

    friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
        requireSameDim(a, b);
        std::map<Index, cplx> acc;
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_) {
                acc[{ka[0] + kb[0], ka[1] + kb[1]}] += va * vb;
                if (acc.size() > kPolyCoefficientCap) throw CapExceededError("polynomial coefficient cap exceeded");
            }
        PolySymbol r(a.dim_);
        for (const auto& [k, v] : acc)
            if (v != cplx(0.0)) r.c_[k] = v;
        return r;
    }

    friend PolySymbol operator*(cplx s, const PolySymbol& a) {
        PolySymbol r(a.dim_);
        for (const auto& [k, v] : a.c_) r.set(k, s * v);
        return r;
    }

    friend bool operator==(const PolySymbol& a, const PolySymbol& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }

    PolySymbol power(int n) const {
        if (n < 0) throw ParameterError("polynomial power must be >= 0");
        PolySymbol r = constant(dim_, 1.0), base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            n >>= 1;
            if (n > 0) base = base * base;
        }
        return r;
    }

    /// D_xi^k = (-i d/dxi)^k.
    PolySymbol differentiate(const std::vector<int>& k) const {
        if (static_cast<int>(k.size()) != dim_) throw ParameterError("multi-index length must equal dim");
        PolySymbol r = *this;
        for (int a = 0; a < dim_; ++a) {
            if (k[a] < 0) throw ParameterError("multi-index entries must be non-negative");
            for (int s = 0; s < k[a]; ++s) r = r.partial(a);
        }
        return r;
    }

    /// Terms such as "(2,0):1+0i" joined by spaces; exponents before the colon.
    std::string describe() const {
        std::string s;
        char buf[128];
        for (const auto& [k, v] : c_) {
            if (dim_ == 1)
                std::snprintf(buf, sizeof buf, "%s(%d):%.17g%+.17gi", s.empty() ? "" : " ", k[0], v.real(), v.imag());
            else
                std::snprintf(buf, sizeof buf, "%s(%d,%d):%.17g%+.17gi", s.empty() ? "" : " ", k[0], k[1], v.real(),
                              v.imag());
            s += buf;
        }
        return s.empty() ? "0" : s;
    }

private:
    static double ipow(double x, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= x;
        return r;
    }

    static void requireSameDim(const PolySymbol& a, const PolySymbol& b) {
        if (a.dim_ != b.dim_) throw ParameterError("polynomial dimensions differ");
    }

    PolySymbol partial(int axis) const {
        PolySymbol r(dim_);
        for (const auto& [k, v] : c_) {
            if (k[axis] == 0) continue;
            Index kk = k;
            --kk[axis];
            r.set(kk, r.coefficient(kk) + cplx(0.0, -1.0) * static_cast<double>(k[axis]) * v);
        }
        return r;
    }

    int dim_ = 1;
    std::map<Index, cplx> c_;
};

/// P_{l,k} for l = 0..|k| with D^k(P^n) = sum_l n!/(n-l)! P_{l,k} P^{n-l}, built by differentiating
/// one axis at a time (axis 1 first): P_{l,k+e_j} = D_j P_{l,k} + P_{l-1,k} D_j P.
inline std::vector<PolySymbol> symbolPowerDecomposition(const PolySymbol& P, const std::vector<int>& k) {
    if (static_cast<int>(k.size()) != P.dim()) throw ParameterError("multi-index length must equal dim");
    std::vector<PolySymbol> terms{PolySymbol::constant(P.dim(), 1.0)};
    for (int axis = 0; axis < P.dim(); ++axis) {
        if (k[axis] < 0) throw ParameterError("multi-index entries must be non-negative");
        std::vector<int> e(P.dim(), 0);
        e[axis] = 1;
        const PolySymbol dP = P.differentiate(e);
        for (int s = 0; s < k[axis]; ++s) {
            std::vector<PolySymbol> next(terms.size() + 1, PolySymbol(P.dim()));
            for (std::size_t l = 0; l < terms.size(); ++l) {
                next[l] = next[l] + terms[l].differentiate(e);
                next[l + 1] = next[l + 1] + terms[l] * dP;
            }
            terms = std::move(next);
        }
    }
    return terms;
}

/// Right-hand side sum_l n!/(n-l)! P_{l,k} P^{n-l}; requires n >= |k|.
inline PolySymbol assembleDecomposition(const PolySymbol& P, const std::vector<PolySymbol>& terms, int n) {
    if (n < static_cast<int>(terms.size()) - 1) throw ParameterError("decomposition needs n >= |k|");
    PolySymbol s(P.dim());
    double fall = 1.0;  // n!/(n-l)!
    for (std::size_t l = 0; l < terms.size(); ++l) {
        s = s + fall * (terms[l] * P.power(n - static_cast<int>(l)));
        fall *= static_cast<double>(n - static_cast<int>(l));
    }
    return s;
}

/// P(D)^n f = F^{-1}[P^n f-hat], multiplier accumulated as n log|P| and n arg P.
inline ScaledFunction applySymbolPowerScaled(const Spectrum& filtered, const PolySymbol& P, int n) {
    if (P.dim() != filtered.grid.dim) throw ParameterError("symbol and grid dimensions differ");
    if (n < 0) throw ParameterError("symbol power must be >= 0");
    std::vector<double> lm(filtered.size()), ph(filtered.size());
    double c[2];
    for (std::size_t i = 0; i < filtered.size(); ++i) {
        filtered.coords(i, c);
        cplx v = P(c);
        lm[i] = n == 0 ? 0.0 : n * std::log(std::abs(v));
        ph[i] = n == 0 ? 0.0 : n * std::arg(v);
    }
    return applySpectralMultiplier(
        filtered, [&](std::size_t i) { return lm[i]; }, [&](std::size_t i) { return ph[i]; }, "applySymbolPower");
}

inline SampledFunction applySymbolPower(const SampledFunction& f, const PolySymbol& P, int n) {
    if (n == 0) return f;
    if (f.maxAbs() == 0.0) return f;
    ScaledFunction s = applySymbolPowerScaled(filterSpectrum(forwardFT(f)), P, n);
    for (auto& v : s.f.samples) v = std::ldexp(1.0, s.exponent) * v;
    return s.f;
}

/// Entry n: log || e^{lambda omega(|x/(n+1)|^{1/m})} P(D)^n f ||_{L^p}, m = deg P.
inline RadiusSequence polyIterateSequence(const SampledFunction& f, const PolySymbol& P, const WeightFunction* w,
                                          double lambda, double p, int nMax) {
    const int m = P.degree();
    if (m < 1) throw ParameterError("symbol degree must be >= 1");
    if (P.dim() != f.grid.dim) throw ParameterError("symbol and grid dimensions differ");
    detail::requireAdmissible(w, lambda);
    requireExponent(p, "polyIterateSequence");
    RadiusSequence seq;
    seq.method = Method::PolyIterate;
    seq.params = {p, p, lambda, 0.0, w ? w->id() : "none", "", P.describe()};
    if (f.maxAbs() == 0.0) {
        seq.zeroInput = true;
        return seq;
    }
    const Spectrum F = forwardFT(f);
    const Spectrum Ff = filterSpectrum(F);
    const double roundoff = detail::roundoffLevel(F.samples);
    std::vector<double> logP(Ff.size());
    double c[2];
    for (std::size_t i = 0; i < Ff.size(); ++i) {
        Ff.coords(i, c);
        logP[i] = std::log(std::abs(P(c)));
    }
    int cut = detail::noiseCut(nMax, [&](int n) {
        return detail::noiseRatio(Ff.samples, roundoff, [&](std::size_t i) { return n == 0 ? 0.0 : n * logP[i]; });
    });
    const int last = std::min(nMax, cut - 1);
    std::vector<SequenceEntry> entries(last + 1);
    parallelFor(static_cast<std::size_t>(last + 1), [&](std::size_t n) {
        ScaledFunction g = applySymbolPowerScaled(Ff, P, static_cast<int>(n));
        double l = weightedLpNorm(g.f, p, SpatialWeight{w, lambda, static_cast<int>(n), m}).log() +
                   g.exponent * std::numbers::ln2;
        entries[n] = {static_cast<int>(n), LogMagnitude::fromLog(l)};
    });
    return detail::finish(std::move(seq), std::move(entries), cut, nMax);
}

/// R(P, F) = max |P| over samples with |F| >= tau max|F| (tau = 0: nonzero samples); 0 for F = 0.
inline double supAbsOnSupport(const Spectrum& F, const PolySymbol& P, double tau = 1e-8) {
    if (P.dim() != F.grid.dim) throw ParameterError("symbol and grid dimensions differ");
    const double mx = F.maxAbs();
    if (mx == 0.0) return 0.0;
    double r = 0.0, c[2];
    for (std::size_t i = 0; i < F.size(); ++i) {
        double a = std::abs(F[i]);
        if (!((tau > 0.0 && a >= tau * mx) || (tau == 0.0 && a > 0.0))) continue;
        F.coords(i, c);
        r = std::max(r, std::abs(P(c)));
    }
    return r;
}

struct SublevelResult {
    bool bounded = true;
    std::vector<std::pair<double, double>> boundingBox;  // per axis, empty when the set is empty
    std::vector<double> witness;                         // in-set point on the search boundary
    std::vector<std::vector<double>> inSetPoints;
};

/// Rasterizes {|P| <= R} on resolution points per axis (endpoints included) over searchBox.
inline SublevelResult sublevelSetBox(const PolySymbol& P, double R,
                                     const std::vector<std::pair<double, double>>& searchBox, int resolution,
                                     bool keepPoints = false) {
    const int d = P.dim();
    if (static_cast<int>(searchBox.size()) != d) throw ParameterError("search box must have dim intervals");
    for (const auto& [lo, hi] : searchBox)
        if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) throw ParameterError("search box must be finite");
    if (resolution < 2) throw ParameterError("resolution must be >= 2");
    const std::size_t rN = static_cast<std::size_t>(resolution);
    const std::size_t rows = d == 1 ? 1 : rN;
    auto coord = [&](int axis, std::size_t j) {
        return searchBox[axis].first + (searchBox[axis].second - searchBox[axis].first) * j / (resolution - 1.0);
    };
    struct RowResult {
        std::vector<double> lo, hi, witness;
        double witnessNorm = -1.0;
        std::vector<std::vector<double>> pts;
        bool any = false;
    };
    std::vector<RowResult> res(rows);
    parallelFor(rows, [&](std::size_t a) {
        RowResult& rr = res[a];
        rr.lo.assign(d, std::numeric_limits<double>::infinity());
        rr.hi.assign(d, -std::numeric_limits<double>::infinity());
        for (std::size_t b = 0; b < rN; ++b) {
            double xi[2];
            std::size_t idx[2];
            if (d == 1) {
                idx[0] = b;
            } else {
                idx[0] = a;
                idx[1] = b;
            }
            for (int ax = 0; ax < d; ++ax) xi[ax] = coord(ax, idx[ax]);
            if (!(std::abs(P(xi)) <= R)) continue;
            rr.any = true;
            bool edge = false;
            double nrm = 0.0;
            for (int ax = 0; ax < d; ++ax) {
                rr.lo[ax] = std::min(rr.lo[ax], xi[ax]);
                rr.hi[ax] = std::max(rr.hi[ax], xi[ax]);
                if (idx[ax] == 0 || idx[ax] == rN - 1) edge = true;
                nrm += xi[ax] * xi[ax];
            }
            if (edge && nrm > rr.witnessNorm) {
                rr.witnessNorm = nrm;
                rr.witness.assign(xi, xi + d);
            }
            if (keepPoints) rr.pts.emplace_back(xi, xi + d);
        }
    });
    SublevelResult out;
    std::vector<double> lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
    bool any = false;
    double wn = -1.0;
    for (auto& rr : res) {
        if (!rr.any) continue;
        any = true;
        for (int ax = 0; ax < d; ++ax) {
            lo[ax] = std::min(lo[ax], rr.lo[ax]);
            hi[ax] = std::max(hi[ax], rr.hi[ax]);
        }
        if (rr.witnessNorm > wn) {
            wn = rr.witnessNorm;
            out.witness = rr.witness;
        }
        for (auto& p : rr.pts) out.inSetPoints.push_back(std::move(p));
    }
    out.bounded = wn < 0.0;
    if (any)
        for (int ax = 0; ax < d; ++ax) out.boundingBox.emplace_back(lo[ax], hi[ax]);
    return out;
}

}  // namespace pwlab

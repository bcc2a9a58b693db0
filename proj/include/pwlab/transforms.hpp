#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "pwlab/errors.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/parallel.hpp"
#include "pwlab/signal.hpp"

namespace pwlab {

/// f~(x) = f(-x); exact index permutation on the periodic grid.
template <class T>
T reflect(const T& f) {
    T out = f;
    const std::size_t n = f.grid.points;
    if (f.grid.dim == 1) {
        for (std::size_t j = 0; j < n; ++j) out[j] = f[(n - j) % n];
    } else {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) out[a * n + b] = f[((n - a) % n) * n + (n - b) % n];
    }
    return out;
}

namespace detail {
inline long gridShift(double shift, double spacing) {
    double m = shift / spacing;
    double r = std::round(m);
    if (std::abs(m - r) > 1e-9 * std::max(1.0, std::abs(m)))
        throw ParameterError("shift is not a multiple of the grid spacing");
    return static_cast<long>(r);
}
inline std::size_t wrap(long i, std::size_t n) {
    long m = static_cast<long>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}
}  // namespace detail

/// (T_{x0} f)(x) = f(x - x0) for on-grid x0 (circular).
template <class T>
T translate(const T& f, const std::vector<double>& x0) {
    if (static_cast<int>(x0.size()) != f.grid.dim) throw ParameterError("translate: shift length must equal dim");
    T out = f;
    const std::size_t n = f.grid.points;
    const double h = f.grid.spacing();
    if (f.grid.dim == 1) {
        long m = detail::gridShift(x0[0], h);
        for (std::size_t j = 0; j < n; ++j) out[j] = f[detail::wrap(static_cast<long>(j) - m, n)];
    } else {
        long m0 = detail::gridShift(x0[0], h), m1 = detail::gridShift(x0[1], h);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                out[a * n + b] =
                    f[detail::wrap(static_cast<long>(a) - m0, n) * n + detail::wrap(static_cast<long>(b) - m1, n)];
    }
    return out;
}

/// (M_{xi0} f)(x) = e^{i<xi0, x>} f(x).
template <class T>
T modulate(const T& f, const std::vector<double>& xi0) {
    if (static_cast<int>(xi0.size()) != f.grid.dim) throw ParameterError("modulate: frequency length must equal dim");
    T out = f;
    double c[2];
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.coords(i, c);
        double ph = 0.0;
        for (int a = 0; a < f.grid.dim; ++a) ph += xi0[a] * c[a];
        out[i] = f[i] * std::polar(1.0, ph);
    }
    return out;
}

/// Reinterprets a spectrum as a function on the frequency grid (for identities such as V_{psi-hat} u-hat).
inline SampledFunction asFunction(const Spectrum& F) { return SampledFunction(F.grid, F.samples); }

namespace detail {

inline void requireLine(const GridSamples& f, const char* who) {
    if (f.grid.dim != 1) throw ParameterError(std::string(who) + ": time-frequency fields are supported for d = 1");
}

// Embeds the N samples in a grid of twice the width and interpolates spectrally to half
// the spacing: result index J <-> -2X + J*Delta/2, 4N points.
inline std::vector<cplx> padUpsample(const std::vector<cplx>& a) {
    const std::size_t n = a.size(), P = 2 * n;
    std::vector<cplx> padded(P);
    for (std::size_t j = 0; j < n; ++j) padded[j + n / 2] = a[j];
    fft::transform1d(padded.data(), P, fft::Direction::Forward);
    std::vector<cplx> fine(2 * P);
    for (std::size_t k = 0; k < P / 2; ++k) fine[k] = padded[k];
    for (std::size_t k = P / 2 + 1; k < P; ++k) fine[k + P] = padded[k];
    fine[P / 2] = 0.5 * padded[P / 2];
    fine[P / 2 + P] = 0.5 * padded[P / 2];
    fft::transform1d(fine.data(), 2 * P, fft::Direction::Backward);
    for (auto& v : fine) v /= static_cast<double>(P);
    return fine;
}

}  // namespace detail

/// V_psi u(x, xi) = int u(y) conj(psi(y - x)) e^{-i y xi} dy for every grid shift x_j;
/// the xi grid is the spectrum grid.
inline TimeFreqField stft(const SampledFunction& u, const SampledFunction& psi) {
    detail::requireLine(u, "stft");
    requireSameGrid(u, psi, "stft");
    requireBoundaryDecay(u, "stft");
    requireBoundaryDecay(psi, "stft");
    const std::size_t n = u.grid.points;
    TimeFreqField F{u.grid, u.grid.frequencyGrid(), std::vector<cplx>(n * n), TransformKind::STFT};
    parallelFor(n, [&](std::size_t j) {
        std::vector<cplx> g(n);
        // psi(y_m - x_j) sits at index m - j + N/2.
        for (std::size_t m = 0; m < n; ++m)
            g[m] = u[m] * std::conj(psi[detail::wrap(static_cast<long>(m) - static_cast<long>(j) +
                                                         static_cast<long>(n / 2),
                                                     n)]);
        g = detail::forwardSamples(u.grid, std::move(g));
        std::copy(g.begin(), g.end(), F.samples.begin() + j * n);
    });
    return F;
}

/// Wig(u, v)(x, xi) = int u(x + t/2) conj(v(x - t/2)) e^{-i xi t} dt. The inputs are embedded
/// in a grid of twice the width (no periodic cross terms) and interpolated to half spacing,
/// so x +- t/2 are grid points. Output: x on the input grid, xi spacing half the spectrum grid's.
inline TimeFreqField wigner(const SampledFunction& u, const SampledFunction& v) {
    detail::requireLine(u, "wigner");
    requireSameGrid(u, v, "wigner");
    requireBoundaryDecay(u, "wigner");
    requireBoundaryDecay(v, "wigner");
    const std::size_t n = u.grid.points;
    const std::vector<cplx> uf = detail::padUpsample(u.samples);
    const std::vector<cplx> vf = (&u == &v) ? uf : detail::padUpsample(v.samples);
    const GridSpec tGrid{1, 2.0 * u.grid.halfWidth, 2 * n};
    TimeFreqField F{u.grid, tGrid.frequencyGrid(), std::vector<cplx>(n * 2 * n), TransformKind::Wigner};
    parallelFor(n, [&](std::size_t j) {
        const std::size_t J = 2 * j + n;
        std::vector<cplx> h(2 * n);
        for (std::size_t mp = 0; mp < 2 * n; ++mp) {
            std::size_t plus = J + mp - n, minus = J + n - mp;
            h[mp] = uf[plus] * std::conj(vf[minus]);
        }
        h = detail::forwardSamples(tGrid, std::move(h));
        std::copy(h.begin(), h.end(), F.samples.begin() + j * 2 * n);
    });
    return F;
}

inline TimeFreqField wigner(const SampledFunction& f) { return wigner(f, f); }

/// Af(x, xi) = int f(t + x/2) conj(f(t - x/2)) e^{-i t xi} dt for lags x on the input grid;
/// xi grid has the spectrum spacing and twice its range.
inline TimeFreqField ambiguity(const SampledFunction& f) {
    detail::requireLine(f, "ambiguity");
    requireBoundaryDecay(f, "ambiguity");
    const std::size_t n = f.grid.points, fineN = 4 * n;
    const std::vector<cplx> ff = detail::padUpsample(f.samples);
    const GridSpec tGrid{1, 2.0 * f.grid.halfWidth, fineN};
    TimeFreqField F{f.grid, tGrid.frequencyGrid(), std::vector<cplx>(n * fineN), TransformKind::Ambiguity};
    parallelFor(n, [&](std::size_t j) {
        const long h = static_cast<long>(j) - static_cast<long>(n / 2);
        std::vector<cplx> g(fineN);
        for (std::size_t M = 0; M < fineN; ++M) {
            long a = static_cast<long>(M) + h, b = static_cast<long>(M) - h;
            if (a < 0 || b < 0 || a >= static_cast<long>(fineN) || b >= static_cast<long>(fineN)) continue;
            g[M] = ff[a] * std::conj(ff[b]);
        }
        g = detail::forwardSamples(tGrid, std::move(g));
        std::copy(g.begin(), g.end(), F.samples.begin() + j * fineN);
    });
    return F;
}

}  // namespace pwlab

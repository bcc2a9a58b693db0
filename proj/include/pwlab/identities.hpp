#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "pwlab/errors.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/signal.hpp"
#include "pwlab/transforms.hpp"

namespace pwlab {

/// Relative residual of a checked identity: max |lhs - rhs| / max |rhs| over the compared points.
struct IdentityResidual {
    double maxError = 0.0;
    double scale = 0.0;
    std::size_t points = 0;

    double relative() const { return scale > 0.0 ? maxError / scale : maxError; }
    void add(cplx lhs, cplx rhs) {
        maxError = std::max(maxError, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
        ++points;
    }
};

namespace detail {

// Index of coordinate c on g when c is a grid point (within 1e-9 of a cell).
inline std::optional<std::size_t> gridIndex(const GridSpec& g, double c) {
    double m = (c + g.halfWidth) / g.spacing();
    double r = std::round(m);
    if (std::abs(m - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(g.points)) return std::nullopt;
    return static_cast<std::size_t>(r);
}

inline double sumSquares(const std::vector<cplx>& a) {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return s;
}

}  // namespace detail

/// |  ||f-hat||_2^2 - (2pi)^d ||f||_2^2 | relative to the right side.
inline double plancherelError(const SampledFunction& f) {
    const Spectrum F = forwardFT(f);
    const double lhs = detail::sumSquares(F.samples) * F.grid.cellVolume();
    const double rhs = std::pow(2.0 * std::numbers::pi, f.grid.dim) * detail::sumSquares(f.samples) * f.grid.cellVolume();
    return std::abs(lhs - rhs) / rhs;
}

/// sum_xi Wig f dxi = 2pi |f(x)|^2 (first) and sum_x Wig f dx = |f-hat(xi)|^2 (second).
inline std::pair<IdentityResidual, IdentityResidual> wignerMarginalResiduals(const SampledFunction& f) {
    const TimeFreqField W = wigner(f);
    const Spectrum F = forwardFT(f);
    const std::size_t nx = W.nx(), nk = W.nxi();
    IdentityResidual xr, kr;
    for (std::size_t i = 0; i < nx; ++i) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < nk; ++k) s += W.at(i, k);
        xr.add(s * W.xiGrid.spacing(), 2.0 * std::numbers::pi * std::norm(f[i]));
    }
    for (std::size_t k = 0; k < nk; ++k) {
        auto j = detail::gridIndex(F.grid, W.xiGrid.coord(k));
        if (!j) continue;
        cplx s = 0.0;
        for (std::size_t i = 0; i < nx; ++i) s += W.at(i, k);
        kr.add(s * W.xGrid.spacing(), std::norm(F[*j]));
    }
    return {xr, kr};
}

/// | ||Wig f||_2^2 - 2pi ||f||_2^4 | relative to the right side.
inline double moyalError(const SampledFunction& f) {
    const TimeFreqField W = wigner(f);
    const double lhs = detail::sumSquares(W.samples) * W.xGrid.spacing() * W.xiGrid.spacing();
    const double n2 = detail::sumSquares(f.samples) * f.grid.spacing();
    const double rhs = 2.0 * std::numbers::pi * n2 * n2;
    return std::abs(lhs - rhs) / rhs;
}

/// V_psi u(x, xi) = (2pi)^{-1} e^{-i x xi} V_{psi-hat} u-hat(xi, -x).
inline IdentityResidual stftFundamentalResidual(const SampledFunction& u, const SampledFunction& psi) {
    const TimeFreqField V = stft(u, psi);
    const TimeFreqField Vh = stft(asFunction(forwardFT(u)), asFunction(forwardFT(psi)));
    IdentityResidual r;
    for (std::size_t i = 0; i < V.nx(); ++i) {
        const double x = V.xGrid.coord(i);
        auto mx = detail::gridIndex(Vh.xiGrid, -x);
        if (!mx) continue;
        for (std::size_t k = 0; k < V.nxi(); ++k) {
            const double xi = V.xiGrid.coord(k);
            auto kx = detail::gridIndex(Vh.xGrid, xi);
            if (!kx) continue;
            r.add(V.at(i, k), std::polar(1.0 / (2.0 * std::numbers::pi), -x * xi) * Vh.at(*kx, *mx));
        }
    }
    return r;
}

/// Wig f(x, xi) = 2 e^{2 i x xi} V_{f~} f(2x, 2xi) on the points where (2x, 2xi) is on the STFT grid.
inline IdentityResidual wignerFromStftResidual(const SampledFunction& f) {
    const TimeFreqField W = wigner(f);
    const TimeFreqField V = stft(f, reflect(f));
    IdentityResidual r;
    for (std::size_t i = 0; i < W.nx(); ++i) {
        const double x = W.xGrid.coord(i);
        auto vi = detail::gridIndex(V.xGrid, 2.0 * x);
        if (!vi) continue;
        for (std::size_t k = 0; k < W.nxi(); ++k) {
            const double xi = W.xiGrid.coord(k);
            auto vk = detail::gridIndex(V.xiGrid, 2.0 * xi);
            if (!vk) continue;
            r.add(W.at(i, k), 2.0 * std::polar(1.0, 2.0 * x * xi) * V.at(*vi, *vk));
        }
    }
    return r;
}

/// Wig f-hat(x, xi) = 2pi Wig f(-xi, x) on common grid points.
inline IdentityResidual wignerFourierResidual(const SampledFunction& f) {
    const TimeFreqField W = wigner(f);
    const TimeFreqField Wh = wigner(asFunction(forwardFT(f)));
    IdentityResidual r;
    for (std::size_t i = 0; i < Wh.nx(); ++i) {
        auto wk = detail::gridIndex(W.xiGrid, Wh.xGrid.coord(i));
        if (!wk) continue;
        for (std::size_t k = 0; k < Wh.nxi(); ++k) {
            auto wi = detail::gridIndex(W.xGrid, -Wh.xiGrid.coord(k));
            if (!wi) continue;
            r.add(Wh.at(i, k), 2.0 * std::numbers::pi * W.at(*wi, *wk));
        }
    }
    return r;
}

/// Real f: Af(-eta, y) = e^{(i/2) eta y} V_f f(eta, y).
inline IdentityResidual ambiguityStftResidual(const SampledFunction& f) {
    const TimeFreqField A = ambiguity(f);
    const TimeFreqField V = stft(f, f);
    IdentityResidual r;
    for (std::size_t i = 0; i < V.nx(); ++i) {
        const double eta = V.xGrid.coord(i);
        auto ai = detail::gridIndex(A.xGrid, -eta);
        if (!ai) continue;
        for (std::size_t k = 0; k < V.nxi(); ++k) {
            const double y = V.xiGrid.coord(k);
            auto ak = detail::gridIndex(A.xiGrid, y);
            if (!ak) continue;
            r.add(A.at(*ai, *ak), std::polar(1.0, 0.5 * eta * y) * V.at(i, k));
        }
    }
    return r;
}

/// max |Im Wig f| / max |Wig f|.
inline double wignerImaginaryRatio(const SampledFunction& f) {
    const TimeFreqField W = wigner(f);
    double im = 0.0, mx = 0.0;
    for (const auto& v : W.samples) {
        im = std::max(im, std::abs(v.imag()));
        mx = std::max(mx, std::abs(v));
    }
    return mx > 0.0 ? im / mx : 0.0;
}

}  // namespace pwlab

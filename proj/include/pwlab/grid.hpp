#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "pwlab/errors.hpp"

namespace pwlab {

using cplx = std::complex<double>;

/// Uniform periodic grid x_j = -X + j*Delta on [-X, X)^dim, Delta = 2X/N.
struct GridSpec {
    int dim = 1;
    double halfWidth = 1.0;
    std::size_t points = 256;

    static constexpr std::size_t kMinPoints = 256;

    static GridSpec make(int dim, double halfWidth, std::size_t points) {
        if (dim != 1 && dim != 2) throw ParameterError("grid dimension must be 1 or 2");
        if (!(halfWidth > 0.0) || !std::isfinite(halfWidth)) throw ParameterError("grid half-width must be positive");
        if (points < kMinPoints || (points & (points - 1)) != 0)
            throw ParameterError("grid points must be a power of two >= 256");
        return GridSpec{dim, halfWidth, points};
    }

    double spacing() const { return 2.0 * halfWidth / static_cast<double>(points); }
    double coord(std::size_t j) const { return -halfWidth + static_cast<double>(j) * spacing(); }
    std::size_t size() const { return dim == 1 ? points : points * points; }
    double cellVolume() const { return std::pow(spacing(), dim); }

    /// Matching angular-frequency grid: spacing 2pi/(N Delta), half-width pi/Delta.
    GridSpec frequencyGrid() const { return GridSpec{dim, std::numbers::pi / spacing(), points}; }
    double nyquist() const { return std::numbers::pi / spacing(); }

    bool operator==(const GridSpec& o) const {
        return dim == o.dim && points == o.points && halfWidth == o.halfWidth;
    }

    std::string describe() const {
        char buf[128];
        std::snprintf(buf, sizeof buf, "dim=%d X=%.17g N=%zu", dim, halfWidth, points);
        return buf;
    }
};

/// Samples on a GridSpec; flat row-major (axis 1 slowest) for dim 2.
struct GridSamples {
    GridSpec grid;
    std::vector<cplx> samples;

    GridSamples() = default;
    GridSamples(GridSpec g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
        if (samples.size() != grid.size()) throw ParameterError("sample count does not match the grid");
    }
    explicit GridSamples(GridSpec g) : grid(g), samples(g.size()) {}

    std::size_t size() const { return samples.size(); }
    cplx& operator[](std::size_t i) { return samples[i]; }
    const cplx& operator[](std::size_t i) const { return samples[i]; }

    double maxAbs() const {
        double m = 0.0;
        for (const auto& v : samples) m = std::max(m, std::abs(v));
        return m;
    }

    /// Coordinates of flat index i (dim entries).
    void coords(std::size_t i, double* out) const {
        if (grid.dim == 1) {
            out[0] = grid.coord(i);
        } else {
            out[0] = grid.coord(i / grid.points);
            out[1] = grid.coord(i % grid.points);
        }
    }

    /// |x|_inf of flat index i.
    double supNormCoord(std::size_t i) const {
        double c[2];
        coords(i, c);
        return grid.dim == 1 ? std::abs(c[0]) : std::max(std::abs(c[0]), std::abs(c[1]));
    }
    /// Euclidean |x| of flat index i.
    double euclidCoord(std::size_t i) const {
        double c[2];
        coords(i, c);
        return grid.dim == 1 ? std::abs(c[0]) : std::hypot(c[0], c[1]);
    }
};

/// Samples of f on the spatial grid.
struct SampledFunction : GridSamples {
    using GridSamples::GridSamples;
};

/// Samples of f-hat(xi) = int f(x) e^{-i<x,xi>} dx on the frequency grid.
struct Spectrum : GridSamples {
    using GridSamples::GridSamples;
};

/// Ratio of the largest sample on the outer shell |x|_inf >= 0.95 X to the global maximum.
inline double boundaryShellRatio(const GridSamples& f) {
    double global = 0.0, shell = 0.0;
    const double edge = 0.95 * f.grid.halfWidth;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double a = std::abs(f[i]);
        global = std::max(global, a);
        if (f.supNormCoord(i) >= edge) shell = std::max(shell, a);
    }
    return global > 0.0 ? shell / global : 0.0;
}

inline constexpr double kBoundaryDecayTolerance = 1e-10;

/// Throws PeriodizationError when the boundary shell is not negligible.
inline void requireBoundaryDecay(const GridSamples& f, const char* who) {
    for (const auto& v : f.samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DataError(std::string(who) + ": non-finite sample");
    double r = boundaryShellRatio(f);
    if (r > kBoundaryDecayTolerance) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s: boundary shell maximum is %.3e of the global maximum (limit %.0e)", who, r,
                      kBoundaryDecayTolerance);
        throw PeriodizationError(r, buf);
    }
}

inline void requireSameGrid(const GridSamples& a, const GridSamples& b, const char* who) {
    if (!(a.grid == b.grid)) throw GridMismatchError(std::string(who) + ": operands live on different grids");
}

}  // namespace pwlab

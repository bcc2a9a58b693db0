#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwlab/errors.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/signal.hpp"
#include "pwlab/transforms.hpp"

namespace pwlab {

/// Closed interval per axis.
using Box = std::vector<std::pair<double, double>>;

/// Smooth cutoff profile. Plain: exp(-kappa/(1-t^2)) rescaled to [lo, hi].
/// Plateau: indicator of the inner interval convolved with a normalized cutoff,
/// equal to 1 on the inner interval and vanishing outside [lo, hi].
struct BumpProfile {
    double lo = -1.0;
    double hi = 1.0;
    double kappa = 1.0;
    std::optional<std::pair<double, double>> plateau;

    double operator()(double t) const {
        if (!plateau) {
            double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
            double s = (t - c) / r;
            if (std::abs(s) >= 1.0) return 0.0;
            return std::exp(-kappa / (1.0 - s * s));
        }
        // Inner [p0, p1]; mollifier half-width delta = min gap to the outer interval.
        double p0 = plateau->first, p1 = plateau->second;
        double delta = 0.5 * ((p0 - lo) + (hi - p1)) * 0.5;
        double a0 = p0 - delta, a1 = p1 + delta;
        // value(t) = int_{a0}^{a1} phi_delta(t - s) ds = tail((t - a1)/delta) - tail((t - a0)/delta)
        // with tail(u) = int_u^1 phi / Z.
        return tail((t - a1) / delta) - tail((t - a0) / delta);
    }

private:
    double cutoff(double s) const { return std::abs(s) < 1.0 ? std::exp(-kappa / (1.0 - s * s)) : 0.0; }
    double tail(double u) const {
        if (u >= 1.0) return 0.0;
        if (u <= -1.0) return 1.0;
        using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
        auto f = [this](double s) { return cutoff(s); };
        double z = GK::integrate(f, -1.0, 1.0, 15, 1e-14);
        if (u > 0.0) return GK::integrate(f, u, 1.0, 15, 1e-14) / z;
        return 1.0 - GK::integrate(f, -1.0, u, 15, 1e-14) / z;
    }
};

inline std::vector<BumpProfile> profilesFor(const Box& box, double kappa,
                                            const std::optional<Box>& plateau = std::nullopt) {
    std::vector<BumpProfile> out;
    for (std::size_t a = 0; a < box.size(); ++a) {
        BumpProfile p{box[a].first, box[a].second, kappa, std::nullopt};
        if (!(p.hi > p.lo)) throw ParameterError("bump interval must have positive length");
        if (plateau) {
            auto in = (*plateau)[a];
            if (!(in.first > p.lo && in.second < p.hi && in.second >= in.first))
                throw ParameterError("plateau interval must lie strictly inside the bump interval");
            if (std::abs((in.first - p.lo) - (p.hi - in.second)) > 1e-12 * (p.hi - p.lo))
                throw ParameterError("plateau interval must be centred in the bump interval");
            p.plateau = in;
        }
        out.push_back(p);
    }
    return out;
}

namespace detail {
template <class T>
T sampleProduct(const GridSpec& g, const std::vector<BumpProfile>& prof) {
    if (static_cast<int>(prof.size()) != g.dim) throw ParameterError("box dimension must equal grid dimension");
    for (const auto& p : prof)
        if (p.lo < -g.halfWidth || p.hi >= g.halfWidth) throw ParameterError("box lies outside the grid domain");
    T out(g);
    std::vector<std::vector<double>> axis(g.dim, std::vector<double>(g.points));
    for (int a = 0; a < g.dim; ++a)
        for (std::size_t j = 0; j < g.points; ++j) axis[a][j] = prof[a](g.coord(j));
    if (g.dim == 1) {
        for (std::size_t j = 0; j < g.points; ++j) out[j] = axis[0][j];
    } else {
        for (std::size_t a = 0; a < g.points; ++a)
            for (std::size_t b = 0; b < g.points; ++b) out[a * g.points + b] = axis[0][a] * axis[1][b];
    }
    return out;
}
}  // namespace detail

/// Separable bump exp(-kappa/(1-t^2)) per axis, rescaled to the box (optionally with plateau).
inline SampledFunction makeBump(const GridSpec& grid, const Box& box, double kappa,
                                const std::optional<Box>& plateau = std::nullopt) {
    return detail::sampleProduct<SampledFunction>(grid, profilesFor(box, kappa, plateau));
}

/// A generated input together with what is known about it exactly.
struct TestFunction {
    std::string name;
    SampledFunction f;
    std::optional<Spectrum> exactSpectrum;  // analytic samples of f-hat, when available
    double oracleRadius = std::numeric_limits<double>::quiet_NaN();  // sup-norm radius of supp f-hat
    std::optional<double> spatialRadius;                              // sup-norm radius of supp f
};

/// f with f-hat = bump on spectralBox, sampled on the frequency grid of `grid` and transformed back.
inline TestFunction makeBandlimited(const GridSpec& grid, const Box& spectralBox, double kappa,
                                    const std::optional<Box>& plateau = std::nullopt) {
    GridSpec fg = grid.frequencyGrid();
    Spectrum F = detail::sampleProduct<Spectrum>(fg, profilesFor(spectralBox, kappa, plateau));
    TestFunction t;
    t.name = "bandlimited";
    t.f = inverseFT(F);
    t.oracleRadius = supportRadiusSupNorm(F, 0.0);
    t.exactSpectrum = std::move(F);
    return t;
}

/// e^{-|x|^2/2}.
inline SampledFunction gaussian(const GridSpec& grid) {
    SampledFunction f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double r = f.euclidCoord(i);
        f[i] = std::exp(-0.5 * r * r);
    }
    return f;
}

inline constexpr int kHermiteCap = 60;

/// Hermite function e_k = (2^k k! sqrt(pi))^{-1/2} e^{-x^2/2} H_k(x) via the stable three-term recurrence.
inline SampledFunction hermiteFunction(int k, const GridSpec& grid) {
    if (k < 0 || k > kHermiteCap) throw CapExceededError("hermite index must lie in [0, 60]");
    if (grid.dim != 1) throw ParameterError("hermite functions are generated for d = 1");
    SampledFunction f(grid);
    for (std::size_t j = 0; j < grid.points; ++j) {
        double x = grid.coord(j);
        double prev = 0.0, cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
        for (int m = 0; m < k; ++m) {
            double next = std::sqrt(2.0 / (m + 1)) * x * cur - std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
            prev = cur;
            cur = next;
        }
        f[j] = cur;
    }
    return f;
}

namespace detail {

// Applies the multiplier eta^order along one axis of an nx-by-nk field via the 1-D transform of that axis.
inline void axisDerivative(std::vector<cplx>& data, std::size_t nx, std::size_t nk, const GridSpec& g, bool alongXi,
                           int orderD) {
    const std::size_t len = alongXi ? nk : nx, count = alongXi ? nx : nk;
    const GridSpec fg = g.frequencyGrid();
    std::vector<double> mult(len);
    for (std::size_t m = 0; m < len; ++m) {
        double eta = fg.coord(m);
        mult[m] = (m == 0 && (orderD % 2)) ? 0.0 : std::pow(eta, orderD);
    }
    parallelFor(count, [&](std::size_t c) {
        std::vector<cplx> line(len);
        for (std::size_t m = 0; m < len; ++m) line[m] = alongXi ? data[c * nk + m] : data[m * nk + c];
        line = forwardSamples(g, std::move(line));
        for (std::size_t m = 0; m < len; ++m) line[m] *= mult[m];
        line = inverseSamples(fg, std::move(line));
        for (std::size_t m = 0; m < len; ++m) (alongXi ? data[c * nk + m] : data[m * nk + c]) = line[m];
    });
}

}  // namespace detail

/// Applies L-hat = (D_xi/2 + x)^2 + (D_x/2 - xi)^2 to a Wigner-type field.
inline TimeFreqField applyTwistedLaplacian(const TimeFreqField& W) {
    const std::size_t nx = W.nx(), nk = W.nxi();
    auto deriv = [&](bool alongXi, int ord) {
        std::vector<cplx> d = W.samples;
        detail::axisDerivative(d, nx, nk, alongXi ? W.xiGrid : W.xGrid, alongXi, ord);
        return d;
    };
    const auto dXi = deriv(true, 1), dXi2 = deriv(true, 2), dX = deriv(false, 1), dX2 = deriv(false, 2);
    TimeFreqField out = W;
    for (std::size_t i = 0; i < nx; ++i) {
        double x = W.xGrid.coord(i);
        for (std::size_t k = 0; k < nk; ++k) {
            double xi = W.xiGrid.coord(k);
            std::size_t id = i * nk + k;
            out.samples[id] = 0.25 * dXi2[id] + x * dXi[id] + x * x * W.samples[id] + 0.25 * dX2[id] -
                              xi * dX[id] + xi * xi * W.samples[id];
        }
    }
    return out;
}

/// ||L-hat W - lambda W||_2 / ||W||_2 for W = Wig(e_j, e_k), lambda = 2k+1 unless given.
inline double twistedLaplacianResidual(int j, int k, const GridSpec& grid,
                                       std::optional<double> eigenvalue = std::nullopt) {
    if (j < 0 || k < 0 || j > 5 || k > 5) throw ParameterError("twisted Laplacian check needs 0 <= j, k <= 5");
    TimeFreqField W = wigner(hermiteFunction(j, grid), hermiteFunction(k, grid));
    TimeFreqField LW = applyTwistedLaplacian(W);
    const double lam = eigenvalue.value_or(2.0 * k + 1.0);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < W.samples.size(); ++i) {
        num += std::norm(LW.samples[i] - lam * W.samples[i]);
        den += std::norm(W.samples[i]);
    }
    return std::sqrt(num / den);
}

inline constexpr double kDefaultHalfWidth1d = 32.0 * std::numbers::pi;
inline constexpr std::size_t kDefaultPoints1d = 4096;
inline constexpr double kDefaultHalfWidth2d = 16.0 * std::numbers::pi;
inline constexpr std::size_t kDefaultPoints2d = 512;

inline GridSpec defaultGrid(int dim) {
    return dim == 1 ? GridSpec::make(1, kDefaultHalfWidth1d, kDefaultPoints1d)
                    : GridSpec::make(2, kDefaultHalfWidth2d, kDefaultPoints2d);
}

namespace detail {

inline std::string normalizeMinus(std::string s) {
    // U+2212 MINUS SIGN -> '-'
    const std::string minus = "\xE2\x88\x92";
    for (std::size_t p; (p = s.find(minus)) != std::string::npos;) s.replace(p, minus.size(), "-");
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parseNumber(const std::string& s, const std::string& ctx) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParameterError("cannot parse number '" + s + "' in " + ctx);
    }
}

inline Box parseBox(const std::string& s, const std::string& ctx) {
    Box box;
    for (const auto& part : split(s, 'x')) {
        if (part.size() < 5 || part.front() != '[' || part.back() != ']')
            throw ParameterError("malformed interval '" + part + "' in " + ctx);
        auto ends = split(part.substr(1, part.size() - 2), ',');
        if (ends.size() != 2) throw ParameterError("malformed interval '" + part + "' in " + ctx);
        box.emplace_back(parseNumber(ends[0], ctx), parseNumber(ends[1], ctx));
    }
    return box;
}

}  // namespace detail

/// Corpus entry by name:
///   bandlimited:[a,b][x[c,d]][:k<kappa>][:p<fraction>]   f-hat = bump on the box
///   spatialbump:[a,b][x[c,d]][:k<kappa>][:p<fraction>]   f = bump on the box
///   gaussian                                              e^{-|x|^2/2}
///   hermite:<k>                                           Hermite function e_k
/// p<fraction> selects the plateau variant with an inner box scaled by the fraction.
inline TestFunction makeTestFunction(const std::string& rawName, const GridSpec& grid) {
    const std::string name = detail::normalizeMinus(rawName);
    auto parts = detail::split(name, ':');
    const std::string kind = parts[0];
    TestFunction t;
    if (kind == "gaussian") {
        if (parts.size() != 1) throw ParameterError("gaussian takes no parameters");
        t.f = gaussian(grid);
        t.oracleRadius = std::numeric_limits<double>::infinity();
    } else if (kind == "hermite") {
        if (parts.size() != 2) throw ParameterError("hermite needs an index, e.g. hermite:3");
        double k = detail::parseNumber(parts[1], name);
        if (k != std::floor(k)) throw ParameterError("hermite index must be an integer");
        t.f = hermiteFunction(static_cast<int>(k), grid);
        t.oracleRadius = std::numeric_limits<double>::infinity();
    } else if (kind == "bandlimited" || kind == "spatialbump") {
        if (parts.size() < 2) throw ParameterError(kind + " needs a box, e.g. " + kind + ":[-1,1]");
        Box box = detail::parseBox(parts[1], name);
        if (static_cast<int>(box.size()) != grid.dim) throw ParameterError("box dimension does not match the grid");
        double kappa = 1.0;
        std::optional<Box> plateau;
        for (std::size_t i = 2; i < parts.size(); ++i) {
            const std::string& p = parts[i];
            if (p.size() > 1 && p[0] == 'k') {
                kappa = detail::parseNumber(p.substr(1), name);
                if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
            } else if (p.size() > 1 && p[0] == 'p') {
                double frac = detail::parseNumber(p.substr(1), name);
                if (!(frac > 0.0 && frac < 1.0)) throw ParameterError("plateau fraction must lie in (0,1)");
                Box inner;
                for (auto [lo, hi] : box) {
                    double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo) * frac;
                    inner.emplace_back(c - r, c + r);
                }
                plateau = inner;
            } else {
                throw ParameterError("unknown corpus parameter '" + p + "' in " + name);
            }
        }
        if (kind == "bandlimited") {
            t = makeBandlimited(grid, box, kappa, plateau);
        } else {
            t.f = makeBump(grid, box, kappa, plateau);
            t.spatialRadius = supportRadiusSupNorm(t.f, 0.0);
            t.oracleRadius = std::numeric_limits<double>::infinity();
        }
    } else {
        throw ParameterError("unknown corpus kind '" + kind + "'");
    }
    t.name = rawName;
    return t;
}

}  // namespace pwlab

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pwlab/corpus.hpp"
#include "pwlab/io.hpp"
#include "pwlab/signal.hpp"

using namespace pwlab;

namespace {

constexpr double kPi = std::numbers::pi;

double maxDiff(const GridSamples& a, const GridSamples& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

SampledFunction randomDecaying(const GridSpec& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    SampledFunction f = gaussian(g);
    for (auto& v : f.samples) v *= cplx(n(rng), n(rng));
    return f;
}

}  // namespace

TEST(Grid, MakeValidatesArguments) {
    EXPECT_THROW(GridSpec::make(3, 10.0, 256), ParameterError);
    EXPECT_THROW(GridSpec::make(1, -1.0, 256), ParameterError);
    EXPECT_THROW(GridSpec::make(1, 10.0, 300), ParameterError);
    EXPECT_THROW(GridSpec::make(1, 10.0, 128), ParameterError);
    const GridSpec g = GridSpec::make(1, 8.0, 256);
    EXPECT_DOUBLE_EQ(g.spacing(), 1.0 / 16.0);
    EXPECT_DOUBLE_EQ(g.coord(0), -8.0);
    EXPECT_DOUBLE_EQ(g.frequencyGrid().halfWidth, 16.0 * kPi);
    EXPECT_DOUBLE_EQ(g.frequencyGrid().spacing(), kPi / 8.0);
    EXPECT_EQ(GridSpec::make(2, 8.0, 256).size(), 256u * 256u);
}

TEST(Fourier, RoundTripIsIdentity) {
    for (int d : {1, 2}) {
        const GridSpec g = GridSpec::make(d, 20.0, 256);
        const SampledFunction f = randomDecaying(g, 3 + d);
        const SampledFunction back = inverseFT(forwardFT(f));
        EXPECT_LE(maxDiff(f, back), 1e-12 * f.maxAbs()) << "d=" << d;
    }
}

TEST(Fourier, GaussianMatchesClosedForm) {
    const GridSpec g = GridSpec::make(1, 20.0, 256);
    const Spectrum F = forwardFT(gaussian(g));
    double err = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double xi = F.grid.coord(k);
        err = std::max(err, std::abs(F[k] - std::sqrt(2.0 * kPi) * std::exp(-0.5 * xi * xi)));
    }
    EXPECT_LE(err, 1e-12);
}

TEST(Fourier, PlancherelOnRandomInputs) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const GridSpec g = GridSpec::make(1, 20.0, 512);
        const SampledFunction f = randomDecaying(g, seed);
        const Spectrum F = forwardFT(f);
        double a = 0.0, b = 0.0;
        for (auto v : f.samples) a += std::norm(v);
        for (auto v : F.samples) b += std::norm(v);
        a *= g.spacing();
        b *= F.grid.spacing();
        EXPECT_NEAR(b, 2.0 * kPi * a, 1e-12 * b);
    }
}

TEST(Fourier, BoundaryGuardRejectsNonDecayingInput) {
    const GridSpec g = GridSpec::make(1, 10.0, 256);
    SampledFunction one(g, std::vector<cplx>(g.size(), 1.0));
    try {
        forwardFT(one);
        FAIL() << "expected PeriodizationError";
    } catch (const PeriodizationError& e) {
        EXPECT_EQ(e.guard(), "boundary-decay");
        EXPECT_NEAR(e.shellRatio(), 1.0, 1e-15);
    }
    SampledFunction bad = gaussian(g);
    bad[10] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(forwardFT(bad), DataError);
}

TEST(SpectralDerivative, GaussianFirstDerivative) {
    const GridSpec g = GridSpec::make(1, 20.0, 256);
    const SampledFunction f = gaussian(g);
    const SampledFunction Df = spectralDerivative(f, {1});
    double err = 0.0;
    for (std::size_t j = 0; j < g.points; ++j) {
        const double x = g.coord(j);
        err = std::max(err, std::abs(Df[j] - cplx(0.0, x) * f[j]));
    }
    EXPECT_LE(err, 1e-12);
}

TEST(SpectralDerivative, ComposesAlongAxes) {
    const GridSpec g = GridSpec::make(2, 20.0, 256);
    const SampledFunction f = gaussian(g);
    const SampledFunction a = spectralDerivative(spectralDerivative(f, {1, 0}), {0, 2});
    const SampledFunction b = spectralDerivative(f, {1, 2});
    EXPECT_LE(maxDiff(a, b), 1e-9 * b.maxAbs());
    EXPECT_EQ(maxDiff(spectralDerivative(f, {0, 0}), f), 0.0);
    EXPECT_THROW(spectralDerivative(f, {40, 40}), ParameterError);
}

TEST(SpectralDerivative, NyquistGuardFiresOnUnresolvedSpectrum) {
    const GridSpec g = GridSpec::make(1, 20.0, 256);
    SampledFunction narrow(g);
    for (std::size_t j = 0; j < g.points; ++j) narrow[j] = std::exp(-0.5 * std::pow(g.coord(j) / 0.1, 2));
    try {
        spectralDerivative(narrow, {1});
        FAIL() << "expected NyquistError";
    } catch (const NyquistError& e) {
        EXPECT_EQ(e.guard(), "nyquist-saturation");
    }
}

TEST(Norms, WeightedNormsMatchDirectSums) {
    const GridSpec g = GridSpec::make(1, 20.0, 512);
    const SampledFunction f = randomDecaying(g, 9);
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    double s2 = 0.0, s1w = 0.0, sup = 0.0;
    for (std::size_t j = 0; j < g.points; ++j) {
        const double a = std::abs(f[j]), x = std::abs(g.coord(j));
        s2 += a * a;
        s1w += a * std::exp(0.7 * std::sqrt(x / 3.0));
        sup = std::max(sup, a);
    }
    EXPECT_NEAR(lpNorm(f, 2.0).value(), std::sqrt(s2 * g.spacing()), 1e-12);
    EXPECT_NEAR(weightedLpNorm(f, 1.0, w, 0.7, 2).value(), s1w * g.spacing(), 1e-11 * s1w * g.spacing());
    EXPECT_NEAR(lpNorm(f, std::numeric_limits<double>::infinity()).value(), sup, 1e-14);
    EXPECT_TRUE(lpNorm(SampledFunction(g), 2.0).isZero());
    EXPECT_THROW(lpNorm(f, 0.5), ParameterError);
}

TEST(NormsProperty, HolderInequality) {
    const GridSpec g = GridSpec::make(1, 20.0, 256);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SampledFunction f = randomDecaying(g, 100 + seed), h = randomDecaying(g, 200 + seed);
        SampledFunction fh(g);
        for (std::size_t j = 0; j < g.points; ++j) fh[j] = f[j] * h[j];
        for (double p : {1.5, 2.0, 3.0}) {
            const double q = p / (p - 1.0);
            EXPECT_LE(lpNorm(fh, 1.0).log(), lpNorm(f, p).log() + lpNorm(h, q).log() + 1e-12);
        }
    }
}

TEST(LogMagnitude, AccumulatorsAvoidOverflow) {
    LogLpAccumulator acc(2.0, 0.0);
    for (int i = 0; i < 4; ++i) acc.add(1000.0);
    EXPECT_NEAR(acc.result(), 1000.0 + std::log(2.0), 1e-12);
    LogSumAccumulator s;
    s.add(-1e4);
    s.add(-std::numeric_limits<double>::infinity());
    EXPECT_NEAR(s.result(), -1e4, 1e-12);
    EXPECT_EQ(LogSumAccumulator().result(), -std::numeric_limits<double>::infinity());
    EXPECT_NEAR((LogMagnitude::fromLog(800.0) * LogMagnitude::fromLog(900.0)).log(), 1700.0, 1e-12);
    EXPECT_NEAR(LogMagnitude::fromLog(800.0).pow(0.5).log(), 400.0, 1e-12);
}

TEST(TimeFreqNorms, SeparableFieldFactorizes) {
    const GridSpec gx = GridSpec::make(1, 10.0, 256), gk = GridSpec::make(1, 5.0, 256);
    TimeFreqField F{gx, gk, std::vector<cplx>(gx.points * gk.points), TransformKind::STFT};
    SampledFunction a(gx), b(gk);
    for (std::size_t i = 0; i < gx.points; ++i) a[i] = std::exp(-std::abs(gx.coord(i)));
    for (std::size_t k = 0; k < gk.points; ++k) b[k] = 1.0 / (1.0 + gk.coord(k) * gk.coord(k));
    for (std::size_t i = 0; i < gx.points; ++i)
        for (std::size_t k = 0; k < gk.points; ++k) F.at(i, k) = a[i] * b[k];
    for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{1.0, 3.0}, std::pair{4.0, 1.0}})
        EXPECT_NEAR(mixedLpqNorm(F, p, q).log(), lpNorm(a, p).log() + lpNorm(b, q).log(), 1e-12);
    const LogAbsField cached(F);
    EXPECT_EQ(mixedLpqNorm(cached, 2.0, 2.0).log(), mixedLpqNorm(F, 2.0, 2.0).log());
}

TEST(SupportRadius, BandlimitedSpectrumWithinOneCell) {
    const GridSpec g = defaultGrid(1);
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, 10.0);
    const double cell = t.exactSpectrum->grid.spacing();
    const double r = supportRadiusSupNorm(*t.exactSpectrum, 0.0);
    EXPECT_LE(r, 1.0);
    EXPECT_GE(r, 1.0 - cell);
    EXPECT_NEAR(supportRadiusSupNorm(forwardFT(t.f)), supportRadiusSupNorm(*t.exactSpectrum), cell);
    EXPECT_EQ(supportRadiusSupNorm(Spectrum(g.frequencyGrid())), 0.0);
    const auto ext = supportExtent(*makeBandlimited(g, {{0.8, 1.0}}, 10.0).exactSpectrum, 0.0);
    EXPECT_GE(ext.lo[0], 0.8);
    EXPECT_LE(ext.hi[0], 1.0);
}

TEST(Io, SamplesRoundTripAtSinglePrecision) {
    const auto dir = std::filesystem::temp_directory_path() / "pwlab_io_test";
    std::filesystem::create_directories(dir);
    const GridSpec g = GridSpec::make(2, 12.0, 256);
    const SampledFunction f = randomDecaying(g, 42);
    io::writeSamples(dir / "f", f);
    const SampledFunction back = io::readSamples(dir / "f");
    EXPECT_TRUE(back.grid == g);
    EXPECT_LE(maxDiff(f, back), 1e-7 * f.maxAbs());
    std::filesystem::resize_file(std::filesystem::path(dir / "f").concat(".bin"), 16);
    EXPECT_THROW(io::readSamples(dir / "f"), DataError);
    EXPECT_THROW(io::readSamples(dir / "missing"), ParameterError);
    std::filesystem::remove_all(dir);
}

TEST(Parallel, ResultsIndependentOfThreadCount) {
    const GridSpec g = GridSpec::make(1, 10.0, 512), gk = GridSpec::make(1, 10.0, 512);
    TimeFreqField F{g, gk, std::vector<cplx>(g.points * gk.points), TransformKind::STFT};
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    for (auto& v : F.samples) v = cplx(n(rng), n(rng));
    setThreadCount(1);
    const double one = mixedLpqNorm(F, 3.0, 1.5).log();
    setThreadCount(3);
    const double three = mixedLpqNorm(F, 3.0, 1.5).log();
    setThreadCount(1);
    EXPECT_EQ(one, three);
}

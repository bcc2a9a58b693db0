#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pwlab/corpus.hpp"
#include "pwlab/estimators.hpp"
#include "pwlab/transforms.hpp"

using namespace pwlab;

namespace {

const TestFunction& band() {
    static const TestFunction t = makeBandlimited(defaultGrid(1), {{-1.0, 1.0}}, 10.0);
    return t;
}

double derivativeLimit(const SampledFunction& f, const WeightFunction* w = nullptr, double lambda = 0.0) {
    return extrapolateLimit(derivativeGrowthSequence(f, w, lambda, 2.0, 40)).rootLimit;
}

TimeFreqField normalized(TimeFreqField F) {
    const double l = mixedLpqNorm(F, 2.0, 2.0).log();
    for (auto& v : F.samples) v *= std::exp(-l);
    return F;
}

RadiusSequence synthetic(const std::function<double(int)>& L, int nMax) {
    RadiusSequence s;
    for (int n = 0; n <= nMax; ++n) s.entries.push_back({n, LogMagnitude::fromLog(L(n))});
    s.nUsed = nMax;
    return s;
}

}  // namespace

TEST(DerivativeGrowth, RecoversBandlimitedRadius) {
    const RadiusSequence s = derivativeGrowthSequence(band().f, nullptr, 0.0, 2.0, 40);
    EXPECT_EQ(s.nUsed, 40);
    EXPECT_EQ(s.reason, TruncationReason::Cap);
    // Nominal box edge; the last nonzero grid sample sits one cell inside it.
    const RadiusEstimate e = extrapolateLimit(s, 1.0);
    EXPECT_LE(e.relErrRoot, 0.03);
    EXPECT_LE(e.relErrRatio, 0.01);
    EXPECT_FALSE(e.divergent);
}

TEST(DerivativeGrowth, InvariantUnderTranslation) {
    const WeightFunction w = WeightFunction::logWeight();
    const double dx = band().f.grid.spacing();
    const double base = derivativeLimit(band().f, &w, 1.0);
    for (double shift : {-200.0 * dx, 120.0 * dx})
        EXPECT_NEAR(derivativeLimit(translate(band().f, {shift}), &w, 1.0), base, 0.02 * base) << shift;
}

TEST(DerivativeGrowth, ModulationShiftsTheSupport) {
    const double xi0 = 16.0 * band().f.grid.frequencyGrid().spacing();
    ASSERT_DOUBLE_EQ(xi0, 0.5);
    EXPECT_NEAR(derivativeLimit(modulate(band().f, {xi0})), 1.5, 0.03 * 1.5);
}

TEST(DerivativeGrowth, DilationScalesTheRadius) {
    for (double s : {0.5, 2.0}) {
        const GridSpec g = GridSpec::make(1, s * band().f.grid.halfWidth, band().f.grid.points);
        // Same samples on a stretched grid are the samples of f(x/s).
        const SampledFunction fs(g, band().f.samples);
        const double oracle = 1.0 / s;  // spectral box edge
        EXPECT_NEAR(derivativeLimit(fs), oracle, 0.03 * oracle) << s;
    }
}

TEST(DerivativeGrowth, IndependentOfWeightStrength) {
    for (const WeightFunction& w : {WeightFunction::logWeight(), WeightFunction::powerWeight(0.5)}) {
        double lo = 1e300, hi = 0.0;
        for (double lambda : {0.0, 0.5, 1.0}) {
            const double r = derivativeLimit(band().f, &w, lambda);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        EXPECT_LE((hi - lo) / lo, 0.02) << w.id();
    }
}

TEST(DerivativeGrowthProperty, WeightOnlyIncreasesEntries) {
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    const RadiusSequence a = derivativeGrowthSequence(band().f, &w, 0.0, 2.0, 20);
    const RadiusSequence b = derivativeGrowthSequence(band().f, &w, 1.0, 2.0, 20);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        EXPECT_GE(b.entries[i].logNorm.log(), a.entries[i].logNorm.log() - 1e-12);
}

TEST(DerivativeGrowth, ArgumentChecksAndZeroInput) {
    const WeightFunction w = WeightFunction::logWeight();
    EXPECT_THROW(derivativeGrowthSequence(band().f, &w, -1.0, 2.0, 10), ParameterError);
    EXPECT_THROW(derivativeGrowthSequence(band().f, nullptr, 1.0, 2.0, 10), ParameterError);
    EXPECT_THROW(derivativeGrowthSequence(band().f, nullptr, 0.0, 0.5, 10), ParameterError);
    const RadiusSequence z = derivativeGrowthSequence(SampledFunction(defaultGrid(1)), nullptr, 0.0, 2.0, 10);
    EXPECT_TRUE(z.zeroInput);
    const RadiusEstimate e = extrapolateLimit(z, 1.0);
    EXPECT_EQ(e.rootLimit, 0.0);
    EXPECT_FALSE(e.divergent);
}

TEST(DerivativeGrowth, NonBandlimitedInputsDiverge) {
    const RadiusSequence s = derivativeGrowthSequence(hermiteFunction(3, defaultGrid(1)), nullptr, 0.0, 2.0, 40);
    EXPECT_EQ(s.reason, TruncationReason::NoiseFloor);
    EXPECT_LT(s.nUsed, 40);
    EXPECT_TRUE(extrapolateLimit(s).divergent);
}

TEST(Extrapolation, ExactOnTheAsymptoticModel) {
    const double R = 1.7;
    const RadiusSequence s = synthetic(
        [&](int n) { return n == 0 ? 2.0 : n * std::log(R) + 0.3 * std::sqrt(n) - 0.5 * std::log(n) + 2.0; }, 40);
    const RadiusEstimate e = extrapolateLimit(s, R);
    EXPECT_LE(e.relErrRoot, 1e-8);
    // The two-step ratio fit is only asymptotically exact for this model.
    EXPECT_LE(e.relErrRatio, 1e-3);
    EXPECT_FALSE(e.divergent);
}

TEST(Extrapolation, GeometricAndFactorialSequences) {
    const RadiusEstimate g = extrapolateLimit(synthetic([](int n) { return std::log(3.0) + n * std::log(2.0); }, 30));
    EXPECT_NEAR(g.rootLimit, 2.0, 1e-10);
    EXPECT_NEAR(g.lastRatio, 2.0, 1e-12);
    EXPECT_FALSE(g.divergent);
    const RadiusEstimate f = extrapolateLimit(synthetic([](int n) { return std::lgamma(n + 1.0); }, 30));
    EXPECT_TRUE(f.divergent);
}

TEST(WignerMoments, XiMomentRecoversRadius) {
    const GridSpec g = GridSpec::make(1, 64.0 * std::numbers::pi, 1024);
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, 10.0);
    const RadiusEstimate e =
        extrapolateLimit(wignerMomentSequence(t.f, MomentAxis::Xi, nullptr, 0.0, 0.0, 2.0, 2.0, 40), 1.0);
    EXPECT_LE(e.relErrRoot, 0.05);
    EXPECT_THROW(wignerMomentSequence(stft(t.f, t.f), MomentAxis::Xi, nullptr, 0.0, 0.0, 2.0, 2.0, 10),
                 ParameterError);
}

TEST(GaborMoments, ReflectedWindowDoublesTheRadius) {
    const GridSpec g = GridSpec::make(1, 64.0 * std::numbers::pi, 1024);
    const TestFunction t = makeBandlimited(g, {{-1.0, 1.0}}, 10.0);
    const TimeFreqField V = normalized(stft(t.f, reflect(t.f)));
    const RadiusEstimate e = extrapolateLimit(gaborMomentSequence(V, nullptr, 0.0, 0.0, 2.0, 2.0, 40), 2.0);
    EXPECT_LE(e.relErrRoot, 0.05);
}

TEST(PwSeminorm, DichotomyAroundTheRadius) {
    const WeightFunction w = WeightFunction::logWeight();
    // Near the smooth spectral edge the R = 0.8 profile only starts to grow past order ~300.
    const DiagnosticTable above = pwSeminormCheck(band().f, 1.1, &w, {0.0, 1.0}, 800);
    const DiagnosticTable below = pwSeminormCheck(band().f, 0.8, &w, {0.0, 1.0}, 800);
    ASSERT_EQ(above.rows.size(), 2u);
    for (const auto& row : above.rows) {
        EXPECT_LE(profileGrowth(row), 10.0);
        for (std::size_t i = 1; i < row.values.size(); ++i) EXPECT_GE(row.values[i], row.values[i - 1]);
    }
    for (const auto& row : below.rows) EXPECT_GE(profileGrowth(row), 1e3);
    EXPECT_THROW(pwSeminormCheck(band().f, 0.0, &w, {0.0}, 10), ParameterError);
    const DiagnosticTable zero = pwSeminormCheck(SampledFunction(defaultGrid(1)), 1.0, &w, {0.0}, 5);
    EXPECT_TRUE(std::isinf(zero.rows[0].values.back()));
}

TEST(AnalyticGrowth, AsymmetricSupportGivesAsymmetricSlopes) {
    const TestFunction t = makeBandlimited(defaultGrid(1), {{0.8, 1.0}}, 10.0);
    const WeightFunction w = WeightFunction::logWeight();
    const DiagnosticTable tab = analyticGrowthCheck(*t.exactSpectrum, 1.0, w, {0.0}, {{-400.0}, {-200.0}, {200.0}, {400.0}});
    auto logF = [&](std::size_t j, double y) { return tab.rows[0].values[j] + std::abs(y); };
    const double slopeNeg = (logF(0, -400.0) - logF(1, -200.0)) / 200.0;
    const double slopePos = (logF(3, 400.0) - logF(2, 200.0)) / 200.0;
    // log|f(iy)| grows like |y| * max(supp) for y -> -inf and decays like y * min(supp) for y -> +inf.
    EXPECT_NEAR(slopeNeg, 1.0, 0.05);
    EXPECT_NEAR(slopePos, -0.8, 0.05);
    EXPECT_THROW(analyticGrowthCheck(*t.exactSpectrum, 0.5, w, {0.0}, {{1.0}}), ParameterError);
}

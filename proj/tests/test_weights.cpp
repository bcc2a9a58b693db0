#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pwlab/weights.hpp"

using pwlab::WeightFunction;

namespace {

std::vector<WeightFunction> shippedWeights() {
    return {WeightFunction::logWeight(), WeightFunction::powerWeight(0.3), WeightFunction::powerWeight(0.5),
            WeightFunction::powerWeight(0.9)};
}

}  // namespace

TEST(Weights, ValuesMatchClosedForms) {
    const auto lw = WeightFunction::logWeight();
    const auto pw = WeightFunction::powerWeight(0.5);
    EXPECT_DOUBLE_EQ(lw(0.0), 0.0);
    EXPECT_NEAR(lw(std::exp(1.0) - 1.0), 1.0, 1e-15);
    EXPECT_NEAR(pw(9.0), 3.0, 1e-15);
    const double z[2] = {3.0, 4.0};
    EXPECT_NEAR(pw(std::span<const double>(z, 2)), std::sqrt(5.0), 1e-15);
    EXPECT_EQ(lw.id(), "log");
    EXPECT_EQ(pw.id(), "power:0.5");
}

TEST(Weights, PhiIsOmegaOfExponential) {
    for (const auto& w : shippedWeights())
        for (double t : {-3.0, 0.0, 0.7, 5.0, 20.0}) EXPECT_NEAR(w.phi(t), w(std::exp(t)), 1e-12 * (1.0 + w(std::exp(t))));
    EXPECT_NEAR(WeightFunction::logWeight().phi(800.0), 800.0, 1e-9);
}

TEST(Weights, RejectsInvalidArguments) {
    EXPECT_THROW(WeightFunction::powerWeight(1.0), pwlab::DomainError);
    EXPECT_THROW(WeightFunction::powerWeight(0.0), pwlab::DomainError);
    EXPECT_THROW(WeightFunction::powerWeight(std::nan("")), pwlab::DomainError);
    EXPECT_THROW(WeightFunction::logWeight()(-1e-3), pwlab::DomainError);
    const double z[1] = {std::numeric_limits<double>::infinity()};
    EXPECT_THROW(WeightFunction::logWeight()(std::span<const double>(z, 1)), pwlab::DomainError);
    EXPECT_THROW(pwlab::scaledYoungConjugate(WeightFunction::logWeight(), 0.0, 1.0), pwlab::DomainError);
    EXPECT_THROW(pwlab::scaledYoungConjugate(WeightFunction::logWeight(), 1.0, -1.0), pwlab::DomainError);
    EXPECT_THROW(pwlab::checkWeightConditions(WeightFunction::logWeight(), {0.0, 1.0}), pwlab::ParameterError);
}

TEST(Weights, ShippedWeightsSatisfyAxioms) {
    const auto grid = pwlab::defaultConditionGrid();
    for (const auto& w : shippedWeights()) {
        const auto r = pwlab::checkWeightConditions(w, grid);
        EXPECT_TRUE(r.allAxioms()) << w.id();
        EXPECT_TRUE(r.subadditive) << w.id();
        EXPECT_GT(r.gammaB, 0.0) << w.id();
    }
}

TEST(Weights, BmmHoldsForPowersNotForLog) {
    const auto grid = pwlab::defaultConditionGrid();
    EXPECT_TRUE(pwlab::checkWeightConditions(WeightFunction::powerWeight(0.5), grid).bmm);
    EXPECT_NEAR(*WeightFunction::powerWeight(0.5).flags().bmmH, 4.0, 1e-12);
    EXPECT_FALSE(pwlab::checkWeightConditions(WeightFunction::logWeight(), grid).bmm);
}

TEST(WeightsProperty, SubadditiveAndPhiConvexOnRandomSamples) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logT(-8.0, 12.0);
    for (const auto& w : shippedWeights()) {
        for (int i = 0; i < 5000; ++i) {
            const double s = std::exp(logT(rng)), t = std::exp(logT(rng));
            EXPECT_LE(w(s + t), w(s) + w(t) + 1e-12 * (1.0 + w(s + t)));
            const double u = logT(rng), v = logT(rng);
            EXPECT_LE(w.phi(0.5 * (u + v)), 0.5 * (w.phi(u) + w.phi(v)) * (1.0 + 1e-12) + 1e-12);
        }
    }
}

TEST(YoungConjugate, PowerHalfClosedForm) {
    const auto w = WeightFunction::powerWeight(0.5);
    // phi(t) = e^{t/2}: phi^*(s) = 2s log(2s) - 2s for s >= 1/2.
    EXPECT_NEAR(pwlab::scaledYoungConjugate(w, 1.0, 2.0), 4.0 * std::log(4.0) - 4.0, 1e-8);
    EXPECT_NEAR(pwlab::scaledYoungConjugate(w, 1.0, 2.0), 1.545177, 1e-6);
    EXPECT_NEAR(pwlab::scaledYoungConjugate(w, 2.0, 2.0), 2.0 * (2.0 * std::log(2.0) - 2.0), 1e-8);
    for (double s = 0.5; s <= 50.0; s += 0.5)
        EXPECT_NEAR(pwlab::scaledYoungConjugate(w, 1.0, s), 2.0 * s * std::log(2.0 * s) - 2.0 * s,
                    1e-8 * (1.0 + s * std::log(2.0 * s)));
}

TEST(YoungConjugate, LogWeightIsNegativeBinaryEntropy) {
    const auto w = WeightFunction::logWeight();
    // phi(t) = log(1 + e^t) restricted to t >= 0.
    for (double s : {0.5, 0.6, 0.75, 0.9, 0.99})
        EXPECT_NEAR(pwlab::scaledYoungConjugate(w, 1.0, s), s * std::log(s) + (1.0 - s) * std::log(1.0 - s), 1e-9);
    EXPECT_NEAR(pwlab::scaledYoungConjugate(w, 1.0, 0.2), -std::log(2.0), 1e-12);
    EXPECT_NEAR(pwlab::scaledYoungConjugate(w, 1.0, 1.0), 0.0, 1e-9);
    EXPECT_TRUE(std::isinf(pwlab::scaledYoungConjugate(w, 1.0, 1.5)));
}

TEST(YoungConjugateProperty, SuperadditiveAndMonotone) {
    const auto w = WeightFunction::powerWeight(0.5);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> s(0.5, 25.0), lam(0.5, 3.0);
    for (int i = 0; i < 300; ++i) {
        const double a = s(rng), b = s(rng), l = lam(rng);
        const double fa = pwlab::scaledYoungConjugate(w, l, a), fb = pwlab::scaledYoungConjugate(w, l, b);
        EXPECT_GE(pwlab::scaledYoungConjugate(w, l, a + b), fa + fb - 1e-7 * (1.0 + std::abs(fa) + std::abs(fb)));
        EXPECT_GE(pwlab::scaledYoungConjugate(w, l, std::max(a, b)), std::min(fa, fb) - 1e-9);
        // Larger lambda lowers lambda phi^*(s/lambda).
        EXPECT_LE(pwlab::scaledYoungConjugate(w, l + 0.5, a), fa + 1e-9);
    }
}

TEST(YoungConjugate, TableCarriesWeightAndLambda) {
    const auto t = pwlab::makeYoungConjugateTable(WeightFunction::powerWeight(0.5), 1.5, {0.5, 1.0, 2.0});
    EXPECT_EQ(t.weightId, "power:0.5");
    EXPECT_EQ(t.lambda, 1.5);
    ASSERT_EQ(t.samples.size(), 3u);
    EXPECT_EQ(t.samples[2].first, 2.0);
}

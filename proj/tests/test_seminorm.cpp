#include <cmath>

#include <gtest/gtest.h>

#include "pwlab/corpus.hpp"
#include "pwlab/seminorm.hpp"

using namespace pwlab;

namespace {

GridSpec smallGrid() { return GridSpec::make(1, 12.0, 256); }

}  // namespace

TEST(Seminorm, ConditionNamesRoundTrip) {
    for (int c = 0; c < 8; ++c) {
        const auto cond = static_cast<SeminormCondition>(c);
        EXPECT_EQ(parseCondition(conditionName(cond)), cond);
    }
    EXPECT_EQ(parseCondition("e"), SeminormCondition::E);
    EXPECT_THROW(parseCondition("z'"), ParameterError);
}

TEST(Seminorm, WeightedSizeConditionMatchesWeightedNorm) {
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    const SampledFunction f = gaussian(smallGrid());
    const DiagnosticTable t = seminormProfile(f, w, SeminormCondition::C, 2.0, 2.0, {2.0}, 0);
    ASSERT_EQ(t.rows.size(), 1u);
    ASSERT_EQ(t.rows[0].values.size(), 1u);
    EXPECT_TRUE(std::isfinite(t.rows[0].values[0]));
    EXPECT_NEAR(t.rows[0].values[0], weightedLpNorm(f, 2.0, w, 2.0, 0).log(), 1e-12);
    const DiagnosticTable h = seminormProfile(hermiteFunction(5, smallGrid()), w, SeminormCondition::C, 2.0, 2.0,
                                              {2.0}, 0);
    EXPECT_TRUE(std::isfinite(h.rows[0].values[0]));
}

TEST(Seminorm, SlowDecayBlowsUpUnderTheWeight) {
    const GridSpec g = GridSpec::make(1, 2000.0, 4096);
    SampledFunction f(g);
    for (std::size_t j = 0; j < g.points; ++j) f[j] = 1.0 / (1.0 + g.coord(j) * g.coord(j));
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    const DiagnosticTable t = seminormProfile(f, w, SeminormCondition::C, 2.0, 2.0, {0.0, 1.0}, 0);
    EXPECT_GE(t.rows[1].values[0] - t.rows[0].values[0], std::log(1e6));
}

TEST(Seminorm, ProfilesAreRunningSups) {
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    const SampledFunction f = gaussian(smallGrid());
    for (auto cond : {SeminormCondition::A, SeminormCondition::B, SeminormCondition::D, SeminormCondition::G}) {
        const DiagnosticTable t = seminormProfile(f, w, cond, 2.0, 2.0, {0.5, 1.0}, 12);
        for (const auto& row : t.rows) {
            ASSERT_EQ(row.values.size(), 13u);
            for (std::size_t i = 1; i < row.values.size(); ++i) EXPECT_GE(row.values[i], row.values[i - 1]);
        }
    }
}

TEST(Seminorm, PenalizedFamilyConvergesForGaussian) {
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    SeminormOptions opt;
    opt.fixedOrder = 1;
    const DiagnosticTable t = seminormProfile(gaussian(smallGrid()), w, SeminormCondition::D, 2.0, 2.0, {1.0}, 40, opt);
    EXPECT_NEAR(t.rows[0].values[40], t.rows[0].values[20], 1e-9);
}

TEST(Seminorm, WindowedConditionIsFinite) {
    const WeightFunction w = WeightFunction::powerWeight(0.5);
    const SampledFunction win = gaussian(smallGrid());
    SeminormOptions opt;
    opt.window = &win;
    const DiagnosticTable t = seminormProfile(hermiteFunction(2, smallGrid()), w, SeminormCondition::H, 2.0, 2.0,
                                              {0.0, 1.0}, 0, opt);
    EXPECT_TRUE(std::isfinite(t.rows[1].values[0]));
    EXPECT_GE(t.rows[1].values[0], t.rows[0].values[0]);
}

TEST(Seminorm, ArgumentChecks) {
    const WeightFunction w = WeightFunction::logWeight();
    const SampledFunction f = gaussian(smallGrid());
    EXPECT_THROW(seminormProfile(f, w, SeminormCondition::H, 2.0, 2.0, {1.0}, 0), ParameterError);
    EXPECT_THROW(seminormProfile(f, w, SeminormCondition::D, 2.0, 2.0, {0.0}, 4), ParameterError);
    EXPECT_THROW(seminormProfile(f, w, SeminormCondition::A, 2.0, 2.0, {1.0}, kDefaultMaxOrder + 1), ParameterError);
    EXPECT_THROW(seminormProfile(f, w, SeminormCondition::A, 0.5, 2.0, {1.0}, 4), ParameterError);
    SeminormOptions opt;
    opt.part = 3;
    EXPECT_THROW(seminormProfile(f, w, SeminormCondition::A, 2.0, 2.0, {1.0}, 4, opt), ParameterError);
}

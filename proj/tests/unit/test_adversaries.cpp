#include <gtest/gtest.h>

#include <cmath>

#include "ogdtrack/adversaries.hpp"
#include "oracles.hpp"

using namespace ogdtrack;

namespace {

const FeasibleSet kDisk = FeasibleSet::ball(Vector{0.0, 0.0}, 50.0);
constexpr LossParams kFirst{-100.0, 0.0, 30.0};
constexpr LossParams kSecond{100.0, 20.0, -50.0};

double center_path(const Scenario& sc) {
    double total = 0.0;
    for (int t = 2; t <= sc.horizon(); ++t) total += distance(sc.loss_at(t).center(), sc.loss_at(t - 1).center());
    return total;
}

double minimizer_path(const Scenario& sc) {
    double total = 0.0;
    Vector prev = minimizer(sc.loss_at(1), sc.set());
    for (int t = 2; t <= sc.horizon(); ++t) {
        Vector cur = minimizer(sc.loss_at(t), sc.set());
        total += distance(cur, prev);
        prev = cur;
    }
    return total;
}

}  // namespace

TEST(Switching, SwitchRoundsAndCounts) {
    const Scenario sc = switching(kFirst, kSecond, 100.0, 16, 100, kDisk);
    std::vector<int> switches;
    for (int t = 2; t <= 100; ++t) {
        if (!(sc.loss_at(t) == sc.loss_at(t - 1))) switches.push_back(t);
    }
    EXPECT_EQ(switches, (std::vector<int>{17, 33, 49, 65, 81, 97}));
    EXPECT_EQ(sc.loss_at(1), QuadraticLoss::planar(100.0, -100.0, 0.0, 30.0));
    EXPECT_EQ(sc.loss_at(17), QuadraticLoss::planar(100.0, 100.0, 20.0, -50.0));
    EXPECT_THROW(sc.loss_at(0), std::out_of_range);
    EXPECT_THROW(sc.loss_at(101), std::out_of_range);
}

TEST(Switching, PathLengthEqualsSwitchCountTimesJump) {
    const double jump = distance(minimizer(QuadraticLoss::planar(100, -100, 0, 30), kDisk),
                                 minimizer(QuadraticLoss::planar(100, 100, 20, -50), kDisk));
    for (int tau : {1, 2, 3, 4, 7, 8, 16, 33, 99, 100, 150}) {
        const Scenario sc = switching(kFirst, kSecond, 100.0, tau, 100, kDisk);
        const int count = (100 - 1) / tau;
        EXPECT_NEAR(minimizer_path(sc), count * jump, 1e-9 * (1 + count * jump)) << "tau=" << tau;
    }
    EXPECT_NEAR(minimizer_path(switching(kFirst, kSecond, 100.0, 8, 100, kDisk)), 1200.0, 1.0);
}

TEST(Switching, Validation) {
    EXPECT_THROW(switching(kFirst, kSecond, 100.0, 0, 100, kDisk), std::invalid_argument);
    EXPECT_THROW(switching(kFirst, kSecond, 100.0, 4, 0, kDisk), std::invalid_argument);
    EXPECT_THROW(switching(kFirst, kSecond, 100.0, 4, 10, FeasibleSet::ball(Vector{0.0}, 1.0)), DimensionError);
}

TEST(Diminishing, ScheduleMatchesExtendedPrecision) {
    const auto a = diminishing_schedule(-60.0, 5.0, 250);
    const auto ref = oracle::drift_schedule_ld(-60.0L, 5.0L, 250);
    EXPECT_EQ(a[1], -55.0);
    EXPECT_NEAR(a[2], -51.464466094067262, 1e-12);
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a[i], static_cast<double>(ref[i]), 1e-11);

    const Scenario sc = diminishing(-60.0, 100.0, 5.0, 100.0, 250, kDisk);
    EXPECT_EQ(sc.loss_at(3).center()[0], a[2]);
    EXPECT_EQ(sc.loss_at(200).center()[1], 100.0);
    EXPECT_EQ(sc.loss_at(200).offset(), 0.0);
}

TEST(Diminishing, MinimizerStepsShrinkOnceBoundaryBound) {
    const Scenario sc = diminishing(-60.0, 100.0, 5.0, 100.0, 250, kDisk);
    std::vector<double> steps;
    Vector prev = minimizer(sc.loss_at(1), kDisk);
    for (int t = 2; t <= 250; ++t) {
        const Vector cur = minimizer(sc.loss_at(t), kDisk);
        steps.push_back(distance(cur, prev));
        prev = cur;
    }
    // Late steps are tiny compared with early ones, and the tail is monotone.
    EXPECT_LT(steps.back(), 0.01 * *std::max_element(steps.begin(), steps.end()));
    for (std::size_t i = 150; i + 1 < steps.size(); ++i) ASSERT_LE(steps[i + 1], steps[i] * (1 + 1e-9));
}

TEST(Diminishing, ZeroDriftIsConstant) {
    const Scenario sc = diminishing(-60.0, 100.0, 0.0, 100.0, 50, kDisk);
    EXPECT_EQ(minimizer_path(sc), 0.0);
}

TEST(Preset, ConstantRegime) {
    const Scenario sc = preset({Regime::constant}, {-30.0, 10.0, 0.0}, 100.0, 100, kDisk);
    EXPECT_EQ(minimizer_path(sc), 0.0);
}

TEST(Preset, LogPathIsHarmonic) {
    // Oracle: direct harmonic partial sum, 4.1873775176396203.
    double harmonic = 0.0;
    for (int t = 2; t <= 100; ++t) harmonic += 1.0 / t;
    const Scenario sc = preset({Regime::log_path}, {-30.0, 10.0, 0.0}, 100.0, 100, kDisk);
    EXPECT_NEAR(minimizer_path(sc), harmonic, 1e-9);
    EXPECT_NEAR(harmonic, 4.1873775176396203, 1e-12);
}

TEST(Preset, PowerPath) {
    double expected = 0.0;
    for (int t = 2; t <= 100; ++t) expected += 1.0 / std::sqrt(static_cast<double>(t));
    const Scenario sc = preset({Regime::power_path, 0.5}, {-30.0, 10.0, 0.0}, 100.0, 100, kDisk);
    EXPECT_NEAR(minimizer_path(sc), expected, 1e-9);
}

TEST(Preset, ConstantDriftBouncesInsideTheSet) {
    const Scenario sc = preset({Regime::constant_drift, 0.5, 1.0}, {-30.0, 10.0, 0.0}, 100.0, 100, kDisk);
    EXPECT_EQ(minimizer_path(sc), 99.0);
    EXPECT_EQ(center_path(sc), 99.0);
    for (int t = 1; t <= 100; ++t) ASSERT_TRUE(contains(kDisk, sc.loss_at(t).center(), 0.0));

    // A long run must reverse direction at least once.
    const Scenario longer = preset({Regime::constant_drift, 0.5, 3.0}, {-30.0, 10.0, 0.0}, 100.0, 200, kDisk);
    EXPECT_NEAR(minimizer_path(longer), 3.0 * 199, 1e-9);
    for (int t = 1; t <= 200; ++t) ASSERT_TRUE(contains(kDisk, longer.loss_at(t).center(), 0.0));
}

TEST(Preset, FreeDriftLeavesTheSet) {
    PresetOptions opts;
    opts.keep_interior = false;
    opts.direction = Vector{0.0, 2.0};
    const Scenario sc = preset({Regime::constant_drift, 0.5, 1.0}, {0.0, 0.0, 0.0}, 1.0, 100, kDisk, opts);
    EXPECT_EQ(sc.loss_at(100).center(), (Vector{0.0, 99.0}));
}

TEST(Preset, Validation) {
    EXPECT_THROW(preset({Regime::power_path, 1.0}, {0, 0, 0}, 1.0, 10, kDisk), std::invalid_argument);
    EXPECT_THROW(preset({Regime::constant_drift, 0.5, 0.0}, {0, 0, 0}, 1.0, 10, kDisk), std::invalid_argument);
    EXPECT_THROW(preset({Regime::constant}, {100, 0, 0}, 1.0, 10, kDisk), std::invalid_argument);
    EXPECT_THROW(preset({Regime::constant_drift, 0.5, 200.0}, {0, 0, 0}, 1.0, 10, kDisk), std::invalid_argument);
    EXPECT_THROW(parse_regime("wobble"), std::invalid_argument);
    EXPECT_EQ(parse_regime("log_path"), Regime::log_path);
}

TEST(Scenario, GenerationIsDeterministic) {
    const Scenario a = diminishing(-60.0, 100.0, 5.0, 100.0, 250, kDisk);
    const Scenario b = diminishing(-60.0, 100.0, 5.0, 100.0, 250, kDisk);
    EXPECT_EQ(a.losses(), b.losses());
    const Scenario c = preset({Regime::constant_drift, 0.5, 2.5}, {-30.0, 10.0, 0.0}, 100.0, 300, kDisk);
    EXPECT_EQ(c.losses(), c.losses());
}

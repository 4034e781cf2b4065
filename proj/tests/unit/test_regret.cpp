#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ogdtrack/adversaries.hpp"
#include "ogdtrack/regret.hpp"
#include "ogdtrack/summation.hpp"
#include "oracles.hpp"

using namespace ogdtrack;

namespace {

const FeasibleSet kDisk = FeasibleSet::ball(Vector{0.0, 0.0}, 50.0);
const QuadraticLoss kF1 = QuadraticLoss::planar(100.0, -100.0, 0.0, 30.0);
const QuadraticLoss kF2 = QuadraticLoss::planar(100.0, 100.0, 20.0, -50.0);

// Plays OGD over `losses` and records a trace, independently of the harness.
Trace play(const std::vector<QuadraticLoss>& losses, const FeasibleSet& set, OGDConfig cfg, Vector x1) {
    std::vector<StepRecord> recs;
    const GradientFeed feed = [&](int t, const Vector& x) {
        const QuadraticLoss& loss = losses[static_cast<std::size_t>(t - 1)];
        const Vector star = minimizer(loss, set);
        const Vector g = grad(loss, x);
        recs.push_back({t, x, star, eval(loss, x), eval(loss, star), g, g.norm(), std::nullopt});
        return g;
    };
    const Trajectory tr = track(set, cfg, x1, static_cast<int>(losses.size()), feed);
    return Trace{std::move(recs), set, family_constants(losses, set), cfg, tr.final_action};
}

std::vector<QuadraticLoss> switching_losses(int tau, int T) {
    return switching({-100, 0, 30}, {100, 20, -50}, 100.0, tau, T, kDisk).losses();
}

}  // namespace

TEST(CompensatedSum, ForwardBackwardAgree) {
    auto g = oracle::rng(30);
    std::vector<double> v;
    for (int i = 0; i < 5000; ++i) v.push_back(std::pow(10.0, oracle::uniform(g, -8, 7)));
    const double fwd = compensated_sum(v);
    std::reverse(v.begin(), v.end());
    const double bwd = compensated_sum(v);
    EXPECT_LE(std::abs(fwd - bwd), 1e-10 * std::abs(fwd));
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    EXPECT_DOUBLE_EQ(s.value(), 1.0);
}

TEST(DynamicRegret, PerfectTrackingIsZero) {
    const auto losses = switching_losses(1, 1);
    Trace trace = play(losses, kDisk, {200.0, 1.0}, minimizer(kF1, kDisk));
    EXPECT_NEAR(dynamic_regret(trace), 0.0, 1e-9);
    EXPECT_THROW(dynamic_regret(trace, 2), std::out_of_range);
    Trace empty{{}, kDisk, {2, 200, 1}, {200, 1}, std::nullopt};
    EXPECT_THROW(dynamic_regret(empty, 1), std::invalid_argument);
}

TEST(DynamicRegret, SwitchingRunsMatchReportedValues) {
    // Reported: 1.28e7 / 2.48e7 / 4.88e7 for tau = 16 / 8 / 4.
    const std::pair<int, double> cases[] = {{16, 1.28e7}, {8, 2.48e7}, {4, 4.88e7}};
    for (const auto& [tau, reported] : cases) {
        const Trace trace = play(switching_losses(tau, 100), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
        EXPECT_NEAR(dynamic_regret(trace), reported, 0.1 * reported) << "tau=" << tau;
    }
}

TEST(PathLength, SwitchingCounts) {
    const std::pair<int, double> cases[] = {{16, 600.0}, {8, 1200.0}, {4, 2400.0}, {200, 0.0}};
    for (const auto& [tau, expected] : cases) {
        const Trace trace = play(switching_losses(tau, 100), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
        EXPECT_NEAR(path_length(trace), expected, 1.0) << "tau=" << tau;
    }
}

TEST(PathLength, MonotoneAndRegretTermsNonnegative) {
    const Trace trace = play(switching_losses(8, 100), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    for (int t = 2; t <= trace.horizon(); ++t) {
        ASSERT_GE(path_length(trace, t), path_length(trace, t - 1));
        ASSERT_GE(dynamic_regret(trace, t), dynamic_regret(trace, t - 1));
        ASSERT_GE(trace.records[static_cast<std::size_t>(t - 1)].f_x,
                  trace.records[static_cast<std::size_t>(t - 1)].f_star);
    }
}

TEST(StaticRegret, ConstantLossAtMinimizerIsZero) {
    const std::vector<QuadraticLoss> losses(20, kF2);
    const Trace trace = play(losses, kDisk, {200.0, 1.0}, minimizer(kF2, kDisk));
    EXPECT_NEAR(static_regret(trace, losses), 0.0, 1e-6);
}

TEST(StaticRegret, TwoRoundComparatorMatchesGrid) {
    // Aggregate of f1 + f2 has center [0; 10], interior of the disk.
    const std::vector<QuadraticLoss> losses{kF1, kF2};
    const Trace trace = play(losses, kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    const auto best = oracle::grid_argmin(
        [](double x, double y) {
            return 100 * (x + 100) * (x + 100) + y * y + 30 + 100 * (x - 100) * (x - 100) + (y - 20) * (y - 20) - 50;
        },
        oracle::Region{true, 0, 0, 50}, 0.25);
    const double expected = trace.records[0].f_x + trace.records[1].f_x - best.value;
    EXPECT_NEAR(static_regret(trace, losses), expected, 1e-9 * std::abs(expected));
    EXPECT_LE(static_regret(trace, losses), dynamic_regret(trace));
}

TEST(StaticRegret, NeverExceedsDynamicRegret) {
    for (int tau : {1, 3, 4, 8, 16, 50}) {
        const auto losses = switching_losses(tau, 100);
        const Trace trace = play(losses, kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
        EXPECT_LE(static_regret(trace, losses), dynamic_regret(trace) * (1 + 1e-12));
    }
}

TEST(PredictedPathLength, IdentityAndOracleDynamics) {
    const Trace trace = play(switching_losses(8, 100), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    EXPECT_EQ(predicted_path_length(trace), path_length(trace));
    EXPECT_EQ(predicted_path_length(trace, [](int, const Vector& p) { return p; }), path_length(trace));
    const Dynamics exact = [&](int t, const Vector&) { return trace.records[static_cast<std::size_t>(t - 1)].x_star; };
    EXPECT_EQ(predicted_path_length(trace, exact), 0.0);
}

TEST(PredictedPathLength, ConstantShiftBeatsIdentityWhileDrifting) {
    // Diminishing scenario, first 30 rounds: the minimizer slides along the
    // circle. A model that repeats the last observed displacement predicts it
    // better than standing still.
    const Scenario sc = diminishing(-60.0, 100.0, 5.0, 100.0, 30, kDisk);
    const Trace trace = play(sc.losses(), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    const Dynamics shift = [&](int t, const Vector& prev) {
        if (t < 3) return prev;
        const auto i = static_cast<std::size_t>(t - 2);
        return prev + (trace.records[i].x_star - trace.records[i - 1].x_star);
    };
    EXPECT_LT(predicted_path_length(trace, shift), path_length(trace));
}

TEST(FunctionalVariation, SwitchPairAgainstBoundarySweep) {
    const std::vector<QuadraticLoss> pair{kF1, kF2};
    // f1 - f2 = 40000 x1 + 40 x2 - 320 on the disk.
    const double sweep = oracle::circle_sweep_max(
        [](double x, double y) { return std::abs(40000 * x + 40 * y - 320); }, 0, 0, 50, 1'000'000);
    const double vt = functional_variation(pair, kDisk);
    EXPECT_NEAR(vt, 2000320.99999975, 1e-6);
    EXPECT_GE(vt, sweep);
    EXPECT_LE(vt - sweep, 1e-3);
}

TEST(FunctionalVariation, IdenticalLossesContributeNothing) {
    const std::vector<QuadraticLoss> same(10, kF1);
    EXPECT_EQ(functional_variation(same, kDisk), 0.0);
    const std::vector<QuadraticLoss> with_repeats{kF1, kF1, kF2, kF2};
    EXPECT_DOUBLE_EQ(functional_variation(with_repeats, kDisk), functional_variation(std::vector{kF1, kF2}, kDisk));
}

TEST(FunctionalVariation, DifferentWeightsAgainstGrid) {
    const QuadraticLoss a(Vector{3.0, 1.0}, Vector{0.5, -0.2}, 0.1);
    const QuadraticLoss b(Vector{1.0, 2.0}, Vector{-0.3, 0.4}, -0.2);
    const FeasibleSet set = FeasibleSet::ball(Vector{0.0, 0.0}, 1.0);
    auto diff = [&](double x, double y) { return eval(b, Vector{x, y}) - eval(a, Vector{x, y}); };
    const oracle::Region region{true, 0, 0, 1};
    const double grid = std::max(-oracle::grid_argmin([&](double x, double y) { return -diff(x, y); }, region, 2e-3).value,
                                 -oracle::grid_argmin(diff, region, 2e-3).value);
    const double edge = std::max(oracle::circle_sweep_max(diff, 0, 0, 1, 200'000),
                                 oracle::circle_sweep_max([&](double x, double y) { return -diff(x, y); }, 0, 0, 1, 200'000));
    const double vt = functional_variation(std::vector{a, b}, set);
    EXPECT_GE(vt, std::max(grid, edge) - 1e-9);
    EXPECT_LE(vt, std::max(grid, edge) + 1e-3);
}

TEST(GradientVariation, PredictorsAndSpikes) {
    Trace trace = play(switching_losses(16, 100), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    EXPECT_THROW(gradient_variation(trace), std::invalid_argument);

    for (StepRecord& r : trace.records) r.predicted_grad = r.grad;
    EXPECT_EQ(gradient_variation(trace), 0.0);

    predict_with_previous_gradient(trace);
    EXPECT_EQ(*trace.records[0].predicted_grad, Vector::zeros(2));
    // Oracle: direct summation of squared jumps.
    double direct = trace.records[0].grad.squared_norm();
    double biggest_quiet = 0.0, smallest_switch = 1e300;
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        const double jump = (trace.records[i].grad - trace.records[i - 1].grad).squared_norm();
        direct += jump;
        if ((trace.records[i].t - 1) % 16 == 0) {
            smallest_switch = std::min(smallest_switch, jump);
        } else {
            biggest_quiet = std::max(biggest_quiet, jump);
        }
    }
    EXPECT_NEAR(gradient_variation(trace), direct, 1e-10 * direct);
    // Switch rounds dominate even the transient right after the start.
    EXPECT_GT(smallest_switch, biggest_quiet);
}

TEST(GradientVariation, ConstantLossConverges) {
    const std::vector<QuadraticLoss> losses(2000, QuadraticLoss::planar(100.0, 10.0, 5.0, 0.0));
    Trace trace = play(losses, kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    predict_with_previous_gradient(trace);
    const auto& last = trace.records.back();
    EXPECT_LT((last.grad - *last.predicted_grad).norm(), 1e-3);
}

TEST(Certify, ExperimentConstants) {
    const Trace trace = play(switching_losses(16, 100), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    const BoundCertificate c = certify(trace);
    EXPECT_NEAR(c.rho, 0.99498743710661995, 1e-15);
    EXPECT_NEAR(c.K2, 199.49874371066200, 1e-9);
    EXPECT_EQ(c.contraction_violations, 0);
    EXPECT_EQ(c.contraction_checks, 100);
    EXPECT_TRUE(c.valid);
    EXPECT_TRUE(c.tracking_holds);
    EXPECT_TRUE(c.regret_holds);
    EXPECT_LE(c.tracking_sum, c.telescoped_bound);
}

TEST(Certify, SingleRound) {
    const std::vector<QuadraticLoss> one{kF1};
    const Trace trace = play(one, kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    const BoundCertificate c = certify(trace);
    EXPECT_EQ(c.path_length, 0.0);
    EXPECT_DOUBLE_EQ(c.tracking_bound, c.K2);
    EXPECT_EQ(c.tracking_holds, c.tracking_sum <= c.K2 * (1 + 1e-9) + 1e-6);
}

TEST(Certify, RejectsConfigOutsideContractionRange) {
    Trace trace = play(switching_losses(16, 10), kDisk, {200.0, 1.0}, Vector{0.0, 40.0});
    trace.config.gamma = 1.0;  // h * mu / gamma = 2 > 1
    EXPECT_THROW(certify(trace), std::invalid_argument);
}

TEST(Certify, SmallGammaIsReportedNotCertified) {
    const Trace trace = play(switching_losses(16, 100), kDisk, {100.0, 1.0}, Vector{0.0, 40.0});
    EXPECT_FALSE(certify(trace).valid);
}

TEST(CertifyProperty, SoundOnRandomRuns) {
    auto g = oracle::rng(31);
    for (int run = 0; run < 60; ++run) {
        const double cond = std::exp(oracle::uniform(g, 0, 5));
        const int tau = 1 + static_cast<int>(oracle::uniform(g, 0, 20));
        const Scenario sc = switching({oracle::uniform(g, -120, 120), oracle::uniform(g, -120, 120), 0},
                                      {oracle::uniform(g, -120, 120), oracle::uniform(g, -120, 120), 0}, cond, tau, 80,
                                      kDisk);
        const auto losses = sc.losses();
        const double lip = family_constants(losses, kDisk).lip;
        const OGDConfig cfg{lip * oracle::uniform(g, 1.0, 2.0), oracle::uniform(g, 0.1, 1.0)};
        const Vector x1 = project(kDisk, Vector{oracle::uniform(g, -60, 60), oracle::uniform(g, -60, 60)});
        const BoundCertificate c = certify(play(losses, kDisk, cfg, x1));
        ASSERT_TRUE(c.valid);
        ASSERT_EQ(c.contraction_violations, 0);
        // The telescoped form always holds under contraction.
        ASSERT_LE(c.tracking_sum, c.telescoped_bound * (1 + 1e-9) + 1e-6);
    }
}

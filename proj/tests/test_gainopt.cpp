#include "kalmi/gainopt.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace kalmi {
namespace {

using test::random_spd;
using test::scalar_mat;

MiObjective scalar_objective(double sigma = 1.0, double h = 1.0, double r = 1.0) {
    return MiObjective(SymMatrix(scalar_mat(sigma)), scalar_mat(h),
                       SymMatrix(scalar_mat(r)));
}

MiObjective random_objective(RandomSource& rng, int n, int m) {
    return MiObjective(random_spd(rng, n, 0.1), rng.gaussian_matrix(m, n),
                       random_spd(rng, m, 0.1));
}

TEST(MiObjective, CachesInnovationCovariance) {
    RandomSource rng(89);
    const int n = 3, m = 2;
    SymMatrix prior = random_spd(rng, n, 0.1);
    Matrix h = rng.gaussian_matrix(m, n);
    SymMatrix r = random_spd(rng, m, 0.1);
    MiObjective objective(prior, h, r);
    Matrix expected = h * prior.mat() * h.transpose() + r.mat();
    EXPECT_LE((objective.innovation_cov().mat() - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(is_spd(objective.innovation_cov()));
}

TEST(MiOfGain, ZeroGainGivesZero) {
    MiObjective objective = scalar_objective();
    EXPECT_DOUBLE_EQ(mi_of_gain(objective, GainMatrix::zero(1, 1)), 0.0);
}

TEST(MiOfGain, ScalarValues) {
    MiObjective objective = scalar_objective();
    EXPECT_NEAR(mi_of_gain(objective, GainMatrix(scalar_mat(0.5))),
                0.5 * std::log(2.0), 1e-15);
    // Posterior variance at K=0.2 is 0.8^2 + 0.2^2 = 0.68.
    EXPECT_NEAR(mi_of_gain(objective, GainMatrix(scalar_mat(0.2))),
                0.5 * std::log(1.0 / 0.68), 1e-15);
}

TEST(MiGradient, VanishesAtClosedFormGain) {
    RandomSource rng(97);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(1, 4), m = rng.uniform_int(1, 3);
        MiObjective objective = random_objective(rng, n, m);
        GainMatrix star = kalman_gain(objective.prior_cov(), objective.h(), objective.r());
        const double scale =
            std::max(1.0, (objective.prior_cov().mat() * objective.h().transpose()).norm());
        EXPECT_LE(mi_gradient(objective, star).norm(), 1e-10 * scale);
    }
}

TEST(MiGradient, ScalarValueAtZeroGain) {
    MiObjective objective = scalar_objective();
    Matrix grad = mi_gradient(objective, GainMatrix::zero(1, 1));
    EXPECT_DOUBLE_EQ(grad(0, 0), 1.0);
}

TEST(MiGradient, MatchesCentralFiniteDifferences) {
    constexpr double kStep = 1e-6;
    RandomSource rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(1, 4), m = rng.uniform_int(1, 3);
        MiObjective objective = random_objective(rng, n, m);
        GainMatrix gain(rng.gaussian_matrix(n, m));
        Matrix analytic = mi_gradient(objective, gain);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < m; ++c) {
                Matrix probe = gain.mat();
                probe(r, c) += kStep;
                const double up = mi_of_gain(objective, GainMatrix(probe));
                probe(r, c) -= 2.0 * kStep;
                const double down = mi_of_gain(objective, GainMatrix(probe));
                const double fd = (up - down) / (2.0 * kStep);
                EXPECT_NEAR(analytic(r, c), fd, 1e-5 * std::max(1.0, std::abs(analytic(r, c))));
            }
        }
    }
}

TEST(MaximizeMi, ScalarConvergesToHalf) {
    MiObjective objective = scalar_objective();
    OptimizationTrace trace = maximize_mi(objective, GainMatrix::zero(1, 1));
    EXPECT_TRUE(trace.converged);
    EXPECT_NEAR(trace.final_gain.mat()(0, 0), 0.5, 1e-8);
    EXPECT_NEAR(trace.final_mi_nats, 0.5 * std::log(2.0), 1e-12);
}

TEST(MaximizeMi, StationaryStartConvergesInZeroIterations) {
    RandomSource rng(103);
    MiObjective objective = random_objective(rng, 3, 2);
    GainMatrix star = kalman_gain(objective.prior_cov(), objective.h(), objective.r());
    OptimizationTrace trace = maximize_mi(objective, star);
    EXPECT_TRUE(trace.converged);
    EXPECT_EQ(trace.iterations, 0);
}

TEST(MaximizeMi, RecoversClosedFormGainOnRandomInstances) {
    RandomSource rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.uniform_int(1, 4), m = rng.uniform_int(1, 3);
        MiObjective objective = random_objective(rng, n, m);
        GainMatrix star = kalman_gain(objective.prior_cov(), objective.h(), objective.r());
        OptimizationTrace trace = maximize_mi(objective, GainMatrix::zero(n, m));
        EXPECT_TRUE(trace.converged);
        EXPECT_LE((trace.final_gain.mat() - star.mat()).norm(),
                  1e-6 * std::max(star.mat().norm(), 1e-30));
    }
}

TEST(MaximizeMi, TraceAscendsMonotonically) {
    RandomSource rng(109);
    MiObjective objective = random_objective(rng, 4, 3);
    OptimizationTrace trace = maximize_mi(objective, GainMatrix::zero(4, 3));
    ASSERT_FALSE(trace.per_iteration.empty());
    for (std::size_t i = 1; i < trace.per_iteration.size(); ++i)
        EXPECT_GE(trace.per_iteration[i].first, trace.per_iteration[i - 1].first);
    EXPECT_LE(trace.final_gradient_norm, 1e-10);
}

TEST(MaximizeMi, ThrowsWithTraceWhenIterationsExhausted) {
    RandomSource rng(113);
    MiObjective objective = random_objective(rng, 3, 2);
    OptimizerSettings settings;
    settings.max_iterations = 1;
    try {
        maximize_mi(objective, GainMatrix::zero(3, 2), settings);
        FAIL() << "expected DidNotConverge";
    } catch (const DidNotConverge& e) {
        EXPECT_EQ(e.trace.iterations, 1);
        EXPECT_FALSE(e.trace.converged);
        EXPECT_GT(e.trace.final_gradient_norm, 0.0);
    }
}

TEST(ConcavityCheck, ScalarCurvatureMatchesAnalyticValue) {
    // Sigma=1, H=1, R=1: S=2, posterior 0.5, curvature -S/post = -4.
    MiObjective objective = scalar_objective();
    GainMatrix star(scalar_mat(0.5));
    ConcavityReport report = concavity_check(objective, star, 8, 12345);
    ASSERT_EQ(report.directions.size(), 8u);
    for (const auto& dir : report.directions) {
        EXPECT_NEAR(dir.analytic_curvature, -4.0, 1e-12);
        EXPECT_NEAR(dir.second_difference, -4.0, 1e-3);
    }
    EXPECT_TRUE(report.all_negative());
}

TEST(ConcavityCheck, AllDirectionsNegativeOnRandomInstance) {
    RandomSource rng(127);
    MiObjective objective = random_objective(rng, 3, 2);
    GainMatrix star = kalman_gain(objective.prior_cov(), objective.h(), objective.r());
    ConcavityReport report = concavity_check(objective, star, 50, 999);
    EXPECT_EQ(report.directions.size(), 50u);
    EXPECT_TRUE(report.all_negative());
    for (const auto& dir : report.directions) {
        EXPECT_LT(dir.second_difference, 0.0);
        EXPECT_NEAR(dir.second_difference, dir.analytic_curvature,
                    1e-3 * std::abs(dir.analytic_curvature));
    }
}

TEST(ConcavityCheck, SeededReportsAreReproducible) {
    MiObjective objective = scalar_objective(2.0, 1.5, 0.7);
    GainMatrix star = kalman_gain(objective.prior_cov(), objective.h(), objective.r());
    ConcavityReport a = concavity_check(objective, star, 10, 42);
    ConcavityReport b = concavity_check(objective, star, 10, 42);
    for (std::size_t i = 0; i < a.directions.size(); ++i)
        EXPECT_EQ(a.directions[i].second_difference, b.directions[i].second_difference);
}

TEST(ConcavityCheck, RejectsNonStationaryGain) {
    MiObjective objective = scalar_objective();
    EXPECT_THROW(concavity_check(objective, GainMatrix::zero(1, 1), 5, 1), NotStationary);
}

}  // namespace
}  // namespace kalmi

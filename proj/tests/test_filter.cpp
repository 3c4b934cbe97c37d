#include "kalmi/filter.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "kalmi/information.hpp"
#include "test_util.hpp"

namespace kalmi {
namespace {

using test::random_spd;
using test::scalar_mat;
using test::scalar_vec;

StateSpaceModel scalar_model(double h, double r) {
    return {scalar_mat(1.0), scalar_mat(1.0), scalar_mat(h),
            SymMatrix(scalar_mat(0.0)), SymMatrix(scalar_mat(r))};
}

struct RandomInstance {
    SymMatrix prior;
    Matrix h;
    SymMatrix r;
};

RandomInstance random_instance(RandomSource& rng, int n, int m) {
    return {random_spd(rng, n, 0.1), rng.gaussian_matrix(m, n), random_spd(rng, m, 0.1)};
}

TEST(KalmanGain, ScalarHalf) {
    GainMatrix k = kalman_gain(SymMatrix(scalar_mat(1.0)), scalar_model(1.0, 1.0));
    EXPECT_DOUBLE_EQ(k.mat()(0, 0), 0.5);
}

TEST(KalmanGain, ZeroHGivesZeroGain) {
    RandomSource rng(61);
    SymMatrix prior = random_spd(rng, 3);
    GainMatrix k = kalman_gain(prior, Matrix::Zero(2, 3), SymMatrix::identity(2));
    EXPECT_EQ(k.mat().norm(), 0.0);
}

TEST(KalmanGain, PerfectMeasurementLimit) {
    GainMatrix k = kalman_gain(SymMatrix(scalar_mat(1.0)), scalar_model(1.0, 1e-12));
    EXPECT_NEAR(k.mat()(0, 0), 1.0, 1e-9);
}

TEST(UpdateJoseph, ZeroGainLeavesPriorUntouched) {
    StateSpaceModel model = scalar_model(1.0, 1.0);
    GaussianBelief prior(scalar_vec(3.0), SymMatrix(scalar_mat(2.0)));
    UpdateRecord rec = update_joseph(prior, scalar_vec(7.0), GainMatrix::zero(1, 1), model);
    EXPECT_DOUBLE_EQ(rec.posterior.mean()[0], 3.0);
    EXPECT_DOUBLE_EQ(rec.posterior.cov()(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(rec.mi_nats, 0.0);
    EXPECT_DOUBLE_EQ(rec.innovation[0], 4.0);
}

TEST(UpdateJoseph, ScalarArithmeticAtHalfGain) {
    StateSpaceModel model = scalar_model(1.0, 1.0);
    GaussianBelief prior(scalar_vec(1.0), SymMatrix(scalar_mat(1.0)));
    // innovation = 2, K = 0.5: mean +1; cov 0.25 + 0.25 = 0.5.
    UpdateRecord rec =
        update_joseph(prior, scalar_vec(3.0), GainMatrix(scalar_mat(0.5)), model);
    EXPECT_DOUBLE_EQ(rec.posterior.mean()[0], 2.0);
    EXPECT_DOUBLE_EQ(rec.posterior.cov()(0, 0), 0.5);
}

TEST(UpdateJoseph, SuboptimalGainInflatesCovariance) {
    StateSpaceModel model = scalar_model(1.0, 1.0);
    GaussianBelief prior(scalar_vec(0.0), SymMatrix(scalar_mat(1.0)));
    UpdateRecord rec =
        update_joseph(prior, scalar_vec(0.0), GainMatrix(scalar_mat(0.2)), model);
    EXPECT_NEAR(rec.posterior.cov()(0, 0), 0.68, 1e-15);
    EXPECT_GT(rec.posterior.cov()(0, 0), 0.5);
}

TEST(UpdateOptimal, ScalarGoldenValues) {
    StateSpaceModel model = scalar_model(1.0, 1.0);
    GaussianBelief prior(scalar_vec(1.0), SymMatrix(scalar_mat(1.0)));
    UpdateRecord rec = update_optimal(prior, scalar_vec(1.0), model);
    EXPECT_DOUBLE_EQ(rec.posterior.mean()[0], 1.0);  // zero innovation
    EXPECT_DOUBLE_EQ(rec.posterior.cov()(0, 0), 0.5);
    EXPECT_NEAR(rec.mi_nats, 0.5 * std::log(2.0), 1e-15);
}

TEST(UpdateOptimal, DecoupledCoordinates) {
    Matrix h(1, 2);
    h << 1.0, 0.0;
    StateSpaceModel model{Matrix::Identity(2, 2), Matrix::Identity(2, 2), h,
                          SymMatrix::zero(2), SymMatrix::identity(1)};
    GaussianBelief prior(Vector::Zero(2), SymMatrix::identity(2));
    UpdateRecord rec = update_optimal(prior, scalar_vec(0.0), model);
    EXPECT_DOUBLE_EQ(rec.gain.mat()(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(rec.gain.mat()(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(rec.posterior.cov()(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(rec.posterior.cov()(1, 1), 1.0);
    EXPECT_DOUBLE_EQ(rec.posterior.cov()(0, 1), 0.0);
}

TEST(UpdateOptimal, MatchesInformationFormOracle) {
    RandomSource rng(67);
    StateSpaceModel model{Matrix::Identity(3, 3), Matrix::Identity(3, 3),
                          rng.gaussian_matrix(2, 3), SymMatrix::zero(3),
                          random_spd(rng, 2, 0.1)};
    SymMatrix prior_cov = random_spd(rng, 3, 0.1);
    GaussianBelief prior(rng.gaussian_vector(3), prior_cov);
    UpdateRecord rec = update_optimal(prior, rng.gaussian_vector(2), model);

    // (Sigma^-1 + H^T R^-1 H)^-1 by plain dense inversion.
    Matrix info = prior_cov.mat().inverse() +
                  model.h.transpose() * model.r.mat().inverse() * model.h;
    Matrix expected = info.inverse();
    EXPECT_NEAR((rec.posterior.cov().mat() - expected).norm(), 0.0, 1e-9);
}

TEST(UpdateJoseph, PosteriorStaysPdForArbitraryGain) {
    RandomSource rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(1, 4), m = rng.uniform_int(1, 3);
        RandomInstance inst = random_instance(rng, n, m);
        GainMatrix gain(3.0 * rng.gaussian_matrix(n, m));
        SymMatrix post = joseph_posterior_cov(inst.prior, gain, inst.h, inst.r);
        EXPECT_TRUE(is_spd(post));
    }
}

TEST(UpdateOptimal, ClosedFormGainMinimizesLogDet) {
    RandomSource rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(1, 4), m = rng.uniform_int(1, 3);
        RandomInstance inst = random_instance(rng, n, m);
        GainMatrix best = kalman_gain(inst.prior, inst.h, inst.r);
        const double best_ld =
            log_det_spd(joseph_posterior_cov(inst.prior, best, inst.h, inst.r));
        for (int p = 0; p < 100; ++p) {
            Matrix delta = rng.gaussian_matrix(n, m);
            delta *= 0.1 / std::max(delta.norm(), 1e-12);
            GainMatrix perturbed(best.mat() + delta);
            const double ld =
                log_det_spd(joseph_posterior_cov(inst.prior, perturbed, inst.h, inst.r));
            EXPECT_GE(ld, best_ld - 1e-12);
        }
    }
}

TEST(UpdateOptimal, JosephEqualsShortFormAtOptimalGain) {
    RandomSource rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(1, 4), m = rng.uniform_int(1, 3);
        RandomInstance inst = random_instance(rng, n, m);
        GainMatrix gain = kalman_gain(inst.prior, inst.h, inst.r);
        SymMatrix joseph = joseph_posterior_cov(inst.prior, gain, inst.h, inst.r);
        Matrix short_form =
            (Matrix::Identity(n, n) - gain.mat() * inst.h) * inst.prior.mat();
        EXPECT_LE((joseph.mat() - short_form).norm(), 1e-10 * inst.prior.mat().norm());
    }
}

TEST(UpdateOptimal, BeatsEveryOtherGainOnMi) {
    RandomSource rng(83);
    StateSpaceModel model{Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                          rng.gaussian_matrix(2, 2), SymMatrix::zero(2),
                          random_spd(rng, 2, 0.1)};
    GaussianBelief prior(Vector::Zero(2), random_spd(rng, 2, 0.1));
    Vector z = rng.gaussian_vector(2);
    UpdateRecord best = update_optimal(prior, z, model);
    for (int trial = 0; trial < 100; ++trial) {
        GainMatrix other(best.gain.mat() + rng.gaussian_matrix(2, 2));
        UpdateRecord rec = update_joseph(prior, z, other, model);
        EXPECT_LE(rec.mi_nats, best.mi_nats + 1e-12);
    }
}

TEST(GainMatrix, RejectsNonFiniteEntries) {
    Matrix bad = scalar_mat(std::numeric_limits<double>::infinity());
    EXPECT_THROW(GainMatrix{bad}, std::invalid_argument);
}

TEST(UpdateJoseph, ShapeMismatchesThrow) {
    StateSpaceModel model = scalar_model(1.0, 1.0);
    GaussianBelief prior(scalar_vec(0.0), SymMatrix(scalar_mat(1.0)));
    EXPECT_THROW(update_joseph(prior, Vector::Zero(2), GainMatrix::zero(1, 1), model),
                 DimensionMismatch);
    EXPECT_THROW(update_joseph(prior, scalar_vec(0.0), GainMatrix::zero(2, 1), model),
                 DimensionMismatch);
}

}  // namespace
}  // namespace kalmi

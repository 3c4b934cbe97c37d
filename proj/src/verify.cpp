#include "kalmi/verify.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kalmi/information.hpp"
#include "kalmi/version.hpp"

namespace kalmi {

namespace {

// Per-check substream indices under the report seed; appended after the sim
// streams so adding checks never reshuffles existing ones.
enum CheckStream : std::uint64_t {
    kStreamGain = 10,
    kStreamGradient = 11,
    kStreamConcavity = 12,
    kStreamRenyi = 13,
    kStreamSchur = 14,
    kStreamUpdateMi = 15,
    kStreamJoseph = 16,
};

SymMatrix random_spd(RandomSource& rng, int dim, double ridge = 0.1) {
    Matrix a = rng.gaussian_matrix(dim, dim);
    return SymMatrix(symmetrized(a * a.transpose() + ridge * Matrix::Identity(dim, dim)));
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace

UpdateInstance random_update_instance(RandomSource& rng, int max_n, int max_m) {
    const int n = rng.uniform_int(1, max_n);
    const int m = rng.uniform_int(1, max_m);
    SymMatrix prior = random_spd(rng, n);
    Matrix h = rng.gaussian_matrix(m, n);
    SymMatrix r = random_spd(rng, m);
    return {std::move(prior), std::move(h), std::move(r)};
}

JointGaussian random_joint_gaussian(RandomSource& rng, int max_dim) {
    const int n = rng.uniform_int(1, max_dim);
    const int m = rng.uniform_int(1, max_dim);
    SymMatrix full = random_spd(rng, n + m);
    SymMatrix sxx(full.mat().topLeftCorner(n, n));
    SymMatrix syy(full.mat().bottomRightCorner(m, m));
    Matrix sxy = full.mat().topRightCorner(n, m);
    return JointGaussian(std::move(sxx), std::move(syy), std::move(sxy));
}

CheckResult check_gain_equivalence(int trials, std::uint64_t seed, double tolerance) {
    RandomSource rng(substream_seed(seed, kStreamGain));
    CheckResult result{kCheckGainEquivalence, trials, 0.0, tolerance, false};
    bool all_converged = true;
    for (int i = 0; i < trials; ++i) {
        UpdateInstance inst = random_update_instance(rng);
        MiObjective objective(inst.prior_cov, inst.h, inst.r);
        GainMatrix closed_form = kalman_gain(inst.prior_cov, inst.h, inst.r);

        GainMatrix reached = closed_form;  // overwritten below
        try {
            reached = maximize_mi(objective,
                                  GainMatrix::zero(inst.h.cols(), inst.h.rows()))
                          .final_gain;
        } catch (const DidNotConverge& e) {
            all_converged = false;
            reached = e.trace.final_gain;
        }
        const double denom = std::max(closed_form.mat().norm(), 1e-30);
        result.max_error = std::max(result.max_error,
                                    (reached.mat() - closed_form.mat()).norm() / denom);
    }
    result.passed = all_converged && result.max_error <= tolerance;
    return result;
}

CheckResult check_gradient_fd(int trials, std::uint64_t seed, double tolerance) {
    constexpr double kStep = 1e-6;
    RandomSource rng(substream_seed(seed, kStreamGradient));
    CheckResult result{kCheckGradientFd, trials, 0.0, tolerance, false};
    for (int i = 0; i < trials; ++i) {
        UpdateInstance inst = random_update_instance(rng);
        MiObjective objective(inst.prior_cov, inst.h, inst.r);
        const Eigen::Index n = inst.h.cols(), m = inst.h.rows();
        GainMatrix gain(rng.gaussian_matrix(n, m));
        Matrix analytic = mi_gradient(objective, gain);

        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < m; ++c) {
                Matrix probe = gain.mat();
                probe(r, c) += kStep;
                const double up = mi_of_gain(objective, GainMatrix(probe));
                probe(r, c) -= 2.0 * kStep;
                const double down = mi_of_gain(objective, GainMatrix(probe));
                const double fd = (up - down) / (2.0 * kStep);
                const double err = std::abs(analytic(r, c) - fd) /
                                   std::max(1.0, std::abs(analytic(r, c)));
                result.max_error = std::max(result.max_error, err);
            }
        }
    }
    result.passed = result.max_error <= tolerance;
    return result;
}

CheckResult check_concavity(int trials, std::uint64_t seed, double tolerance) {
    constexpr int kDirections = 50;
    RandomSource rng(substream_seed(seed, kStreamConcavity));
    CheckResult result{kCheckConcavity, trials, 0.0, tolerance, false};
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        UpdateInstance inst = random_update_instance(rng);
        MiObjective objective(inst.prior_cov, inst.h, inst.r);
        GainMatrix at = kalman_gain(inst.prior_cov, inst.h, inst.r);
        ConcavityReport report =
            concavity_check(objective, at, kDirections, rng.next_u64());
        worst = std::max(worst, report.max_second_difference());
    }
    // Curvature must be strictly negative in every direction.
    result.max_error = worst;
    result.passed = worst < tolerance;
    return result;
}

CheckResult check_renyi_equals_shannon(int trials, std::uint64_t seed, double tolerance) {
    static const double kOrders[] = {0.1, 0.5, 2.0, 10.0};
    RandomSource rng(substream_seed(seed, kStreamRenyi));
    CheckResult result{kCheckRenyiEqualsShannon, trials, 0.0, tolerance, false};
    for (int i = 0; i < trials; ++i) {
        JointGaussian joint = random_joint_gaussian(rng);
        const double shannon = mutual_information_joint(joint);
        for (double alpha : kOrders) {
            const double renyi = renyi_mutual_information(joint, RenyiOrder(alpha));
            result.max_error = std::max(result.max_error, std::abs(renyi - shannon));
        }
    }
    result.passed = result.max_error <= tolerance;
    return result;
}

CheckResult check_schur_identity(int trials, std::uint64_t seed, double tolerance) {
    RandomSource rng(substream_seed(seed, kStreamSchur));
    CheckResult result{kCheckSchurIdentity, trials, 0.0, tolerance, false};
    for (int i = 0; i < trials; ++i) {
        JointGaussian joint = random_joint_gaussian(rng);
        SchurDetCheck check = schur_det_check(joint);
        const double spread =
            std::max({std::abs(check.log_det_full - check.via_xx),
                      std::abs(check.log_det_full - check.via_yy),
                      std::abs(check.via_xx - check.via_yy)});
        result.max_error = std::max(result.max_error, spread);
    }
    result.passed = result.max_error <= tolerance;
    return result;
}

CheckResult check_update_mi_consistency(int trials, std::uint64_t seed, double tolerance) {
    RandomSource rng(substream_seed(seed, kStreamUpdateMi));
    CheckResult result{kCheckUpdateMiConsistency, trials, 0.0, tolerance, false};
    for (int i = 0; i < trials; ++i) {
        UpdateInstance inst = random_update_instance(rng);
        GainMatrix gain = kalman_gain(inst.prior_cov, inst.h, inst.r);
        SymMatrix posterior = joseph_posterior_cov(inst.prior_cov, gain, inst.h, inst.r);
        const double from_update = update_mi(inst.prior_cov, posterior);

        // Joint of (predicted state, measurement): syy is the innovation
        // covariance, sxy the cross term prior_cov H^T.
        MiObjective objective(inst.prior_cov, inst.h, inst.r);
        JointGaussian joint(inst.prior_cov, objective.innovation_cov(),
                            inst.prior_cov.mat() * inst.h.transpose());
        const double from_joint = mutual_information_joint(joint);
        result.max_error = std::max(result.max_error, std::abs(from_update - from_joint));
    }
    result.passed = result.max_error <= tolerance;
    return result;
}

CheckResult check_joseph_short_form(int trials, std::uint64_t seed, double tolerance) {
    RandomSource rng(substream_seed(seed, kStreamJoseph));
    CheckResult result{kCheckJosephShortForm, trials, 0.0, tolerance, false};
    for (int i = 0; i < trials; ++i) {
        UpdateInstance inst = random_update_instance(rng);
        GainMatrix gain = kalman_gain(inst.prior_cov, inst.h, inst.r);
        SymMatrix joseph = joseph_posterior_cov(inst.prior_cov, gain, inst.h, inst.r);
        Matrix short_form =
            (Matrix::Identity(inst.h.cols(), inst.h.cols()) - gain.mat() * inst.h) *
            inst.prior_cov.mat();
        const double err =
            (joseph.mat() - short_form).norm() / inst.prior_cov.mat().norm();
        result.max_error = std::max(result.max_error, err);
    }
    result.passed = result.max_error <= tolerance;
    return result;
}

VerificationReport run_verification(
    int trials, std::uint64_t seed,
    const std::map<std::string, double>& tolerance_overrides) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    std::map<std::string, double> tols = {
        {kCheckGainEquivalence, 1e-6},  {kCheckGradientFd, 1e-5},
        {kCheckConcavity, 0.0},         {kCheckRenyiEqualsShannon, 1e-10},
        {kCheckSchurIdentity, 1e-10},   {kCheckUpdateMiConsistency, 1e-10},
        {kCheckJosephShortForm, 1e-10},
    };
    for (const auto& [name, value] : tolerance_overrides) {
        auto it = tols.find(name);
        if (it == tols.end())
            throw std::invalid_argument("unknown check name in tolerance override: " + name);
        it->second = value;
    }

    VerificationReport report;
    report.seed = seed;
    report.build = std::string("kalmi ") + kVersion;
    report.timestamp = iso8601_now();
    report.checks = {
        check_gain_equivalence(trials, seed, tols[kCheckGainEquivalence]),
        check_gradient_fd(trials, seed, tols[kCheckGradientFd]),
        check_concavity(trials, seed, tols[kCheckConcavity]),
        check_renyi_equals_shannon(trials, seed, tols[kCheckRenyiEqualsShannon]),
        check_schur_identity(trials, seed, tols[kCheckSchurIdentity]),
        check_update_mi_consistency(trials, seed, tols[kCheckUpdateMiConsistency]),
        check_joseph_short_form(trials, seed, tols[kCheckJosephShortForm]),
    };
    report.overall_passed = true;
    for (const auto& check : report.checks)
        report.overall_passed = report.overall_passed && check.passed;
    return report;
}

}  // namespace kalmi

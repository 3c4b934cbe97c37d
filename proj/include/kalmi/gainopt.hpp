#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kalmi/filter.hpp"

namespace kalmi {

/// The information gain of a measurement update viewed as a function of the
/// gain matrix:
///   I(K) = (1/2) ln( det prior_cov / det post_cov(K) )
/// with post_cov(K) the any-gain covariance update. Caches the innovation
/// covariance S = H prior_cov H^T + R, which must be SPD.
class MiObjective {
public:
    MiObjective(SymMatrix prior_cov, Matrix h, SymMatrix r);

    /// Convenience: pull H and R out of a model.
    MiObjective(const SymMatrix& prior_cov, const StateSpaceModel& model)
        : MiObjective(prior_cov, model.h, model.r) {}

    Eigen::Index state_dim() const { return prior_cov_.dim(); }
    Eigen::Index meas_dim() const { return r_.dim(); }
    const SymMatrix& prior_cov() const { return prior_cov_; }
    const Matrix& h() const { return h_; }
    const SymMatrix& r() const { return r_; }
    const SymMatrix& innovation_cov() const { return s_; }

    SymMatrix posterior_cov(const GainMatrix& gain) const;

private:
    SymMatrix prior_cov_;
    Matrix h_;
    SymMatrix r_;
    SymMatrix s_;  // H prior_cov H^T + R
};

/// I(K) in nats. Zero at K = 0; maximal at the closed-form Kalman gain.
double mi_of_gain(const MiObjective& objective, const GainMatrix& gain);

/// Exact gradient of mi_of_gain with respect to the gain:
///   grad = -post_cov(K)^-1 (K S - prior_cov H^T)
/// which vanishes exactly at the closed-form gain.
Matrix mi_gradient(const MiObjective& objective, const GainMatrix& gain);

struct OptimizerSettings {
    int max_iterations = 10000;
    double gradient_tolerance = 1e-10;  // Frobenius norm of the gradient
    double initial_step = 1.0;
    double backtrack_factor = 0.5;
    double armijo_constant = 1e-4;
};

struct OptimizationTrace {
    int iterations = 0;
    GainMatrix final_gain;
    double final_mi_nats = 0.0;
    double final_gradient_norm = 0.0;
    bool converged = false;
    // (mi_nats, gradient_norm) at the start point and after each accepted
    // ascent step; the mi_nats column is non-decreasing.
    std::vector<std::pair<double, double>> per_iteration;
};

/// Iterations were exhausted before the gradient norm met tolerance. Carries
/// the trace for diagnosis.
struct DidNotConverge : std::runtime_error {
    explicit DidNotConverge(OptimizationTrace t);
    OptimizationTrace trace;
};

/// concavity_check was called at a gain that is not a stationary point.
struct NotStationary : std::invalid_argument {
    explicit NotStationary(double gradient_norm, double tolerance);
};

/// Maximizes I(K) by gradient ascent with Armijo backtracking from `init`.
/// On success the final gain reproduces the closed-form Kalman gain; throws
/// DidNotConverge if max_iterations is hit first.
OptimizationTrace maximize_mi(const MiObjective& objective, const GainMatrix& init,
                              const OptimizerSettings& settings = {});

/// Second-order maximality evidence at a stationary gain: for seeded random
/// unit-Frobenius directions D, the curvature of t -> I(K + tD) at t = 0.
/// Every direction must come out strictly negative.
struct ConcavityReport {
    struct Direction {
        double second_difference;   // central second difference, t = 1e-4
        double analytic_curvature;  // -tr(post_cov^-1 D S D^T)
    };
    std::vector<Direction> directions;
    bool all_negative() const;
    double max_second_difference() const;
};

ConcavityReport concavity_check(const MiObjective& objective, const GainMatrix& at,
                                int directions, std::uint64_t seed,
                                double stationarity_tol = 1e-8);

}  // namespace kalmi

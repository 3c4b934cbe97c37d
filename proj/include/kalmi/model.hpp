#pragma once

#include <string>
#include <vector>

#include "kalmi/linops.hpp"

namespace kalmi {

/// Discrete-time linear-Gaussian state-space model
///   x_k = Phi x_{k-1} + Gamma w_{k-1},   w ~ N(0, Q)
///   z_k = H x_k + v_k,                   v ~ N(0, R)
/// with state dimension n, measurement dimension m and process-noise
/// dimension l. One matrix set is applied at every step.
struct StateSpaceModel {
    Matrix phi;    // n x n state update
    Matrix gamma;  // n x l noise distribution
    Matrix h;      // m x n measurement
    SymMatrix q;   // l x l process-noise covariance, PSD
    SymMatrix r;   // m x m measurement-noise covariance, PD

    Eigen::Index n() const { return phi.rows(); }
    Eigen::Index m() const { return h.rows(); }
    Eigen::Index l() const { return gamma.cols(); }
};

struct ValidationIssue {
    std::string field;
    std::string message;
    std::string describe() const { return field + " " + message; }
};

struct ValidationResult {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string describe() const;
};

/// Structural checks: dimension consistency, Q positive semidefinite,
/// R strictly positive definite (the measurement update inverts
/// H Sigma H^T + R, so R = 0 is not allowed at the filter level).
ValidationResult validate(const StateSpaceModel& model);

/// Gaussian state estimate N(mean, cov) at one time step.
class GaussianBelief {
public:
    // Throws NotPositiveDefinite if cov fails the SPD test and
    // std::invalid_argument on non-finite mean entries.
    GaussianBelief(Vector mean, SymMatrix cov);

    const Vector& mean() const { return mean_; }
    const SymMatrix& cov() const { return cov_; }
    Eigen::Index dim() const { return mean_.size(); }

private:
    Vector mean_;
    SymMatrix cov_;
};

/// Time update: mean <- Phi mean, cov <- Phi cov Phi^T + Gamma Q Gamma^T
/// (symmetrized). Throws NotPositiveDefinite when the propagated covariance
/// degenerates (singular Phi with no injected noise).
GaussianBelief predict(const GaussianBelief& prior, const StateSpaceModel& model);

}  // namespace kalmi

#pragma once

#include "kalmi/model.hpp"

namespace kalmi {

/// Correction factor matrix K (n x m) weighting the innovation in the state
/// update. Entries must be finite; any value is otherwise admissible, the
/// covariance update below is valid for arbitrary K.
class GainMatrix {
public:
    explicit GainMatrix(Matrix k);
    static GainMatrix zero(Eigen::Index n, Eigen::Index m);

    const Matrix& mat() const { return k_; }
    Eigen::Index rows() const { return k_.rows(); }
    Eigen::Index cols() const { return k_.cols(); }

private:
    Matrix k_;
};

/// One measurement update, kept whole for tracing and analysis.
/// innovation = measurement - H * prior.mean by construction; mi_nats is the
/// log-det ratio information gain, nonnegative whenever the gain is optimal.
struct UpdateRecord {
    int step;
    GaussianBelief prior;
    Vector measurement;
    Vector innovation;
    GainMatrix gain;
    GaussianBelief posterior;
    double mi_nats;
};

/// Closed-form optimal gain K = Sigma H^T (H Sigma H^T + R)^-1, obtained by
/// factoring S = H Sigma H^T + R and solving, never by forming S^-1.
GainMatrix kalman_gain(const SymMatrix& prior_cov, const Matrix& h, const SymMatrix& r);
GainMatrix kalman_gain(const SymMatrix& prior_cov, const StateSpaceModel& model);

/// Covariance part of the measurement update in the form that holds for any
/// gain: (I - KH) Sigma (I - KH)^T + K R K^T, symmetrized.
SymMatrix joseph_posterior_cov(const SymMatrix& prior_cov, const GainMatrix& gain,
                               const Matrix& h, const SymMatrix& r);

/// Measurement update with a caller-supplied gain. The posterior stays
/// strictly positive definite for any finite K when R is PD.
UpdateRecord update_joseph(const GaussianBelief& prior, const Vector& z,
                           const GainMatrix& gain, const StateSpaceModel& model,
                           int step = 0);

/// Measurement update with the closed-form optimal gain. At this gain the
/// update also equals the short form (I - KH) Sigma to round-off.
UpdateRecord update_optimal(const GaussianBelief& prior, const Vector& z,
                            const StateSpaceModel& model, int step = 0);

}  // namespace kalmi

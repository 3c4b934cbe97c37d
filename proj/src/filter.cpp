#include "kalmi/filter.hpp"

#include <stdexcept>
#include <string>

#include "kalmi/information.hpp"

namespace kalmi {

GainMatrix::GainMatrix(Matrix k) : k_(std::move(k)) {
    if (!k_.allFinite())
        throw std::invalid_argument("gain matrix has non-finite entries");
}

GainMatrix GainMatrix::zero(Eigen::Index n, Eigen::Index m) {
    return GainMatrix(Matrix::Zero(n, m));
}

GainMatrix kalman_gain(const SymMatrix& prior_cov, const Matrix& h, const SymMatrix& r) {
    if (h.cols() != prior_cov.dim() || r.dim() != h.rows())
        throw DimensionMismatch("gain inputs: H is m x n, R is m x m");
    SymMatrix s(symmetrized(h * prior_cov.mat() * h.transpose() + r.mat()));
    SpdCholesky chol(s);
    if (!chol.ok()) throw NotPositiveDefinite("innovation covariance");
    // K solves K S = Sigma H^T; with S symmetric, K = (S^-1 H Sigma)^T.
    return GainMatrix(chol.solve(Matrix(h * prior_cov.mat())).transpose());
}

GainMatrix kalman_gain(const SymMatrix& prior_cov, const StateSpaceModel& model) {
    if (prior_cov.dim() != model.n())
        throw DimensionMismatch("prior covariance dim vs model state dim");
    return kalman_gain(prior_cov, model.h, model.r);
}

SymMatrix joseph_posterior_cov(const SymMatrix& prior_cov, const GainMatrix& gain,
                               const Matrix& h, const SymMatrix& r) {
    const Eigen::Index n = prior_cov.dim();
    Matrix a = Matrix::Identity(n, n) - gain.mat() * h;
    Matrix cov = a * prior_cov.mat() * a.transpose() +
                 gain.mat() * r.mat() * gain.mat().transpose();
    return SymMatrix(symmetrized(cov));
}

UpdateRecord update_joseph(const GaussianBelief& prior, const Vector& z,
                           const GainMatrix& gain, const StateSpaceModel& model,
                           int step) {
    if (z.size() != model.m())
        throw DimensionMismatch("measurement length vs model");
    if (prior.dim() != model.n())
        throw DimensionMismatch("prior dim vs model state dim");
    if (gain.rows() != model.n() || gain.cols() != model.m())
        throw DimensionMismatch("gain shape vs model");

    Vector innovation = z - model.h * prior.mean();
    Vector mean = prior.mean() + gain.mat() * innovation;
    SymMatrix cov = joseph_posterior_cov(prior.cov(), gain, model.h, model.r);
    GaussianBelief posterior(std::move(mean), std::move(cov));
    const double mi = update_mi(prior.cov(), posterior.cov());
    return {step, prior, z, std::move(innovation), gain, std::move(posterior), mi};
}

UpdateRecord update_optimal(const GaussianBelief& prior, const Vector& z,
                            const StateSpaceModel& model, int step) {
    return update_joseph(prior, z, kalman_gain(prior.cov(), model), model, step);
}

}  // namespace kalmi

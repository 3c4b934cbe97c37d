#include "kalmi/model.hpp"

#include <string>

namespace kalmi {

std::string ValidationResult::describe() const {
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty()) out += "; ";
        out += issue.describe();
    }
    return out;
}

ValidationResult validate(const StateSpaceModel& model) {
    ValidationResult result;
    auto flag = [&result](const std::string& field, const std::string& message) {
        result.issues.push_back({field, message});
    };

    if (model.phi.rows() != model.phi.cols())
        flag("Phi", "must be square");
    if (model.phi.rows() < 1) flag("Phi", "state dimension must be >= 1");

    const Eigen::Index n = model.n();
    if (model.gamma.rows() != n) flag("Gamma", "row count != n");
    if (model.gamma.cols() < 1) flag("Gamma", "noise dimension must be >= 1");
    if (model.h.cols() != n) flag("H", "column count != n");
    if (model.h.rows() < 1) flag("H", "measurement dimension must be >= 1");
    if (model.q.dim() != model.gamma.cols()) flag("Q", "dimension != Gamma column count");
    if (model.r.dim() != model.h.rows()) flag("R", "dimension != measurement dimension");

    if (!psd_factor(model.q).has_value())
        flag("Q", "not positive semidefinite");
    if (!is_spd(model.r))
        flag("R", "not positive definite");

    return result;
}

GaussianBelief::GaussianBelief(Vector mean, SymMatrix cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() != cov_.dim())
        throw DimensionMismatch("belief mean length vs covariance dim");
    if (!mean_.allFinite())
        throw std::invalid_argument("belief mean has non-finite entries");
    if (!is_spd(cov_)) throw NotPositiveDefinite("belief covariance");
}

GaussianBelief predict(const GaussianBelief& prior, const StateSpaceModel& model) {
    if (prior.dim() != model.n())
        throw DimensionMismatch("belief dim vs model state dim");
    Vector mean = model.phi * prior.mean();
    Matrix cov = model.phi * prior.cov().mat() * model.phi.transpose() +
                 model.gamma * model.q.mat() * model.gamma.transpose();
    return GaussianBelief(std::move(mean), SymMatrix(symmetrized(cov)));
}

}  // namespace kalmi

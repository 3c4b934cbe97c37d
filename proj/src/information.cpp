#include "kalmi/information.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kalmi {

namespace {
constexpr double kLn2Pi = 1.8378770664093453;  // ln(2 pi)
}

RenyiOrder::RenyiOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("Renyi order must be positive");
    if (std::abs(alpha - 1.0) <= 1e-9)
        throw std::invalid_argument(
            "Renyi order too close to 1; use entropy_gaussian for the Shannon case");
}

double entropy_gaussian(const SymMatrix& cov) {
    const double n = static_cast<double>(cov.dim());
    return 0.5 * (n * (kLn2Pi + 1.0) + log_det_spd(cov));
}

double renyi_entropy(const SymMatrix& cov, RenyiOrder order) {
    const double n = static_cast<double>(cov.dim());
    const double a = order.alpha();
    return 0.5 * (n * kLn2Pi + n / (a - 1.0) * std::log(a) + log_det_spd(cov));
}

double mutual_information_joint(const JointGaussian& joint) {
    return 0.5 * (log_det_spd(joint.sxx()) + log_det_spd(joint.syy()) -
                  log_det_spd(joint.assembled()));
}

double update_mi(const SymMatrix& prior_cov, const SymMatrix& posterior_cov) {
    if (prior_cov.dim() != posterior_cov.dim())
        throw DimensionMismatch("prior vs posterior covariance dims");
    return 0.5 * (log_det_spd(prior_cov) - log_det_spd(posterior_cov));
}

double renyi_mutual_information(const JointGaussian& joint, RenyiOrder order) {
    return renyi_entropy(joint.sxx(), order) + renyi_entropy(joint.syy(), order) -
           renyi_entropy(joint.assembled(), order);
}

}  // namespace kalmi

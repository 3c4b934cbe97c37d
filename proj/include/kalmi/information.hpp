#pragma once

#include "kalmi/linops.hpp"

namespace kalmi {

/// Order parameter of the Renyi entropy. Valid for alpha > 0 with
/// |alpha - 1| > 1e-9; the alpha -> 1 limit is Shannon entropy and is served
/// by entropy_gaussian instead (the alpha^(N/(alpha-1)) term is numerically
/// hostile near 1).
class RenyiOrder {
public:
    explicit RenyiOrder(double alpha);
    double alpha() const { return alpha_; }

private:
    double alpha_;
};

/// Differential entropy of N(mu, cov) in nats:
///   (1/2) (N ln(2 pi e) + ln det cov)
double entropy_gaussian(const SymMatrix& cov);

/// Renyi entropy of order alpha of N(mu, cov) in nats:
///   (1/2) (N ln(2 pi) + N/(alpha-1) ln alpha + ln det cov)
double renyi_entropy(const SymMatrix& cov, RenyiOrder order);

/// Mutual information of a jointly Gaussian pair in nats,
///   I(X,Y) = -(1/2) ln( det S / (det sxx det syy) )
/// computed as halved log-determinant differences.
double mutual_information_joint(const JointGaussian& joint);

/// Information gained by a measurement update, in nats:
///   (1/2) (ln det prior_cov - ln det posterior_cov)
/// i.e. the mutual information between the predicted state and the
/// measurement when posterior_cov came from the optimal gain.
double update_mi(const SymMatrix& prior_cov, const SymMatrix& posterior_cov);

/// Renyi mutual information, evaluated as the three-entropy sum
///   H_a(X) + H_a(Y) - H_a(X,Y)
/// on purpose (rather than delegating to mutual_information_joint), so the
/// cancellation of every alpha-dependent term is a checkable property:
/// the result equals the Shannon mutual information for all valid alpha.
double renyi_mutual_information(const JointGaussian& joint, RenyiOrder order);

/// Display-only conversion; all computation stays in nats.
inline double nats_to_bits(double nats) { return nats / 0.6931471805599453; }

}  // namespace kalmi

#include "kalmi/gainopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kalmi/information.hpp"
#include "kalmi/rng.hpp"

namespace kalmi {

MiObjective::MiObjective(SymMatrix prior_cov, Matrix h, SymMatrix r)
    : prior_cov_(std::move(prior_cov)),
      h_(std::move(h)),
      r_(std::move(r)),
      s_(SymMatrix(symmetrized(h_ * prior_cov_.mat() * h_.transpose() + r_.mat()))) {
    if (h_.cols() != prior_cov_.dim())
        throw DimensionMismatch("H column count vs prior covariance dim");
    if (r_.dim() != h_.rows())
        throw DimensionMismatch("R dim vs H row count");
    if (!is_spd(prior_cov_)) throw NotPositiveDefinite("prior covariance");
    if (!is_spd(s_)) throw NotPositiveDefinite("innovation covariance");
}

SymMatrix MiObjective::posterior_cov(const GainMatrix& gain) const {
    return joseph_posterior_cov(prior_cov_, gain, h_, r_);
}

double mi_of_gain(const MiObjective& objective, const GainMatrix& gain) {
    return update_mi(objective.prior_cov(), objective.posterior_cov(gain));
}

Matrix mi_gradient(const MiObjective& objective, const GainMatrix& gain) {
    SpdCholesky post(objective.posterior_cov(gain));
    if (!post.ok()) throw NotPositiveDefinite("posterior covariance at gain");
    Matrix residual = gain.mat() * objective.innovation_cov().mat() -
                      objective.prior_cov().mat() * objective.h().transpose();
    return -post.solve(residual);
}

DidNotConverge::DidNotConverge(OptimizationTrace t)
    : std::runtime_error("gain optimization exhausted " +
                         std::to_string(t.iterations) +
                         " iterations (final gradient norm " +
                         std::to_string(t.final_gradient_norm) + ")"),
      trace(std::move(t)) {}

NotStationary::NotStationary(double gradient_norm, double tolerance)
    : std::invalid_argument("concavity check requires a stationary gain: "
                            "gradient norm " +
                            std::to_string(gradient_norm) + " > " +
                            std::to_string(tolerance)) {}

OptimizationTrace maximize_mi(const MiObjective& objective, const GainMatrix& init,
                              const OptimizerSettings& settings) {
    GainMatrix gain = init;
    double mi = mi_of_gain(objective, gain);
    Matrix grad = mi_gradient(objective, gain);
    double grad_norm = grad.norm();

    OptimizationTrace trace{0, gain, mi, grad_norm, false, {{mi, grad_norm}}};

    while (grad_norm > settings.gradient_tolerance) {
        if (trace.iterations >= settings.max_iterations) throw DidNotConverge(trace);

        // Armijo backtracking along the steepest-ascent direction.
        const double slope = grad_norm * grad_norm;
        double step = settings.initial_step;
        GainMatrix candidate = gain;
        double candidate_mi = mi;
        for (;;) {
            candidate = GainMatrix(gain.mat() + step * grad);
            candidate_mi = mi_of_gain(objective, candidate);
            if (candidate_mi >= mi + settings.armijo_constant * step * slope) break;
            step *= settings.backtrack_factor;
            if (step < 1e-18) throw DidNotConverge(trace);  // stalled line search
        }

        gain = std::move(candidate);
        mi = candidate_mi;
        grad = mi_gradient(objective, gain);
        grad_norm = grad.norm();
        ++trace.iterations;
        trace.per_iteration.emplace_back(mi, grad_norm);
        trace.final_gain = gain;
        trace.final_mi_nats = mi;
        trace.final_gradient_norm = grad_norm;
    }

    trace.converged = true;
    return trace;
}

bool ConcavityReport::all_negative() const {
    return std::all_of(directions.begin(), directions.end(),
                       [](const Direction& d) { return d.second_difference < 0.0; });
}

double ConcavityReport::max_second_difference() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& d : directions) worst = std::max(worst, d.second_difference);
    return worst;
}

ConcavityReport concavity_check(const MiObjective& objective, const GainMatrix& at,
                                int directions, std::uint64_t seed,
                                double stationarity_tol) {
    const double grad_norm = mi_gradient(objective, at).norm();
    if (grad_norm > stationarity_tol) throw NotStationary(grad_norm, stationarity_tol);

    constexpr double kProbe = 1e-4;
    const double mi_center = mi_of_gain(objective, at);
    SpdCholesky post(objective.posterior_cov(at));

    RandomSource rng(seed);
    ConcavityReport report;
    report.directions.reserve(static_cast<std::size_t>(directions));
    for (int i = 0; i < directions; ++i) {
        Matrix delta = rng.gaussian_matrix(at.rows(), at.cols());
        delta /= delta.norm();  // unit Frobenius norm, so never the zero direction

        const double mi_plus =
            mi_of_gain(objective, GainMatrix(at.mat() + kProbe * delta));
        const double mi_minus =
            mi_of_gain(objective, GainMatrix(at.mat() - kProbe * delta));
        const double second_diff =
            (mi_plus - 2.0 * mi_center + mi_minus) / (kProbe * kProbe);

        const double analytic =
            -(post.solve(Matrix(delta * objective.innovation_cov().mat())).transpose() * delta)
                 .trace();

        report.directions.push_back({second_diff, analytic});
    }
    return report;
}

}  // namespace kalmi

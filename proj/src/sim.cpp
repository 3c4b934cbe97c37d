#include "kalmi/sim.hpp"

#include <stdexcept>
#include <string>

#include "kalmi/rng.hpp"

namespace kalmi {

namespace {

// Covariance square root for sampling; zero covariance yields a zero factor.
Matrix sampling_factor(const SymMatrix& cov, const std::string& name) {
    auto factor = psd_factor(cov);
    if (!factor)
        throw NotPositiveDefinite(name + " covariance square root for sampling");
    return *factor;
}

void check_dims(const Scenario& scenario) {
    const auto& model = scenario.model;
    if (model.phi.rows() != model.phi.cols() || model.gamma.rows() != model.n() ||
        model.h.cols() != model.n() || model.q.dim() != model.l() ||
        model.r.dim() != model.m())
        throw DimensionMismatch("scenario model dimensions are inconsistent");
    if (scenario.initial_truth_mean.size() != model.n() ||
        scenario.initial_truth_cov.dim() != model.n() ||
        scenario.initial_belief.dim() != model.n())
        throw DimensionMismatch("scenario initial state dimensions vs model");
    if (scenario.steps < 1) throw std::invalid_argument("steps must be >= 1");
}

}  // namespace

Trajectory generate(const Scenario& scenario) {
    check_dims(scenario);
    const auto& model = scenario.model;

    const Matrix truth_sqrt = sampling_factor(scenario.initial_truth_cov, "initial truth");
    const Matrix q_sqrt = sampling_factor(model.q, "Q");
    const Matrix r_sqrt = sampling_factor(model.r, "R");

    RandomSource init_rng(substream_seed(scenario.seed, kStreamInitialTruth));
    RandomSource w_rng(substream_seed(scenario.seed, kStreamProcessNoise));
    RandomSource v_rng(substream_seed(scenario.seed, kStreamMeasurementNoise));

    Trajectory out;
    out.truths.reserve(static_cast<std::size_t>(scenario.steps) + 1);
    out.measurements.reserve(static_cast<std::size_t>(scenario.steps));

    Vector state = scenario.initial_truth_mean +
                   truth_sqrt * init_rng.gaussian_vector(model.n());
    out.truths.push_back(state);

    for (int k = 0; k < scenario.steps; ++k) {
        state = model.phi * state +
                model.gamma * (q_sqrt * w_rng.gaussian_vector(model.l()));
        Vector z = model.h * state + r_sqrt * v_rng.gaussian_vector(model.m());
        if (!state.allFinite() || !z.allFinite())
            throw std::runtime_error("trajectory diverged to non-finite values at step " +
                                     std::to_string(k + 1));
        out.truths.push_back(state);
        out.measurements.push_back(std::move(z));
    }
    return out;
}

FilterRun run_filter(const Scenario& scenario, const Trajectory& trajectory) {
    check_dims(scenario);
    const auto& model = scenario.model;
    ValidationResult validity = validate(model);
    if (!validity.ok())
        throw std::invalid_argument("invalid model: " + validity.describe());
    if (trajectory.truths.size() != static_cast<std::size_t>(scenario.steps) + 1 ||
        trajectory.measurements.size() != static_cast<std::size_t>(scenario.steps))
        throw DimensionMismatch("trajectory length vs scenario steps");
    for (const auto& z : trajectory.measurements)
        if (z.size() != model.m())
            throw DimensionMismatch("measurement length vs model");

    FilterRun run;
    run.records.reserve(static_cast<std::size_t>(scenario.steps));
    run.nees.reserve(static_cast<std::size_t>(scenario.steps));

    GaussianBelief belief = scenario.initial_belief;
    for (int k = 0; k < scenario.steps; ++k) {
        GaussianBelief predicted = predict(belief, model);
        UpdateRecord record =
            update_optimal(predicted, trajectory.measurements[static_cast<std::size_t>(k)],
                           model, k + 1);
        belief = record.posterior;

        Vector err = belief.mean() - trajectory.truths[static_cast<std::size_t>(k) + 1];
        SpdCholesky post(belief.cov());
        run.nees.push_back(err.dot(post.solve(err)));
        run.cumulative_mi_nats += record.mi_nats;
        run.records.push_back(std::move(record));
    }

    run.mean_nees = 0.0;
    for (double v : run.nees) run.mean_nees += v;
    run.mean_nees /= static_cast<double>(run.nees.size());
    return run;
}

}  // namespace kalmi

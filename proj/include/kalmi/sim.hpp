#pragma once

#include <cstdint>
#include <vector>

#include "kalmi/filter.hpp"
#include "kalmi/model.hpp"

namespace kalmi {

/// A complete simulation setup: ground-truth initial distribution, filter
/// initial belief, horizon and seed. The truth initial covariance may be
/// exactly zero, in which case the mean is used as the initial state.
struct Scenario {
    StateSpaceModel model;
    Vector initial_truth_mean;
    SymMatrix initial_truth_cov;
    GaussianBelief initial_belief;
    int steps;
    std::uint64_t seed;
};

/// Ground truth and measurements. truths has steps+1 entries (index 0 is the
/// initial state); measurements has steps entries (one per update).
struct Trajectory {
    std::vector<Vector> truths;
    std::vector<Vector> measurements;
};

/// Simulates the state recursion and measurement equation. Process noise,
/// measurement noise and the initial-state draw come from independent
/// substreams of the scenario seed (see rng.hpp for the stream-split rule),
/// so the output is a pure function of the scenario.
///
/// Q and R only need to be PSD here: zero noise covariances are legitimate
/// for producing degenerate (noiseless) trajectories. The strict R > 0
/// requirement applies to filtering, not generation.
Trajectory generate(const Scenario& scenario);

/// Result of filtering a trajectory: per-step update records plus summary
/// statistics. nees[k] = e^T post_cov^-1 e with e the posterior mean error
/// against truth at step k+1.
struct FilterRun {
    std::vector<UpdateRecord> records;
    std::vector<double> nees;
    double cumulative_mi_nats = 0.0;
    double mean_nees = 0.0;
};

/// Runs predict/update over the trajectory starting from the scenario's
/// initial belief. Requires a fully valid model (R positive definite).
FilterRun run_filter(const Scenario& scenario, const Trajectory& trajectory);

// Substream indices under the scenario seed.
inline constexpr std::uint64_t kStreamInitialTruth = 0;
inline constexpr std::uint64_t kStreamProcessNoise = 1;
inline constexpr std::uint64_t kStreamMeasurementNoise = 2;

}  // namespace kalmi

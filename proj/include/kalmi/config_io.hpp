#pragma once

#include <stdexcept>
#include <string>

#include "kalmi/sim.hpp"
#include "kalmi/verify.hpp"

namespace kalmi {

/// A file could not be opened, read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configuration or input file is malformed or fails validation. Parse
/// errors carry file:line anchors.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses and validates a scenario configuration (JSON document with the
/// model matrices as nested row-major arrays). Throws IoError if the file
/// cannot be read and ConfigError on parse or validation failure.
Scenario load_scenario(const std::string& path);

/// Serializes a generated trajectory together with metadata naming the
/// generator contract (seed, PRNG, substream rule).
void write_trajectory(const std::string& path, const Trajectory& trajectory,
                      const Scenario& scenario);

/// Loads a trajectory file. Shape errors (jagged rows, truth/measurement
/// count mismatch) raise ConfigError; dimension agreement against a model is
/// the caller's responsibility.
Trajectory load_trajectory(const std::string& path);

/// Writes the per-step trace as delimited text: '#' summary lines, a header
/// row, then one row per update with columns
///   k, z_*, xhat_*, sigma_** (posterior covariance, row-major),
///   innovation_*, mi_nats, cum_mi_nats, nees
void write_trace(const std::string& path, const FilterRun& run,
                 const Scenario& scenario);

/// Writes the verification report as a JSON document mirroring
/// VerificationReport field-for-field.
void write_report(const std::string& path, const VerificationReport& report);
std::string report_to_json(const VerificationReport& report);

}  // namespace kalmi

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kalmi/gainopt.hpp"
#include "kalmi/rng.hpp"

namespace kalmi {

/// Outcome of one verification check over a batch of random instances.
struct CheckResult {
    std::string check_name;
    int instances_run = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool overall_passed = false;
    std::uint64_t seed = 0;
    std::string build;
    std::string timestamp;
};

// Check names, stable across releases; also the keys accepted by tolerance
// overrides.
inline constexpr const char* kCheckGainEquivalence = "gain_equivalence";
inline constexpr const char* kCheckGradientFd = "gradient_fd";
inline constexpr const char* kCheckConcavity = "concavity";
inline constexpr const char* kCheckRenyiEqualsShannon = "renyi_equals_shannon";
inline constexpr const char* kCheckSchurIdentity = "schur_identity";
inline constexpr const char* kCheckUpdateMiConsistency = "update_mi_consistency";
inline constexpr const char* kCheckJosephShortForm = "joseph_short_form";

/// Random measurement-update instance at desk scale: SPD prior covariance
/// (n in [1,4]), measurement matrix (m in [1,3]) and R = A A^T + 0.1 I.
struct UpdateInstance {
    SymMatrix prior_cov;
    Matrix h;
    SymMatrix r;
};

UpdateInstance random_update_instance(RandomSource& rng, int max_n = 4, int max_m = 3);

/// Random valid joint Gaussian with block dims in [1, max_dim]: a full
/// (N+M)-dim SPD matrix A A^T + 0.1 I split into blocks.
JointGaussian random_joint_gaussian(RandomSource& rng, int max_dim = 4);

// The seven checks. Each derives its instances deterministically from
// `seed`, runs `trials` of them and reports the worst error observed.
CheckResult check_gain_equivalence(int trials, std::uint64_t seed, double tolerance = 1e-6);
CheckResult check_gradient_fd(int trials, std::uint64_t seed, double tolerance = 1e-5);
CheckResult check_concavity(int trials, std::uint64_t seed, double tolerance = 0.0);
CheckResult check_renyi_equals_shannon(int trials, std::uint64_t seed, double tolerance = 1e-10);
CheckResult check_schur_identity(int trials, std::uint64_t seed, double tolerance = 1e-10);
CheckResult check_update_mi_consistency(int trials, std::uint64_t seed, double tolerance = 1e-10);
CheckResult check_joseph_short_form(int trials, std::uint64_t seed, double tolerance = 1e-10);

/// Runs all seven checks. `tolerance_overrides` maps check names to
/// replacement tolerances; unknown names throw std::invalid_argument.
VerificationReport run_verification(
    int trials, std::uint64_t seed,
    const std::map<std::string, double>& tolerance_overrides = {});

}  // namespace kalmi

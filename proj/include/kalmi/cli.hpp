#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace kalmi {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override);

int cmd_filter(const std::string& config_path, const std::string& trajectory_path,
               const std::string& out_path);

int cmd_verify(int trials, std::uint64_t seed,
               const std::map<std::string, double>& tolerance_overrides,
               const std::string& report_path);

/// Full argv-level entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace kalmi

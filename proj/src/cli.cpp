#include "kalmi/cli.hpp"

#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "kalmi/config_io.hpp"
#include "kalmi/information.hpp"

namespace kalmi {

namespace {

int report_exception(const std::exception& e, int code) {
    std::cerr << "error: " << e.what() << "\n";
    return code;
}

}  // namespace

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override) {
    try {
        Scenario scenario = load_scenario(config_path);
        if (seed_override) scenario.seed = *seed_override;
        Trajectory trajectory = generate(scenario);
        write_trajectory(out_path, trajectory, scenario);
        std::cout << "wrote " << trajectory.truths.size() << " truth rows and "
                  << trajectory.measurements.size() << " measurements to " << out_path
                  << "\n";
        return kExitOk;
    } catch (const IoError& e) {
        return report_exception(e, kExitIo);
    } catch (const ConfigError& e) {
        return report_exception(e, kExitUsage);
    } catch (const std::exception& e) {
        return report_exception(e, kExitUsage);
    }
}

int cmd_filter(const std::string& config_path, const std::string& trajectory_path,
               const std::string& out_path) {
    try {
        Scenario scenario = load_scenario(config_path);
        Trajectory trajectory = load_trajectory(trajectory_path);

        // The trajectory may come from anywhere; only shape agreement with
        // the configured model is required.
        if (trajectory.measurements.empty())
            throw ConfigError(trajectory_path + ": no measurements");
        for (const auto& x : trajectory.truths)
            if (x.size() != scenario.model.n())
                throw ConfigError(trajectory_path + ": truth dimension " +
                                  std::to_string(x.size()) + " != n");
        for (const auto& z : trajectory.measurements)
            if (z.size() != scenario.model.m())
                throw ConfigError(trajectory_path + ": measurement dimension " +
                                  std::to_string(z.size()) + " != m");
        scenario.steps = static_cast<int>(trajectory.measurements.size());

        FilterRun run = run_filter(scenario, trajectory);
        write_trace(out_path, run, scenario);
        std::cout << "filtered " << run.records.size() << " steps\n"
                  << "cumulative_mi_nats = " << run.cumulative_mi_nats << "\n"
                  << "cumulative_mi_bits = " << nats_to_bits(run.cumulative_mi_nats)
                  << "\n"
                  << "mean_nees = " << run.mean_nees << "\n";
        return kExitOk;
    } catch (const IoError& e) {
        return report_exception(e, kExitIo);
    } catch (const std::exception& e) {
        return report_exception(e, kExitUsage);
    }
}

int cmd_verify(int trials, std::uint64_t seed,
               const std::map<std::string, double>& tolerance_overrides,
               const std::string& report_path) {
    VerificationReport report;
    try {
        if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
        report = run_verification(trials, seed, tolerance_overrides);
    } catch (const std::exception& e) {
        return report_exception(e, kExitUsage);
    }

    for (const auto& check : report.checks) {
        std::cout << (check.passed ? "PASS " : "FAIL ") << check.check_name
                  << "  instances=" << check.instances_run
                  << "  max_error=" << check.max_error
                  << "  tolerance=" << check.tolerance << "\n";
    }
    std::cout << (report.overall_passed ? "overall: PASS" : "overall: FAIL") << "\n";

    if (!report_path.empty()) {
        try {
            write_report(report_path, report);
        } catch (const IoError& e) {
            return report_exception(e, kExitIo);
        }
    }
    return report.overall_passed ? kExitOk : kExitVerificationFailed;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Linear-Gaussian state estimation with an "
                 "information-derived Kalman gain"};
    app.require_subcommand(1);

    std::string config_path, out_path, trajectory_path, report_path;
    std::uint64_t seed = 0;
    int trials = 100;
    std::vector<std::string> tol_args;

    CLI::App* simulate = app.add_subcommand("simulate", "Generate a seeded trajectory");
    simulate->add_option("--config", config_path, "Scenario configuration (JSON)")
        ->required();
    simulate->add_option("--out", out_path, "Trajectory output path")->required();
    simulate->add_option("--seed", seed, "Override the configured seed");

    CLI::App* filter = app.add_subcommand("filter", "Run the filter over a trajectory");
    filter->add_option("--config", config_path, "Scenario configuration (JSON)")
        ->required();
    filter->add_option("--trajectory", trajectory_path, "Trajectory file")->required();
    filter->add_option("--out", out_path, "Trace output path (CSV)")->required();

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--trials", trials, "Random instances per check");
    verify->add_option("--seed", seed, "Master seed for instance generation");
    verify->add_option("--tol", tol_args, "Tolerance override NAME=VALUE (repeatable)");
    verify->add_option("--report", report_path, "Report output path (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 returns 0 for --help; everything else is a usage error.
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (simulate->parsed()) {
        return cmd_simulate(config_path, out_path,
                            simulate->count("--seed") > 0
                                ? std::optional<std::uint64_t>(seed)
                                : std::nullopt);
    }
    if (filter->parsed()) {
        return cmd_filter(config_path, trajectory_path, out_path);
    }

    std::map<std::string, double> overrides;
    for (const auto& arg : tol_args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --tol expects NAME=VALUE, got \"" << arg << "\"\n";
            return kExitUsage;
        }
        try {
            overrides[arg.substr(0, eq)] = std::stod(arg.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "error: bad tolerance value in \"" << arg << "\"\n";
            return kExitUsage;
        }
    }
    return cmd_verify(trials, seed, overrides, report_path);
}

}  // namespace kalmi

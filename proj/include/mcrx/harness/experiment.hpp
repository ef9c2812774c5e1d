#pragma once

#include "mcrx/harness/config.hpp"
#include "mcrx/harness/report.hpp"
#include "mcrx/signal.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace mcrx::harness {

enum class Command { Analytical, Simulate, Detect, Transform, Verify };

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitVerificationFailed = 2;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> output_dir;
    std::optional<std::size_t> realizations;
    unsigned threads = 0;
};

/// Curves keyed by id (e.g. "absorbing_cir_transformed_simulated") and the
/// report built from them. Curves are in natural units.
struct ExperimentOutput {
    std::map<std::string, TimeSeries> curves;
    VerificationReport report;
};

/// Tasks from cfg that `command` runs, in execution order.
std::vector<Task> selected_tasks(const ExperimentConfig& cfg, Command command);

/// Largest value of the analytical curve of `family` over (0, T].
CurveMaximum analytical_maximum(const SystemConfig& system, SignalFamily family);

/// Runs the selected tasks in memory and evaluates the declared checks.
/// Checks whose curves were not produced are skipped unless command is Verify.
ExperimentOutput run_tasks(const ExperimentConfig& cfg, Command command, unsigned threads = 0);

/// Applies overrides, runs, and writes one CSV per curve plus
/// <name>_report.txt and <name>_report.json. Returns an exit code.
int run_experiment(const std::filesystem::path& config_path, Command command, const Overrides& overrides,
                   std::ostream& log, std::ostream& err);

} // namespace mcrx::harness

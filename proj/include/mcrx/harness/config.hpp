#pragma once

// Experiment configuration: a JSON document describing the system, which
// tasks to run and which tolerance checks the verification report applies.

#include "mcrx/simulator.hpp"
#include "mcrx/system_config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcrx::harness {

/// Parse or validation failure. what() carries a "<file>:<line>: ..." prefix
/// when the location is known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Task { Analytical, SimulatePassive, SimulateAbsorbing, Detect, TransformAnalytical, TransformSimulated };

enum class Normalization { Raw, NormalizedToAnalyticalMax };

enum class CheckType { PairTolerance, MedianLess, RuntimeLess };

/// One declared verification check.
///  - PairTolerance: compare `curve` against `reference` over t >= t_min and
///    require max / median relative error below the given bounds.
///  - MedianLess: median error of (curve, reference) must be below that of
///    (other_curve, other_reference).
///  - RuntimeLess: simulation `curve` ("passive"/"absorbing") must finish
///    faster than `other_curve`.
struct Check {
    std::string name;
    CheckType type = CheckType::PairTolerance;
    std::string curve;
    std::string reference;
    std::string other_curve;
    std::string other_reference;
    double t_min = 0.0;
    std::optional<double> max_rel_error;
    std::optional<double> median_rel_error;
};

struct ExperimentConfig {
    std::string name;
    SystemConfig system;
    double passive_time_step = 0.0;
    double absorbing_time_step = 0.0;
    bool total_time_derived = false;   // T was not given and the derived default was used
    std::uint64_t seed = 0;
    StepMode stepping = StepMode::Adaptive;
    std::vector<Task> tasks;
    Normalization normalization = Normalization::Raw;
    std::filesystem::path output_dir;
    std::vector<Check> checks;

    bool has(Task task) const;
    SimConfig sim_config(RxModel model) const;
};

/// Derived default observation time when total_time is omitted: 0.042 s for
/// 3D, 0.124 s for 1D (back-computed from the reference end values).
double default_total_time(Dimension dimension);

/// Curve ids the task list can produce (the keys used by checks).
std::set<std::string> producible_curves(const std::vector<Task>& tasks);

std::string_view to_string(Task task);

ExperimentConfig parse_config(const std::string& text, const std::string& source_name = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

} // namespace mcrx::harness

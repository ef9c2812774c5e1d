#include "mcrx/harness/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace mcrx::harness {

namespace {

using nlohmann::json;

constexpr std::array task_names{
    std::pair{Task::Analytical, std::string_view{"analytical"}},
    std::pair{Task::SimulatePassive, std::string_view{"simulate_passive"}},
    std::pair{Task::SimulateAbsorbing, std::string_view{"simulate_absorbing"}},
    std::pair{Task::Detect, std::string_view{"detect"}},
    std::pair{Task::TransformAnalytical, std::string_view{"transform_analytical"}},
    std::pair{Task::TransformSimulated, std::string_view{"transform_simulated"}},
};

constexpr std::array<std::string_view, 4> families{"passive_cir", "absorbing_cir", "passive_ed", "absorption_rate"};

class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& key, const std::string& message) const
    {
        std::ostringstream os;
        os << source_;
        if (auto line = line_of(key)) os << ':' << *line;
        os << ": " << message;
        throw ConfigError(os.str());
    }

    const json& member(const json& obj, const std::string& key, const std::string& path) const
    {
        if (!obj.is_object() || !obj.contains(key)) fail(key, path + key + ": required field missing");
        return obj.at(key);
    }

    double number(const json& obj, const std::string& key, const std::string& path) const
    {
        const json& v = member(obj, key, path);
        if (!v.is_number()) fail(key, path + key + ": expected a number");
        return v.get<double>();
    }

    double positive(const json& obj, const std::string& key, const std::string& path) const
    {
        const double v = number(obj, key, path);
        if (!(v > 0.0) || !std::isfinite(v)) fail(key, path + key + ": must be > 0");
        return v;
    }

    std::uint64_t count(const json& obj, const std::string& key, const std::string& path) const
    {
        const json& v = member(obj, key, path);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (d >= 1.0 && std::floor(d) == d && d < 1.8e19) return static_cast<std::uint64_t>(d);
        }
        fail(key, path + key + ": expected a positive integer");
    }

    std::string string(const json& obj, const std::string& key, const std::string& path) const
    {
        const json& v = member(obj, key, path);
        if (!v.is_string()) fail(key, path + key + ": expected a string");
        return v.get<std::string>();
    }

private:
    std::optional<std::size_t> line_of(const std::string& key) const
    {
        const auto pos = text_.find('"' + key + '"');
        if (pos == std::string::npos) return std::nullopt;
        return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    }

    const std::string& text_;
    std::string source_;
};

Task parse_task(const Reader& rd, const std::string& name)
{
    for (const auto& [t, n] : task_names)
        if (n == name) return t;
    rd.fail(name, "tasks: unknown task '" + name + "'");
}

Check parse_check(const Reader& rd, const json& j, std::size_t index)
{
    const std::string path = "checks[" + std::to_string(index) + "].";
    Check c;
    c.name = rd.string(j, "name", path);
    const std::string type = j.contains("type") ? rd.string(j, "type", path) : "pair";
    if (type == "pair") c.type = CheckType::PairTolerance;
    else if (type == "median_less") c.type = CheckType::MedianLess;
    else if (type == "runtime_less") c.type = CheckType::RuntimeLess;
    else rd.fail(c.name, path + "type: unknown check type '" + type + "'");

    if (c.type == CheckType::RuntimeLess) {
        c.curve = rd.string(j, "faster", path);
        c.other_curve = rd.string(j, "slower", path);
        for (const auto& sim : {c.curve, c.other_curve})
            if (sim != "passive" && sim != "absorbing")
                rd.fail(c.name, path + ": runtime checks name 'passive' or 'absorbing'");
        return c;
    }
    c.curve = rd.string(j, "curve", path);
    c.reference = rd.string(j, "reference", path);
    c.t_min = j.contains("t_min") ? rd.number(j, "t_min", path) : 0.0;
    if (c.type == CheckType::MedianLess) {
        c.other_curve = rd.string(j, "other_curve", path);
        c.other_reference = rd.string(j, "other_reference", path);
        return c;
    }
    if (j.contains("max_rel_error")) c.max_rel_error = rd.positive(j, "max_rel_error", path);
    if (j.contains("median_rel_error")) c.median_rel_error = rd.positive(j, "median_rel_error", path);
    if (!c.max_rel_error && !c.median_rel_error)
        rd.fail(c.name, path + ": pair check needs max_rel_error and/or median_rel_error");
    return c;
}

void require_task(const Reader& rd, const ExperimentConfig& cfg, Task task, Task needed)
{
    if (cfg.has(task) && !cfg.has(needed))
        rd.fail(std::string(to_string(task)), "tasks: '" + std::string(to_string(task)) + "' requires '"
                                                  + std::string(to_string(needed)) + "'");
}

} // namespace

bool ExperimentConfig::has(Task task) const
{
    return std::find(tasks.begin(), tasks.end(), task) != tasks.end();
}

SimConfig ExperimentConfig::sim_config(RxModel model) const
{
    return SimConfig{system, model, seed, model == RxModel::Passive ? passive_time_step : absorbing_time_step, stepping};
}

double default_total_time(Dimension dimension)
{
    return dimension == Dimension::Three ? 0.042 : 0.124;
}

std::string_view to_string(Task task)
{
    for (const auto& [t, n] : task_names)
        if (t == task) return n;
    return "?";
}

std::set<std::string> producible_curves(const std::vector<Task>& tasks)
{
    auto has = [&](Task t) { return std::find(tasks.begin(), tasks.end(), t) != tasks.end(); };
    const bool passive = has(Task::SimulatePassive);
    const bool absorbing = has(Task::SimulateAbsorbing);
    const bool detect = has(Task::Detect) && (passive || absorbing);

    std::set<std::string> out;
    if (has(Task::Analytical)) {
        for (auto f : families) {
            out.insert(std::string(f) + "_analytical");
            out.insert(std::string(f) + "_analytical_mid");
        }
    }
    if (passive) out.insert("passive_cir_simulated");
    if (absorbing) out.insert("absorbing_cir_simulated");
    if (detect && passive) out.insert("passive_ed_simulated");
    if (detect && absorbing) out.insert("absorption_rate_simulated");

    auto add_transformed = [&](std::string_view family, std::string_view source) {
        out.insert(std::string(family) + "_transformed_" + std::string(source));
        out.insert(std::string(family) + "_asymptotic_transformed_" + std::string(source));
    };
    if (has(Task::TransformAnalytical) && has(Task::Analytical))
        for (auto f : families) add_transformed(f, "analytical");
    if (has(Task::TransformSimulated) && detect) {
        if (passive) {
            add_transformed("absorbing_cir", "simulated");
            add_transformed("absorption_rate", "simulated");
        }
        if (absorbing) {
            add_transformed("passive_ed", "simulated");
            add_transformed("passive_cir", "simulated");
        }
    }
    return out;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source_name)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Byte offset -> line.
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ConfigError(source_name + ":" + std::to_string(line) + ": JSON parse error: " + e.what());
    }
    const Reader rd(text, source_name);
    if (!root.is_object()) rd.fail("", "top level must be a JSON object");

    ExperimentConfig cfg;
    cfg.name = rd.string(root, "name", "");
    if (cfg.name.empty() || cfg.name.find_first_of("/\\ ") != std::string::npos)
        rd.fail("name", "name: must be a non-empty token without spaces or slashes");

    const json& sys = rd.member(root, "system", "");
    const std::string sp = "system.";
    SystemConfig& s = cfg.system;
    const auto dims = rd.count(sys, "dimension", sp);
    if (dims != 1 && dims != 3) rd.fail("dimension", "system.dimension: must be 1 or 3");
    s.dimension = dims == 1 ? Dimension::One : Dimension::Three;
    s.n_released = rd.count(sys, "n_released", sp);
    s.diff_coef = rd.positive(sys, "diff_coef", sp);
    s.distance = rd.positive(sys, "distance", sp);
    s.rx_radius = rd.positive(sys, "rx_radius", sp);
    if (!(s.rx_radius < s.distance)) rd.fail("rx_radius", "system.rx_radius: must be smaller than system.distance");
    s.sampling_period = rd.positive(sys, "sampling_period", sp);
    cfg.passive_time_step = rd.positive(sys, "passive_time_step", sp);
    cfg.absorbing_time_step = rd.positive(sys, "absorbing_time_step", sp);
    s.realizations = rd.count(sys, "realizations", sp);

    double total = 0.0;
    if (sys.contains("total_time")) {
        total = rd.positive(sys, "total_time", sp);
    } else {
        total = default_total_time(s.dimension);
        cfg.total_time_derived = true;
    }
    const double samples = std::round(total / s.sampling_period);
    if (samples < 2.0 || std::abs(samples * s.sampling_period - total) > 1e-9 * total)
        rd.fail("total_time", "system.total_time: must be a multiple (>= 2) of sampling_period");
    s.sample_count = static_cast<std::size_t>(samples);

    cfg.seed = root.contains("seed") ? rd.count(root, "seed", "") : 0;
    if (root.contains("stepping")) {
        const std::string mode = rd.string(root, "stepping", "");
        if (mode == "fine") cfg.stepping = StepMode::Fine;
        else if (mode == "adaptive") cfg.stepping = StepMode::Adaptive;
        else rd.fail("stepping", "stepping: expected 'fine' or 'adaptive'");
    }
    if (root.contains("normalization")) {
        const std::string mode = rd.string(root, "normalization", "");
        if (mode == "raw") cfg.normalization = Normalization::Raw;
        else if (mode == "normalized") cfg.normalization = Normalization::NormalizedToAnalyticalMax;
        else rd.fail("normalization", "normalization: expected 'raw' or 'normalized'");
    }
    cfg.output_dir = root.contains("output_dir") ? rd.string(root, "output_dir", "") : "out/" + cfg.name;

    const json& tasks = rd.member(root, "tasks", "");
    if (!tasks.is_array() || tasks.empty()) rd.fail("tasks", "tasks: expected a non-empty array");
    for (const auto& t : tasks) {
        if (!t.is_string()) rd.fail("tasks", "tasks: entries must be strings");
        const Task task = parse_task(rd, t.get<std::string>());
        if (!cfg.has(task)) cfg.tasks.push_back(task);
    }
    if (cfg.has(Task::Detect) && !cfg.has(Task::SimulatePassive) && !cfg.has(Task::SimulateAbsorbing))
        rd.fail("detect", "tasks: 'detect' requires 'simulate_passive' or 'simulate_absorbing'");
    require_task(rd, cfg, Task::TransformAnalytical, Task::Analytical);
    require_task(rd, cfg, Task::TransformSimulated, Task::Detect);

    try {
        for (RxModel m : {RxModel::Passive, RxModel::Absorbing}) cfg.sim_config(m).validate();
    } catch (const std::invalid_argument& e) {
        rd.fail("system", std::string("system: ") + e.what());
    }

    if (root.contains("checks")) {
        const json& checks = root.at("checks");
        if (!checks.is_array()) rd.fail("checks", "checks: expected an array");
        const auto curves = producible_curves(cfg.tasks);
        for (std::size_t i = 0; i < checks.size(); ++i) {
            Check c = parse_check(rd, checks[i], i);
            if (c.type == CheckType::RuntimeLess) {
                for (const auto& sim : {c.curve, c.other_curve}) {
                    const Task needed = sim == "passive" ? Task::SimulatePassive : Task::SimulateAbsorbing;
                    if (!cfg.has(needed))
                        rd.fail(c.name, "checks[" + std::to_string(i) + "]: needs task '"
                                            + std::string(to_string(needed)) + "'");
                }
            } else {
                for (const auto* id : {&c.curve, &c.reference, &c.other_curve, &c.other_reference})
                    if (!id->empty() && !curves.contains(*id))
                        rd.fail(*id, "checks[" + std::to_string(i) + "]: curve '" + *id
                                         + "' is not produced by the configured tasks");
            }
            cfg.checks.push_back(std::move(c));
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

} // namespace mcrx::harness

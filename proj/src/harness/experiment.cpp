#include "mcrx/harness/experiment.hpp"

#include "mcrx/channel_models.hpp"
#include "mcrx/detectors.hpp"
#include "mcrx/harness/csv.hpp"
#include "mcrx/simulator.hpp"
#include "mcrx/transforms.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mcrx::harness {

namespace {

constexpr std::array kFamilies{SignalFamily::PassiveCir, SignalFamily::AbsorbingCir, SignalFamily::PassiveEd,
                               SignalFamily::AbsorptionRate};

std::string transformed_id(SignalFamily family, TransformVariant variant, std::string_view source)
{
    return std::string(to_string(family))
        + (variant == TransformVariant::Full ? "_transformed_" : "_asymptotic_transformed_") + std::string(source);
}

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string pct(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v * 100.0 << '%';
    return os.str();
}

// Brings `reference` onto the grid of `curve`: identical grids pass through,
// a reference whose leading points match the curve's grid is truncated.
TimeSeries align_reference(const TimeSeries& curve, const TimeSeries& reference)
{
    if (reference.size() > curve.size()) {
        const TimeSeries cut = reference.prefix(curve.size());
        if (std::equal(cut.times().begin(), cut.times().end(), curve.times().begin())) return cut;
    }
    return reference;
}

struct Runner {
    const ExperimentConfig& cfg;
    unsigned threads;
    ExperimentOutput out;
    std::map<RxModel, double> sim_seconds;

    void put(const std::string& id, TimeSeries series) { out.curves.insert_or_assign(id, std::move(series)); }
    const TimeSeries* find(const std::string& id) const
    {
        auto it = out.curves.find(id);
        return it == out.curves.end() ? nullptr : &it->second;
    }

    void analytical()
    {
        const SystemConfig& s = cfg.system;
        const auto grid = s.sample_times();
        const auto mid = s.midpoint_times(s.sample_count);
        for (SignalFamily f : kFamilies) {
            const SignalKind kind{f, s.dimension, Provenance::Analytical};
            put(std::string(to_string(f)) + "_analytical", evaluate_series(s, kind, grid));
            put(std::string(to_string(f)) + "_analytical_mid", evaluate_series(s, kind, mid));
        }
    }

    void simulate(RxModel model)
    {
        const EnsembleResult r = run_ensemble(cfg.sim_config(model), threads);
        sim_seconds[model] = r.elapsed_seconds;
        out.report.runtimes.push_back({model == RxModel::Passive ? "simulate_passive" : "simulate_absorbing",
                                       r.elapsed_seconds});
        put(model == RxModel::Passive ? "passive_cir_simulated" : "absorbing_cir_simulated", to_series(r));
    }

    static SampledObservation observation_of(const TimeSeries& series, double dt)
    {
        return SampledObservation{dt, {series.values().begin(), series.values().end()}, series.kind().dimension,
                                  series.kind().provenance};
    }

    void detect()
    {
        const double dt = cfg.system.sampling_period;
        if (const auto* p = find("passive_cir_simulated"))
            put("passive_ed_simulated", energy_detector(observation_of(*p, dt)));
        if (const auto* a = find("absorbing_cir_simulated"))
            put("absorption_rate_simulated", absorption_rate_detector(observation_of(*a, dt)));
    }

    void transform_from(std::string_view source, const std::string& input_id, TransformFamily family,
                        TransformDirection direction)
    {
        const TimeSeries* input = find(input_id);
        if (!input) return;
        for (TransformVariant v : {TransformVariant::Full, TransformVariant::Asymptotic}) {
            const TransformSpec spec{family, cfg.system.dimension, v, direction};
            put(transformed_id(spec.output_family(), v, source), transform_series(spec, *input, cfg.system));
        }
    }

    void transform(std::string_view source)
    {
        const bool analytic = source == "analytical";
        const std::string suffix = analytic ? "_analytical" : "_simulated";
        transform_from(source, "passive_ed" + suffix + (analytic ? "_mid" : ""), TransformFamily::SPrime,
                       TransformDirection::Forward);
        transform_from(source, "passive_cir" + suffix, TransformFamily::SDoublePrime, TransformDirection::Forward);
        transform_from(source, "absorbing_cir" + suffix, TransformFamily::SPrime, TransformDirection::Inverse);
        transform_from(source, "absorption_rate" + suffix, TransformFamily::SDoublePrime,
                       TransformDirection::Inverse);
    }

    // Analytical curve of the same family on the curve's grid, if any.
    const TimeSeries* natural_reference(const TimeSeries& curve) const
    {
        const std::string base = std::string(to_string(curve.kind().family)) + "_analytical";
        for (const std::string& id : {base, base + "_mid"}) {
            const TimeSeries* ref = find(id);
            if (!ref) continue;
            const TimeSeries aligned = align_reference(curve, *ref);
            if (std::equal(aligned.times().begin(), aligned.times().end(), curve.times().begin(), curve.times().end()))
                return ref;
        }
        return nullptr;
    }

    std::string id_of(const TimeSeries* series) const
    {
        for (const auto& [id, s] : out.curves)
            if (&s == series) return id;
        return {};
    }

    void summarize_pairs()
    {
        const double t_min = 5.0 * cfg.system.sampling_period;
        for (const auto& [id, curve] : out.curves) {
            if (curve.kind().provenance == Provenance::Analytical) continue;
            const TimeSeries* ref = natural_reference(curve);
            if (!ref) continue;
            try {
                out.report.pairs.push_back({id, id_of(ref), t_min, compare_curves(curve, align_reference(curve, *ref), t_min)});
            } catch (const std::invalid_argument&) {
                // Fewer than five samples: nothing to summarize.
            }
        }
    }

    CurveComparison compare_ids(const std::string& a, const std::string& b, double t_min) const
    {
        const TimeSeries& ca = out.curves.at(a);
        return compare_curves(ca, align_reference(ca, out.curves.at(b)), t_min);
    }

    void evaluate_checks(bool strict)
    {
        for (const Check& c : cfg.checks) {
            CheckOutcome oc{c.name, false, {}};
            if (c.type == CheckType::RuntimeLess) {
                const RxModel fast = c.curve == "passive" ? RxModel::Passive : RxModel::Absorbing;
                const RxModel slow = c.other_curve == "passive" ? RxModel::Passive : RxModel::Absorbing;
                if (!sim_seconds.contains(fast) || !sim_seconds.contains(slow)) {
                    if (!strict) continue;
                    oc.detail = "simulation not run";
                } else {
                    oc.passed = sim_seconds[fast] < sim_seconds[slow];
                    std::ostringstream os;
                    os << c.curve << ' ' << sim_seconds[fast] << " s vs " << c.other_curve << ' ' << sim_seconds[slow]
                       << " s";
                    oc.detail = os.str();
                }
                out.report.checks.push_back(oc);
                continue;
            }
            std::vector<std::string> needed{c.curve, c.reference};
            if (c.type == CheckType::MedianLess) needed.insert(needed.end(), {c.other_curve, c.other_reference});
            const bool available = std::all_of(needed.begin(), needed.end(), [&](const auto& id) { return find(id); });
            if (!available) {
                if (!strict) continue;
                oc.detail = "curve not produced";
                out.report.checks.push_back(oc);
                continue;
            }
            try {
                const CurveComparison e = compare_ids(c.curve, c.reference, c.t_min);
                std::ostringstream os;
                if (c.type == CheckType::MedianLess) {
                    const CurveComparison other = compare_ids(c.other_curve, c.other_reference, c.t_min);
                    oc.passed = e.median_rel_error < other.median_rel_error;
                    os << "median " << pct(e.median_rel_error) << " vs " << pct(other.median_rel_error) << " ("
                       << c.other_curve << ")";
                } else {
                    oc.passed = true;
                    if (c.max_rel_error) {
                        oc.passed = oc.passed && e.max_rel_error < *c.max_rel_error;
                        os << "max " << pct(e.max_rel_error) << " (limit " << pct(*c.max_rel_error) << ") ";
                    }
                    if (c.median_rel_error) {
                        oc.passed = oc.passed && e.median_rel_error < *c.median_rel_error;
                        os << "median " << pct(e.median_rel_error) << " (limit " << pct(*c.median_rel_error) << ")";
                    }
                }
                oc.detail = os.str();
            } catch (const std::invalid_argument& ex) {
                oc.detail = ex.what();
            }
            out.report.checks.push_back(oc);
        }
    }
};

} // namespace

std::vector<Task> selected_tasks(const ExperimentConfig& cfg, Command command)
{
    std::vector<Task> wanted;
    switch (command) {
    case Command::Analytical: wanted = {Task::Analytical}; break;
    case Command::Simulate: wanted = {Task::SimulatePassive, Task::SimulateAbsorbing}; break;
    case Command::Detect: wanted = {Task::SimulatePassive, Task::SimulateAbsorbing, Task::Detect}; break;
    case Command::Transform:
    case Command::Verify:
        wanted = {Task::Analytical, Task::SimulatePassive, Task::SimulateAbsorbing, Task::Detect,
                  Task::TransformAnalytical, Task::TransformSimulated};
        break;
    }
    if (command == Command::Transform) {
        // Only the producers the configured transforms depend on.
        const bool ta = cfg.has(Task::TransformAnalytical);
        const bool ts = cfg.has(Task::TransformSimulated);
        std::erase_if(wanted, [&](Task t) {
            switch (t) {
            case Task::Analytical: return !ta;
            case Task::SimulatePassive:
            case Task::SimulateAbsorbing:
            case Task::Detect: return !ts;
            case Task::TransformAnalytical: return !ta;
            case Task::TransformSimulated: return !ts;
            }
            return true;
        });
    }
    std::erase_if(wanted, [&](Task t) { return !cfg.has(t); });
    return wanted;
}

CurveMaximum analytical_maximum(const SystemConfig& system, SignalFamily family)
{
    const double total = system.total_time();
    double t = total;
    if (family == SignalFamily::PassiveCir || family == SignalFamily::AbsorptionRate)
        t = std::min(peak_time(system, family), total);
    return {std::string(to_string(family)), evaluate(system, family, t), std::string(to_string(natural_units(family))), t};
}

ExperimentOutput run_tasks(const ExperimentConfig& cfg, Command command, unsigned threads)
{
    Runner run{cfg, threads, {}, {}};
    VerificationReport& rep = run.out.report;
    rep.system = cfg.name;
    rep.seed = cfg.seed;
    rep.realizations = cfg.system.realizations;
    rep.total_time = cfg.system.total_time();
    rep.total_time_derived = cfg.total_time_derived;
    for (SignalFamily f : kFamilies) rep.maxima.push_back(analytical_maximum(cfg.system, f));

    for (Task task : selected_tasks(cfg, command)) {
        const Timer timer;
        switch (task) {
        case Task::Analytical: run.analytical(); break;
        case Task::SimulatePassive: run.simulate(RxModel::Passive); continue;
        case Task::SimulateAbsorbing: run.simulate(RxModel::Absorbing); continue;
        case Task::Detect: run.detect(); break;
        case Task::TransformAnalytical: run.transform("analytical"); break;
        case Task::TransformSimulated: run.transform("simulated"); break;
        }
        rep.runtimes.push_back({std::string(to_string(task)), timer.seconds()});
    }
    run.summarize_pairs();
    run.evaluate_checks(command == Command::Verify);
    return std::move(run.out);
}

int run_experiment(const std::filesystem::path& config_path, Command command, const Overrides& overrides,
                   std::ostream& log, std::ostream& err)
{
    ExperimentConfig cfg;
    try {
        cfg = load_config(config_path);
        if (overrides.seed) cfg.seed = *overrides.seed;
        if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
        if (overrides.realizations) {
            if (*overrides.realizations < 1) throw ConfigError("--realizations must be >= 1");
            cfg.system.realizations = *overrides.realizations;
        }
        if (selected_tasks(cfg, command).empty())
            throw ConfigError(config_path.string() + ": no configured task applies to this subcommand");
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    ExperimentOutput result = run_tasks(cfg, command, overrides.threads);

    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) {
        err << "error: cannot create " << cfg.output_dir.string() << ": " << ec.message() << "\n";
        return kExitConfigError;
    }

    std::map<SignalFamily, double> reference_max;
    for (const auto& m : result.report.maxima) reference_max[parse_family(m.curve)] = m.value;

    for (const auto& [id, series] : result.curves) {
        const std::string file = cfg.name + "_" + id + ".csv";
        if (cfg.normalization == Normalization::NormalizedToAnalyticalMax)
            write_csv(cfg.output_dir / file, normalize_series(series, reference_max.at(series.kind().family)));
        else
            write_csv(cfg.output_dir / file, series);
        result.report.files.push_back(file);
    }
    {
        std::ofstream txt(cfg.output_dir / (cfg.name + "_report.txt"), std::ios::binary | std::ios::trunc);
        txt << format_text(result.report);
        std::ofstream js(cfg.output_dir / (cfg.name + "_report.json"), std::ios::binary | std::ios::trunc);
        js << format_json(result.report);
    }
    log << format_text(result.report);

    if (command == Command::Verify && !result.report.all_passed()) return kExitVerificationFailed;
    return kExitOk;
}

} // namespace mcrx::harness

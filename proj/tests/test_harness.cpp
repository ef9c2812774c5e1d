#include "mcrx/channel_models.hpp"
#include "mcrx/harness/config.hpp"
#include "mcrx/harness/csv.hpp"
#include "mcrx/harness/experiment.hpp"
#include "mcrx/harness/report.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

using namespace mcrx;
using namespace mcrx::harness;
namespace fs = std::filesystem;

namespace {

std::string small_config(const std::string& extra_tasks = "", const std::string& checks = "[]")
{
    return R"({
  "name": "tiny",
  "system": {
    "dimension": 1,
    "n_released": 200,
    "diff_coef": 1e-9,
    "distance": 5e-6,
    "rx_radius": 0.5e-6,
    "sampling_period": 2e-3,
    "passive_time_step": 1e-3,
    "absorbing_time_step": 0.5e-3,
    "realizations": 20
  },
  "seed": 3,
  "tasks": ["analytical", "simulate_passive", "simulate_absorbing", "detect",
            "transform_analytical", "transform_simulated")" + extra_tasks + R"(],
  "checks": )" + checks + "\n}\n";
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("mcrx_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string error_of(const std::string& text)
{
    try {
        parse_config(text, "cfg.json");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("config parsing")
{
    const auto cfg = parse_config(small_config());
    CHECK(cfg.name == "tiny");
    CHECK(cfg.system.dimension == Dimension::One);
    CHECK(cfg.system.n_released == 200);
    CHECK(cfg.total_time_derived);
    CHECK(cfg.system.sample_count == 62);
    CHECK(cfg.system.total_time() == doctest::Approx(0.124));
    CHECK(cfg.output_dir == fs::path("out/tiny"));
    CHECK(cfg.sim_config(RxModel::Passive).sim_time_step == 1e-3);
    CHECK(cfg.sim_config(RxModel::Absorbing).sim_time_step == 0.5e-3);
    CHECK(cfg.sim_config(RxModel::Absorbing).seed == 3);
    CHECK(default_total_time(Dimension::Three) == 0.042);
}

TEST_CASE("config diagnostics carry line numbers")
{
    std::string bad = small_config();
    bad.replace(bad.find("\"n_released\": 200"), 17, "\"n_released\": -4");
    const std::string e1 = error_of(bad);
    CHECK(e1.find("cfg.json:5:") == 0);
    CHECK(e1.find("n_released") != std::string::npos);

    std::string syntax = small_config();
    syntax.replace(syntax.find("\"seed\": 3,"), 10, "\"seed\": 3,,");
    CHECK(error_of(syntax).find("cfg.json:14:") == 0);

    std::string missing = small_config();
    missing.replace(missing.find("    \"realizations\": 20\n"), 23, "    \"x\": 1\n");
    CHECK(error_of(missing).find("realizations") != std::string::npos);

    std::string task = small_config(", \"bogus\"");
    CHECK(error_of(task).find("bogus") != std::string::npos);
}

TEST_CASE("task dependencies")
{
    const std::string base = small_config();
    std::string only_transform = base;
    const auto start = only_transform.find("\"tasks\"");
    const auto end = only_transform.find(']', start);
    only_transform.replace(start, end - start + 1, "\"tasks\": [\"transform_analytical\"]");
    CHECK(error_of(only_transform).find("analytical") != std::string::npos);

    std::string detect_only = base;
    detect_only.replace(start, end - start + 1, "\"tasks\": [\"analytical\", \"detect\"]");
    CHECK(error_of(detect_only).find("detect") != std::string::npos);

    const std::string unknown_curve = small_config(
        "", R"([{"name": "x", "curve": "nope_simulated", "reference": "passive_cir_analytical", "max_rel_error": 0.1}])");
    CHECK(error_of(unknown_curve).find("nope_simulated") != std::string::npos);

    const auto curves = producible_curves({Task::Analytical, Task::SimulatePassive, Task::Detect,
                                           Task::TransformSimulated});
    CHECK(curves.contains("passive_ed_simulated"));
    CHECK(curves.contains("absorbing_cir_transformed_simulated"));
    CHECK_FALSE(curves.contains("absorption_rate_simulated"));
}

TEST_CASE("normalization")
{
    const auto s1 = mcrx::testing::system1();
    const auto grid = s1.sample_times();
    const auto cir = evaluate_series(s1, {SignalFamily::PassiveCir, Dimension::Three}, grid);
    const auto self = normalize_series(cir, cir.max_value());
    CHECK(self.max_value() == 1.0);
    CHECK(self.units() == Units::Dimensionless);
    CHECK(self.kind() == cir.kind());
    const auto peak = analytical_maximum(s1, SignalFamily::PassiveCir);
    CHECK(peak.value == doctest::Approx(24.7).epsilon(0.005));
    CHECK(normalize_series(cir, peak.value).max_value() <= 1.0);
    CHECK_THROWS_AS(normalize_series(cir, 0.0), std::invalid_argument);
}

TEST_CASE("curve comparison")
{
    const auto s1 = mcrx::testing::system1();
    const auto grid = s1.sample_times();
    const auto cir = evaluate_series(s1, {SignalFamily::PassiveCir, Dimension::Three}, grid);
    const auto same = compare_curves(cir, cir, 0.0);
    CHECK(same.max_rel_error == 0.0);
    CHECK(same.median_rel_error == 0.0);
    CHECK(same.points == grid.size());

    const TimeSeries a({1.0, 2.0, 3.0}, {1.1, 2.0, 3.3}, cir.kind());
    const TimeSeries b({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, cir.kind());
    const auto cmp = compare_curves(a, b, 1.5);
    CHECK(cmp.points == 2);
    CHECK(cmp.max_rel_error == doctest::Approx(0.1));
    CHECK(cmp.t_at_max == 3.0);
    const TimeSeries shifted({1.0, 2.5, 3.0}, {1.0, 2.0, 3.0}, cir.kind());
    CHECK_THROWS_AS(compare_curves(a, shifted, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(compare_curves(a, b, 10.0), std::invalid_argument);
}

TEST_CASE("csv round trip is bit exact")
{
    const auto s2 = mcrx::testing::system2();
    const SignalKind kind{SignalFamily::PassiveEd, Dimension::One, Provenance::Transformed};
    std::vector<double> values;
    for (double t : s2.sample_times()) values.push_back(ed_passive_1d(s2, t) / 3.0);
    values[0] = std::numeric_limits<double>::denorm_min();
    values[1] = 0.0;
    const TimeSeries series(s2.sample_times(), values, kind);
    const std::string text = format_csv(series);
    CHECK(text.rfind("time_s,value,units,kind,provenance\n", 0) == 0);
    CHECK(text.find(",mol*s,passive_ed_1d,transformed") != std::string::npos);
    CHECK(parse_csv(text) == series);

    const auto dir = scratch("csv");
    write_csv(dir / "a.csv", series);
    CHECK(read_csv(dir / "a.csv") == series);
    const auto norm = normalize_series(series, 7.0);
    write_csv(dir / "b.csv", norm);
    CHECK(read_csv(dir / "b.csv") == norm);
    CHECK_THROWS(parse_csv("time_s,value\n1,2\n"));
}

TEST_CASE("run_tasks on a small system")
{
    const std::string checks = R"([
    {"name": "identity", "curve": "absorption_rate_transformed_analytical",
     "reference": "absorption_rate_analytical", "max_rel_error": 1e-12},
    {"name": "passive", "curve": "passive_cir_simulated", "reference": "passive_cir_analytical",
     "t_min": 0.01, "median_rel_error": 0.3},
    {"name": "speed", "type": "runtime_less", "faster": "passive", "slower": "absorbing"}
  ])";
    const auto cfg = parse_config(small_config("", checks));
    const auto out = run_tasks(cfg, Command::Verify, 1);
    CHECK(out.curves.contains("passive_cir_analytical"));
    CHECK(out.curves.contains("passive_ed_simulated"));
    CHECK(out.curves.contains("absorbing_cir_transformed_simulated"));
    CHECK(out.curves.contains("passive_cir_asymptotic_transformed_analytical"));
    CHECK(out.curves.at("absorption_rate_simulated").size() == 61);
    REQUIRE(out.report.checks.size() == 3);
    CHECK(out.report.checks[0].passed);
    CHECK(out.report.checks[1].passed);
    CHECK_FALSE(out.report.pairs.empty());
    CHECK(format_json(out.report).find("\"checks\"") != std::string::npos);
    CHECK(format_text(out.report).find("identity") != std::string::npos);

    const auto analytical_only = run_tasks(cfg, Command::Analytical, 1);
    CHECK_FALSE(analytical_only.curves.contains("passive_cir_simulated"));
    // Checks on curves the subcommand does not produce are skipped.
    CHECK(analytical_only.report.checks.empty());
}

TEST_CASE("run_experiment exit codes and files")
{
    const auto dir = scratch("experiment");
    const auto good = dir / "good.json";
    {
        std::ofstream(good) << small_config(
            "", R"([{"name": "ok", "curve": "passive_cir_transformed_analytical",
                     "reference": "passive_cir_analytical", "max_rel_error": 1e-12}])");
    }
    std::ostringstream log, err;
    Overrides ov;
    ov.output_dir = dir / "out";
    ov.threads = 1;
    CHECK(run_experiment(good, Command::Verify, ov, log, err) == kExitOk);
    CHECK(fs::exists(dir / "out" / "tiny_report.json"));
    CHECK(fs::exists(dir / "out" / "tiny_report.txt"));
    CHECK(fs::exists(dir / "out" / "tiny_passive_cir_simulated.csv"));

    const auto failing = dir / "failing.json";
    {
        std::ofstream(failing) << small_config(
            "", R"([{"name": "impossible", "curve": "passive_cir_simulated",
                     "reference": "passive_cir_analytical", "max_rel_error": 1e-9}])");
    }
    CHECK(run_experiment(failing, Command::Verify, ov, log, err) == kExitVerificationFailed);

    const auto broken = dir / "broken.json";
    std::ofstream(broken) << "{ \"name\": ";
    CHECK(run_experiment(broken, Command::Verify, ov, log, err) == kExitConfigError);
    CHECK(run_experiment(dir / "absent.json", Command::Verify, ov, log, err) == kExitConfigError);

    ov.realizations = 0;
    CHECK(run_experiment(good, Command::Verify, ov, log, err) == kExitConfigError);
}

}

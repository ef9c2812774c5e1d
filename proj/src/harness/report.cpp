#include "mcrx/harness/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mcrx::harness {

TimeSeries normalize_series(const TimeSeries& series, double reference_max)
{
    if (!(reference_max > 0.0) || !std::isfinite(reference_max))
        throw std::invalid_argument("normalize_series: reference maximum must be > 0");
    std::vector<double> values(series.values().begin(), series.values().end());
    for (double& v : values) v /= reference_max;
    return TimeSeries({series.times().begin(), series.times().end()}, std::move(values), series.kind(),
                      Units::Dimensionless);
}

CurveComparison compare_curves(const TimeSeries& a, const TimeSeries& b, double t_min)
{
    if (!std::equal(a.times().begin(), a.times().end(), b.times().begin(), b.times().end()))
        throw std::invalid_argument("compare_curves: time grids differ");
    std::vector<double> errors;
    CurveComparison out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a.times()[i];
        if (t < t_min) continue;
        const double va = a.values()[i];
        const double vb = b.values()[i];
        double rel = 0.0;
        if (vb != 0.0) rel = std::abs(va - vb) / std::abs(vb);
        else if (va != 0.0) rel = std::numeric_limits<double>::infinity();
        if (errors.empty() || rel > out.max_rel_error) {
            out.max_rel_error = rel;
            out.t_at_max = t;
        }
        errors.push_back(rel);
    }
    if (errors.empty()) throw std::invalid_argument("compare_curves: no points at or after t_min");
    out.points = errors.size();
    const std::size_t mid = errors.size() / 2;
    std::nth_element(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(mid), errors.end());
    if (errors.size() % 2 == 1) {
        out.median_rel_error = errors[mid];
    } else {
        const double upper = errors[mid];
        const double lower = *std::max_element(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(mid));
        out.median_rel_error = 0.5 * (lower + upper);
    }
    return out;
}

bool VerificationReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string format_text(const VerificationReport& r)
{
    std::ostringstream os;
    os << "system: " << r.system << "\n"
       << "seed: " << r.seed << "\n"
       << "realizations: " << r.realizations << "\n"
       << "total time T: " << num(r.total_time) << " s" << (r.total_time_derived ? " (derived default)" : "")
       << "\n\n";

    os << "maximum values used for normalization\n";
    for (const auto& m : r.maxima)
        os << "  " << m.curve << ": " << num(m.value) << ' ' << m.units << " at t = " << num(m.time) << " s\n";

    os << "\ncurve comparisons (relative error)\n";
    for (const auto& p : r.pairs)
        os << "  " << p.curve << " vs " << p.reference << " [t >= " << num(p.t_min) << " s, " << p.errors.points
           << " pts]: max " << num(p.errors.max_rel_error) << " at t = " << num(p.errors.t_at_max) << " s, median "
           << num(p.errors.median_rel_error) << "\n";

    os << "\nchecks\n";
    for (const auto& c : r.checks)
        os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
    if (r.checks.empty()) os << "  (none declared)\n";

    os << "\nruntimes\n";
    for (const auto& t : r.runtimes) os << "  " << t.task << ": " << num(t.seconds) << " s\n";

    os << "\nfiles\n";
    for (const auto& f : r.files) os << "  " << f << "\n";
    return os.str();
}

std::string format_json(const VerificationReport& r)
{
    using nlohmann::json;
    json j;
    j["system"] = r.system;
    j["seed"] = r.seed;
    j["realizations"] = r.realizations;
    j["total_time"] = r.total_time;
    j["total_time_derived"] = r.total_time_derived;
    j["maxima"] = json::array();
    for (const auto& m : r.maxima)
        j["maxima"].push_back({{"curve", m.curve}, {"value", m.value}, {"units", m.units}, {"time", m.time}});
    j["pairs"] = json::array();
    for (const auto& p : r.pairs)
        j["pairs"].push_back({{"curve", p.curve},
                              {"reference", p.reference},
                              {"t_min", p.t_min},
                              {"points", p.errors.points},
                              {"max_rel_error", p.errors.max_rel_error},
                              {"t_at_max", p.errors.t_at_max},
                              {"median_rel_error", p.errors.median_rel_error}});
    j["checks"] = json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["runtimes"] = json::array();
    for (const auto& t : r.runtimes) j["runtimes"].push_back({{"task", t.task}, {"seconds", t.seconds}});
    j["files"] = r.files;
    j["passed"] = r.all_passed();
    return j.dump(2) + "\n";
}

} // namespace mcrx::harness

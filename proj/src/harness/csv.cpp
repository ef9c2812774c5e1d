#include "mcrx/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mcrx::harness {

namespace {

constexpr std::string_view kHeader = "time_s,value,units,kind,provenance";

void append_number(std::string& out, double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
    out.append(buf, res.ptr);
}

double parse_number(std::string_view field, std::size_t line)
{
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw std::invalid_argument("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string kind_label(const SignalKind& kind)
{
    return std::string(to_string(kind.family)) + "_" + std::string(to_string(kind.dimension));
}

} // namespace

std::string format_csv(const TimeSeries& series)
{
    std::string out(kHeader);
    out += '\n';
    const std::string tail = "," + std::string(to_string(series.units())) + "," + kind_label(series.kind()) + ","
        + std::string(to_string(series.kind().provenance)) + "\n";
    const auto t = series.times();
    const auto v = series.values();
    for (std::size_t i = 0; i < series.size(); ++i) {
        append_number(out, t[i]);
        out += ',';
        append_number(out, v[i]);
        out += tail;
    }
    return out;
}

TimeSeries parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw std::invalid_argument("csv: missing header '" + std::string(kHeader) + "'");

    std::vector<double> times, values;
    std::optional<SignalKind> kind;
    Units units = Units::Mol;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 5)
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected 5 fields");
        times.push_back(parse_number(fields[0], lineno));
        values.push_back(parse_number(fields[1], lineno));
        if (!kind) {
            const std::string_view label = fields[3];
            const auto us = label.rfind('_');
            if (us == std::string_view::npos)
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad kind");
            const auto dim = label.substr(us + 1);
            if (dim != "1d" && dim != "3d")
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad dimension");
            kind = SignalKind{parse_family(label.substr(0, us)), dim == "1d" ? Dimension::One : Dimension::Three,
                              parse_provenance(fields[4])};
            units = parse_units(fields[2]);
        }
    }
    if (!kind) throw std::invalid_argument("csv: no data rows");
    return TimeSeries(std::move(times), std::move(values), *kind, units);
}

void write_csv(const std::filesystem::path& path, const TimeSeries& series)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << format_csv(series);
}

TimeSeries read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

} // namespace mcrx::harness

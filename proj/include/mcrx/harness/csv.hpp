#pragma once

#include "mcrx/signal.hpp"

#include <filesystem>
#include <string>

namespace mcrx::harness {

// One curve per file:
//   time_s,value,units,kind,provenance
//   4.0000000000000003e-05,1.2e-10,mol,passive_cir_3d,analytical
// Numbers carry 17 significant digits, so reading a file back reproduces the
// series bit for bit.

std::string format_csv(const TimeSeries& series);
TimeSeries parse_csv(const std::string& text);

void write_csv(const std::filesystem::path& path, const TimeSeries& series);
TimeSeries read_csv(const std::filesystem::path& path);

} // namespace mcrx::harness

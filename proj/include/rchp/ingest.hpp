#pragma once

#include <string>
#include <vector>

#include "rchp/series.hpp"

namespace rchp {

enum class SeriesUnits { UsdPerKwh, UsdPerMwh };
enum class GapPolicy { Error, Drop, FillPrevious };

SeriesUnits units_from_name(const std::string& name);
GapPolicy gap_policy_from_name(const std::string& name);

// Loads a combined CSV (`timestamp, lmp, capacity_factor`). Timestamps are
// ISO-8601 with explicit offset, strictly increasing, spaced interval_hours
// apart (gaps handled per policy). LMP values are converted to $/kWh; eta is
// clamped into [0,1] within a 1e-9 band (with a warning) and rejected beyond.
SignalSeries load_series(const std::string& path, SeriesUnits units,
                         double interval_hours, GapPolicy policy,
                         std::vector<std::string>* warnings = nullptr);

// Same, from the separate `timestamp, lmp` and `timestamp, capacity_factor`
// schemas, joined on timestamp.
SignalSeries load_series_separate(const std::string& lmp_path, const std::string& cf_path,
                                  SeriesUnits units, double interval_hours, GapPolicy policy,
                                  std::vector<std::string>* warnings = nullptr);

// Writes the combined schema back out, canonical formatting ($/kWh, %.17g
// floats, offset-preserving timestamps); load(save(s)) reproduces s bit for bit.
void save_series(const SignalSeries& series, const std::string& path);

// Timestamp helpers shared with reports.
std::string format_timestamp(const TimePoint& tp);
TimePoint parse_timestamp(const std::string& text); // throws input_error

} // namespace rchp

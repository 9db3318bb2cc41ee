#pragma once

#include <filesystem>
#include <ostream>

#include "wattribute/aggregation/intervals.hpp"

namespace wattribute::aggregation {

/// t,t_start_ns,t_end_ns,energy_j,pid,start_id,name,<features...>; one line per row.
void write_interval_rows_csv(const IntervalSet& set, std::ostream& out);

/// t,t_start_ns,t_end_ns,energy_j,power_samples,rows,flagged_rows; one line per interval.
void write_interval_summary_csv(const IntervalSet& set, std::ostream& out);

void write_interval_csvs(const IntervalSet& set, const std::filesystem::path& rows_path,
                         const std::filesystem::path& summary_path);

}  // namespace wattribute::aggregation

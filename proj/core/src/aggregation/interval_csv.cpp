#include "wattribute/aggregation/interval_csv.hpp"

#include <fstream>

#include "wattribute/error.hpp"
#include "wattribute/util/text.hpp"

namespace wattribute::aggregation {

using util::csv_field;
using util::format_double;

void write_interval_rows_csv(const IntervalSet& set, std::ostream& out) {
    out << "t,t_start_ns,t_end_ns,energy_j,pid,start_id,name";
    for (const auto& f : set.feature_names) out << ',' << csv_field(f);
    out << '\n';
    for (const auto& rec : set.intervals) {
        for (const auto& row : rec.rows) {
            out << rec.index << ',' << rec.t_start.count() << ',' << rec.t_end.count() << ','
                << format_double(rec.energy_j) << ',' << row.key.pid << ',' << row.key.start_id << ','
                << csv_field(row.name);
            for (double v : row.features) out << ',' << format_double(v);
            out << '\n';
        }
    }
}

void write_interval_summary_csv(const IntervalSet& set, std::ostream& out) {
    out << "t,t_start_ns,t_end_ns,energy_j,power_samples,rows,flagged_rows\n";
    for (const auto& rec : set.intervals) {
        std::size_t flagged = 0;
        for (const auto& row : rec.rows) flagged += row.flagged ? 1 : 0;
        out << rec.index << ',' << rec.t_start.count() << ',' << rec.t_end.count() << ','
            << format_double(rec.energy_j) << ',' << rec.power_samples << ',' << rec.rows.size() << ',' << flagged
            << '\n';
    }
}

void write_interval_csvs(const IntervalSet& set, const std::filesystem::path& rows_path,
                         const std::filesystem::path& summary_path) {
    std::ofstream rows(rows_path), summary(summary_path);
    if (!rows || !summary) throw WriteError("cannot write interval dumps", 0);
    write_interval_rows_csv(set, rows);
    write_interval_summary_csv(set, summary);
    if (!rows || !summary) throw WriteError("failed writing interval dumps", 0);
}

}  // namespace wattribute::aggregation

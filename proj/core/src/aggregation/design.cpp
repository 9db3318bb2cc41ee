#include "wattribute/aggregation/design.hpp"

#include "wattribute/error.hpp"

namespace wattribute::aggregation {

DesignMatrix assemble_design(std::span<const IntervalRecord> intervals, const std::vector<std::string>& feature_names,
                             const Standardizer& standardizer) {
    if (!standardizer.fitted()) throw ValidationError("standardizer is not fitted");
    if (feature_names != standardizer.input_names())
        throw SchemaMismatchError(standardizer.input_names(), feature_names);

    const auto T = static_cast<Eigen::Index>(intervals.size());
    const auto p = static_cast<Eigen::Index>(standardizer.dimension());
    std::size_t total_rows = 0;
    for (const auto& rec : intervals) total_rows += rec.rows.size();

    DesignMatrix d;
    d.feature_names = standardizer.feature_names();
    d.Z = Eigen::MatrixXd::Zero(T, p);
    d.y.resize(T);
    d.rows.resize(static_cast<Eigen::Index>(total_rows), p);
    d.row_refs.reserve(total_rows);
    d.row_offsets.reserve(intervals.size() + 1);
    d.row_offsets.push_back(0);

    Eigen::Index r = 0;
    for (Eigen::Index t = 0; t < T; ++t) {
        const auto& rec = intervals[static_cast<std::size_t>(t)];
        d.y(t) = rec.energy_j;
        d.interval_index.push_back(rec.index);
        d.t_start.push_back(rec.t_start);
        for (const auto& row : rec.rows) {
            const std::vector<double> x = standardizer.transform(row.features);
            for (Eigen::Index j = 0; j < p; ++j) d.rows(r, j) = x[static_cast<std::size_t>(j)];
            d.Z.row(t) += d.rows.row(r);
            d.row_refs.push_back({static_cast<std::size_t>(t), row.key, row.name});
            ++r;
        }
        d.row_offsets.push_back(static_cast<std::size_t>(r));
    }
    return d;
}

}  // namespace wattribute::aggregation

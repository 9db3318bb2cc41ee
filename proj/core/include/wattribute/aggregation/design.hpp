#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wattribute/aggregation/intervals.hpp"
#include "wattribute/aggregation/standardizer.hpp"

namespace wattribute::aggregation {

struct RowRef {
    std::size_t interval = 0;  // position in the design, not the grid index
    telemetry::ProcessKey key;
    std::string name;
};

/// Aggregated regression problem: row t of Z is the sum of the standardized
/// process rows assigned to interval t.
struct DesignMatrix {
    std::vector<std::string> feature_names;  // columns of Z
    Eigen::MatrixXd Z;                       // T x p
    Eigen::VectorXd y;                       // interval energies, joules
    Eigen::MatrixXd rows;                    // R x p standardized process rows
    std::vector<RowRef> row_refs;            // R entries, grouped by interval
    std::vector<std::size_t> row_offsets;    // T + 1; rows of t are [offsets[t], offsets[t+1])
    std::vector<std::int64_t> interval_index;
    std::vector<telemetry::Timestamp> t_start;

    std::size_t intervals() const noexcept { return static_cast<std::size_t>(Z.rows()); }
    std::size_t features() const noexcept { return static_cast<std::size_t>(Z.cols()); }
};

/// Throws ValidationError if the standardizer is unfitted and SchemaMismatchError
/// if `feature_names` differs from the standardizer's input layout.
DesignMatrix assemble_design(std::span<const IntervalRecord> intervals, const std::vector<std::string>& feature_names,
                             const Standardizer& standardizer);

}  // namespace wattribute::aggregation

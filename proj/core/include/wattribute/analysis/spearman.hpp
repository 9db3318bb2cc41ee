#pragma once

#include <optional>
#include <span>
#include <vector>

namespace wattribute::analysis {

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation, or nullopt when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rho as the Pearson correlation of average ranks. nullopt signals a
/// constant input (rho undefined). Throws ValidationError on length < 2 or mismatch.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

}  // namespace wattribute::analysis

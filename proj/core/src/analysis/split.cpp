#include "wattribute/analysis/split.hpp"

#include <algorithm>
#include <cmath>

#include "wattribute/error.hpp"

namespace wattribute::analysis {

void SplitSpec::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ValidationError("train_fraction must lie in (0, 1)");
}

std::size_t SplitSpec::boundary(std::size_t T) const {
    const auto raw = static_cast<std::size_t>(std::floor(static_cast<double>(T) * train_fraction));
    return std::clamp<std::size_t>(raw, 1, T - 1);
}

TimeSplit split_time_aware(std::span<const aggregation::IntervalRecord> intervals, const SplitSpec& spec) {
    spec.validate();
    if (intervals.size() < 2) throw ValidationError("time-aware split needs at least two intervals");
    const std::size_t b = spec.boundary(intervals.size());
    return {intervals.first(b), intervals.subspan(b)};
}

}  // namespace wattribute::analysis

#pragma once

#include <cstddef>
#include <span>

#include "wattribute/aggregation/intervals.hpp"

namespace wattribute::analysis {

/// Contiguous prefix/suffix split; later intervals form the test set.
struct SplitSpec {
    double train_fraction = 0.8;

    /// floor(T * fraction), clamped to [1, T - 1] so both sides are non-empty.
    std::size_t boundary(std::size_t T) const;
    void validate() const;
};

struct TimeSplit {
    std::span<const aggregation::IntervalRecord> train;
    std::span<const aggregation::IntervalRecord> test;
};

/// Throws ValidationError when there are fewer than two intervals.
TimeSplit split_time_aware(std::span<const aggregation::IntervalRecord> intervals, const SplitSpec& spec = {});

}  // namespace wattribute::analysis

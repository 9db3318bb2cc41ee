#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wattribute/aggregation/intervals.hpp"

namespace wattribute::aggregation {

/// `scale` divides by the training standard deviation only; `zscore` also
/// subtracts the training mean.
enum class Centering { scale, zscore };

std::string_view to_string(Centering c);
Centering centering_from_string(std::string_view text);

/// Per-feature training statistics (population convention). Features whose
/// training values are all identical are dropped and listed in dropped().
class Standardizer {
public:
    Standardizer() = default;

    /// Statistics over every ProcessRow of `train`. Throws FitError when there
    /// are no rows or no feature varies.
    static Standardizer fit(std::span<const IntervalRecord> train, std::vector<std::string> feature_names,
                            Centering centering = Centering::scale);

    /// Rebuilds a fitted standardizer from stored statistics (model files).
    static Standardizer from_stats(std::vector<std::string> input_names, std::vector<std::string> kept_names,
                                   std::vector<double> mean, std::vector<double> stddev, Centering centering);

    bool fitted() const noexcept { return fitted_; }
    Centering centering() const noexcept { return centering_; }

    /// Features the standardizer was fitted against (row layout it accepts).
    const std::vector<std::string>& input_names() const noexcept { return input_names_; }
    /// Output columns, a subsequence of input_names().
    const std::vector<std::string>& feature_names() const noexcept { return kept_names_; }
    const std::vector<std::string>& dropped() const noexcept { return dropped_; }
    const std::vector<double>& mean() const noexcept { return mean_; }
    const std::vector<double>& stddev() const noexcept { return stddev_; }
    std::size_t dimension() const noexcept { return kept_names_.size(); }

    /// Maps a raw row (input layout) to the standardized output layout.
    std::vector<double> transform(std::span<const double> raw) const;

    bool operator==(const Standardizer&) const = default;

private:
    bool fitted_ = false;
    Centering centering_ = Centering::scale;
    std::vector<std::string> input_names_;
    std::vector<std::string> kept_names_;
    std::vector<std::string> dropped_;
    std::vector<std::size_t> kept_index_;
    std::vector<double> mean_;
    std::vector<double> stddev_;
};

}  // namespace wattribute::aggregation

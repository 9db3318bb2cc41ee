#include "wattribute/aggregation/standardizer.hpp"

#include <algorithm>
#include <cmath>

#include "wattribute/error.hpp"

namespace wattribute::aggregation {

std::string_view to_string(Centering c) { return c == Centering::zscore ? "zscore" : "scale"; }

Centering centering_from_string(std::string_view text) {
    if (text == "scale") return Centering::scale;
    if (text == "zscore") return Centering::zscore;
    throw ValidationError("unknown centering '" + std::string(text) + "' (expected scale or zscore)");
}

Standardizer Standardizer::fit(std::span<const IntervalRecord> train, std::vector<std::string> feature_names,
                               Centering centering) {
    const std::size_t p = feature_names.size();
    std::vector<double> sum(p, 0.0);
    std::vector<double> lo(p, INFINITY), hi(p, -INFINITY);
    std::size_t n = 0;
    for (const auto& rec : train) {
        for (const auto& row : rec.rows) {
            if (row.features.size() != p) throw ValidationError("process row width does not match feature list");
            for (std::size_t j = 0; j < p; ++j) {
                sum[j] += row.features[j];
                lo[j] = std::min(lo[j], row.features[j]);
                hi[j] = std::max(hi[j], row.features[j]);
            }
            ++n;
        }
    }
    if (n == 0) throw FitError("no process rows in the training intervals");

    std::vector<double> mean(p), m2(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) mean[j] = sum[j] / static_cast<double>(n);
    for (const auto& rec : train) {
        for (const auto& row : rec.rows) {
            for (std::size_t j = 0; j < p; ++j) {
                const double d = row.features[j] - mean[j];
                m2[j] += d * d;
            }
        }
    }

    Standardizer st;
    st.fitted_ = true;
    st.centering_ = centering;
    for (std::size_t j = 0; j < p; ++j) {
        if (!(hi[j] > lo[j])) {
            st.dropped_.push_back(feature_names[j]);
            continue;
        }
        st.kept_index_.push_back(j);
        st.kept_names_.push_back(feature_names[j]);
        st.mean_.push_back(mean[j]);
        st.stddev_.push_back(std::sqrt(m2[j] / static_cast<double>(n)));
    }
    st.input_names_ = std::move(feature_names);
    if (st.kept_names_.empty()) throw FitError("no usable features: every feature is constant over the training rows");
    return st;
}

Standardizer Standardizer::from_stats(std::vector<std::string> input_names, std::vector<std::string> kept_names,
                                      std::vector<double> mean, std::vector<double> stddev, Centering centering) {
    if (kept_names.empty() || mean.size() != kept_names.size() || stddev.size() != kept_names.size())
        throw ValidationError("standardizer statistics are inconsistent");
    Standardizer st;
    st.fitted_ = true;
    st.centering_ = centering;
    for (const auto& name : kept_names) {
        auto it = std::find(input_names.begin(), input_names.end(), name);
        if (it == input_names.end()) throw ValidationError("standardized feature '" + name + "' not in input layout");
        st.kept_index_.push_back(static_cast<std::size_t>(it - input_names.begin()));
    }
    for (const auto& name : input_names)
        if (std::find(kept_names.begin(), kept_names.end(), name) == kept_names.end()) st.dropped_.push_back(name);
    for (double s : stddev)
        if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("standard deviations must be positive");
    st.input_names_ = std::move(input_names);
    st.kept_names_ = std::move(kept_names);
    st.mean_ = std::move(mean);
    st.stddev_ = std::move(stddev);
    return st;
}

std::vector<double> Standardizer::transform(std::span<const double> raw) const {
    if (!fitted_) throw ValidationError("standardizer is not fitted");
    if (raw.size() != input_names_.size()) throw ValidationError("row width does not match the standardizer");
    std::vector<double> out(kept_index_.size());
    for (std::size_t j = 0; j < kept_index_.size(); ++j) {
        const double x = raw[kept_index_[j]];
        out[j] = (centering_ == Centering::zscore ? x - mean_[j] : x) / stddev_[j];
    }
    return out;
}

}  // namespace wattribute::aggregation

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "wattribute/estimator/model.hpp"

namespace wattribute::estimator {

inline constexpr std::string_view kModelFormat = "wattribute-model";
inline constexpr int kModelVersion = 1;

std::string model_to_json(const ModelParams& params);
ModelParams model_from_json(std::string_view text);

void save_model(const ModelParams& params, const std::filesystem::path& path);
/// Throws ParseError on malformed files.
ModelParams load_model(const std::filesystem::path& path);

}  // namespace wattribute::estimator

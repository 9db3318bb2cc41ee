#include "wattribute/error.hpp"

#include <algorithm>
#include <sstream>

namespace wattribute {

namespace {

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ",";
        out += n;
    }
    return out;
}

}  // namespace

SchemaMismatchError::SchemaMismatchError(std::vector<std::string> expected, std::vector<std::string> actual)
    : ValidationError("feature schema mismatch: expected [" + join(expected) + "], got [" + join(actual) + "]"),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

std::string SchemaMismatchError::diff() const {
    std::ostringstream out;
    for (const auto& name : expected_) {
        if (std::find(actual_.begin(), actual_.end(), name) == actual_.end()) out << "- " << name << "\n";
    }
    for (const auto& name : actual_) {
        if (std::find(expected_.begin(), expected_.end(), name) == expected_.end()) out << "+ " << name << "\n";
    }
    if (out.tellp() == 0) out << "~ same features, different order\n";
    return out.str();
}

}  // namespace wattribute

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace wattribute::cli {

/// Header plus data rows of a small CSV file (RFC 4180 quoting).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position; throws ParseError when absent.
    std::size_t column(const std::string& name) const;
};

std::vector<std::string> split_csv_line(const std::string& line);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace wattribute::cli

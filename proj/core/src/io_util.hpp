#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ifra::detail {

std::string read_file(const std::filesystem::path& path);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

// Strict decimal parse of the whole field; nullopt-like failure via bool.
bool parse_double(std::string_view text, double& out);

std::string_view trim(std::string_view text);

// Splits one CSV record into fields. Supports double-quoted fields with ""
// escapes; the record must not contain embedded newlines.
std::vector<std::string> split_csv_record(std::string_view line);

// Quotes a field when it contains a comma, quote, or surrounding whitespace.
std::string csv_escape(std::string_view field);

}  // namespace ifra::detail

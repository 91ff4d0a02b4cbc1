#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "parafis/errors.hpp"

namespace parafis {

// Shortest representation that round-trips the exact double (std::to_chars),
// so that repeated runs produce byte-identical files.
std::string format_double(double value);

std::string format_int(std::int64_t value);

// Splits one line; keeps empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char delimiter);

// Whole-token double parse; `where` names the location in error messages.
double parse_double(std::string_view token, const std::string& where);

std::int64_t parse_int(std::string_view token, const std::string& where);

std::string_view trim(std::string_view token);

// Minimal CSV table with a header row, as written by the tools.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws ParseError when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace parafis

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fte {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row matches columns.size()
};

// One value, 12 significant digits, locale-independent.
std::string format_value(double v);

// UTF-8, comma separated, LF line endings, header row always present.
// An empty table produces a header-only file. Output is byte-deterministic
// for identical input.
void emit_csv(const Table& table, const std::filesystem::path& path);

// Strict parser for the emitted dialect. Malformed rows are reported with
// their 1-based line number.
Table parse_csv(const std::filesystem::path& path);

}  // namespace fte

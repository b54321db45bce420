#include "fte/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fte/errors.hpp"

namespace fte {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw IoError("emit_csv: row width does not match header");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_csv: cannot open " + path.string());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_value(row[c]);
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("emit_csv: write failed for " + path.string());
}

Table parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("parse_csv: cannot open " + path.string());

  Table table;
  std::string line;
  std::size_t line_no = 0;

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    out.push_back(cur);
    return out;
  };

  if (!std::getline(in, line)) throw IoError("parse_csv: empty file " + path.string());
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.columns = split(line);

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.columns.size()) {
      std::ostringstream os;
      os << "parse_csv: line " << line_no << " has " << cells.size()
         << " cells, expected " << table.columns.size() << " (" << path.string()
         << ")";
      throw IoError(os.str());
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      errno = 0;
      char* end = nullptr;
      row[c] = std::strtod(cells[c].c_str(), &end);
      if (end == cells[c].c_str() || *end != '\0' || errno == ERANGE) {
        std::ostringstream os;
        os << "parse_csv: line " << line_no << ", column " << (c + 1)
           << " is not a number: '" << cells[c] << "'";
        throw IoError(os.str());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace fte

#include "pvaudit/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace pvaudit {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, int line_number) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  size_t i = 0;
  bool cur_was_quoted = false;
  while (i < line.size()) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"' && trim(cur).empty() && !cur_was_quoted) {
      quoted = true;
      cur_was_quoted = true;
      cur.clear();
    } else if (ch == ',') {
      fields.push_back(cur_was_quoted ? cur : trim(cur));
      cur.clear();
      cur_was_quoted = false;
    } else {
      cur.push_back(ch);
    }
    ++i;
  }
  if (quoted)
    throw DataError("row " + std::to_string(line_number) + ": unterminated quoted field");
  fields.push_back(cur_was_quoted ? cur : trim(cur));
  return fields;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

int CsvTable::required_column(const std::string& name) const {
  const int idx = column(name);
  if (idx < 0) throw DataError("missing required column '" + name + "'");
  return idx;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 0 && line.empty()) continue;  // tolerate a BOM-free blank prologue
    if (line.empty()) {
      ++line_number;
      continue;  // skip blank lines between rows
    }
    auto fields = split_line(line, line_number);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size())
        throw DataError("row " + std::to_string(line_number) + ": expected " +
                        std::to_string(table.header.size()) + " fields, found " +
                        std::to_string(fields.size()));
      table.rows.push_back(std::move(fields));
    }
    ++line_number;
  }
  if (table.header.empty()) throw DataError("empty file: no header row");
  return table;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char ch : field) {
    if (ch == '"') out += "\"\"";
    else out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

double parse_double_field(const std::string& value, int row_number, const std::string& column) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw DataError("row " + std::to_string(row_number) + ", column '" + column +
                    "': malformed numeric value '" + value + "'");
  return out;
}

long long parse_int_field(const std::string& value, int row_number, const std::string& column) {
  const std::string v = trim(value);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw DataError("row " + std::to_string(row_number) + ", column '" + column +
                    "': malformed integer value '" + value + "'");
  return out;
}

}  // namespace pvaudit

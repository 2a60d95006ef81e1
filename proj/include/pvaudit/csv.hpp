// Minimal CSV support for the hand-built audit files: comma separation, a
// mandatory header row, double-quoted fields with doubled inner quotes.
// Columns are matched by header name so optional columns can be omitted and
// order does not matter. Embedded newlines inside fields are not supported.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pvaudit {

// Raised for malformed input files and failed row validation; the message
// names the offending row and column. CLI maps it to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Header index of a named column, or -1 when absent.
  int column(const std::string& name) const;
  // Same, but raises DataError naming the column when absent.
  int required_column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

// Numeric field parsing with row/column context in the error message.
// row_number is 1-based over data rows (the header is row 0).
double parse_double_field(const std::string& value, int row_number, const std::string& column);
long long parse_int_field(const std::string& value, int row_number, const std::string& column);

}  // namespace pvaudit

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stocksent::csv {

// One parsed record. `line` is the 1-based physical line it starts on.
struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// Comma-delimited, double-quote quoting (`""` escapes a quote), UTF-8,
// LF or CRLF line endings. Quoted fields may span lines. A blank line
// yields no record. Throws FormatError on an unterminated quote.
std::vector<Record> Parse(std::string_view text);

// Header plus data records, with column lookup by name.
class Table {
 public:
  // Throws FormatError if the text has no header line.
  static Table FromText(std::string_view text);
  static Table FromFile(const std::string& path);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Record>& rows() const { return rows_; }

  // Index of a required column; FormatError naming it when absent.
  std::size_t Column(std::string_view name) const;
  // Index or npos.
  std::size_t FindColumn(std::string_view name) const;

  // Field of `row`, FormatError with the line number if the row is short.
  const std::string& Field(const Record& row, std::size_t column) const;

 private:
  std::vector<std::string> header_;
  std::vector<Record> rows_;
};

std::string Quote(std::string_view field);
void WriteRow(std::ostream& out, const std::vector<std::string>& fields);

// Whole-file helpers. Throw Error on I/O failure.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace stocksent::csv

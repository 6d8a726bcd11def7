#include "stocksent/csv.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "stocksent/error.h"

namespace stocksent::csv {

std::vector<Record> Parse(std::string_view text) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // anything seen on this record yet
  std::size_t line = 1;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    if (field_started) {
      end_field();
      records.push_back(std::move(current));
    }
    current = Record{};
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!field_started) {
      current.line = line;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        quote_line = line;
        field_started = true;
        break;
      case ',':
        field_started = true;
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field.push_back(c);
        field_started = true;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    throw FormatError("unterminated quoted field starting on line " +
                      std::to_string(quote_line));
  }
  end_record();
  return records;
}

Table Table::FromText(std::string_view text) {
  // Tolerate a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  auto records = Parse(text);
  if (records.empty()) throw FormatError("missing header line");
  Table table;
  table.header_ = std::move(records.front().fields);
  records.erase(records.begin());
  table.rows_ = std::move(records);
  return table;
}

Table Table::FromFile(const std::string& path) {
  try {
    return FromText(ReadFile(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::size_t Table::FindColumn(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::string::npos;
}

std::size_t Table::Column(std::string_view name) const {
  auto index = FindColumn(name);
  if (index == std::string::npos) {
    throw FormatError("missing column '" + std::string(name) + "'");
  }
  return index;
}

const std::string& Table::Field(const Record& row, std::size_t column) const {
  if (column >= row.fields.size()) {
    throw FormatError("line " + std::to_string(row.line) + ": expected " +
                      std::to_string(header_.size()) + " fields, found " +
                      std::to_string(row.fields.size()));
  }
  return row.fields[column];
}

std::string Quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void WriteRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << Quote(fields[i]);
  }
  out << '\n';
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace stocksent::csv

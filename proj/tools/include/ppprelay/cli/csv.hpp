#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ppprelay::cli {

/// %.17g, enough for an exact round trip of any double.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

/// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote or
/// line break.
void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

}  // namespace ppprelay::cli

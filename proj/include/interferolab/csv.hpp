#pragma once

#include <istream>
#include <string>
#include <vector>

namespace interferolab {

using CsvRow = std::vector<std::string>;

/// RFC 4180 reader: comma separated, double-quoted fields may contain commas,
/// quotes ("") and newlines. Accepts LF or CRLF line endings.
std::vector<CsvRow> read_csv(std::istream& in);

/// Quotes a field if it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// Decimal float with 17 significant digits.
std::string format_double17(double x);

}  // namespace interferolab

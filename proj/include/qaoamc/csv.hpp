#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qaoamc::csv {

/// Reals print as %.17g (round-trip exact); NaN prints as an empty field.
std::string format(double value);
std::string format(const std::optional<double>& value);

/// Quotes a field only if it contains a comma, quote or newline.
std::string escape(const std::string& field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws naming the expected column if absent.
  std::size_t column(const std::string& name) const;
};

/// Parses RFC-4180-style CSV; lines starting with '#' are skipped.
Table read(std::istream& in);

double parse_double(const std::string& field);  ///< empty -> NaN
std::optional<double> parse_optional(const std::string& field);

}  // namespace qaoamc::csv

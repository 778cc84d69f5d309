// Minimal CSV emission and parsing with exact double round-trips.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace spares::csv {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

/// Joins fields with commas and terminates the row with '\n'.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Splits one line on commas (no quoting); trailing '\r' is dropped.
std::vector<std::string> split_line(std::string_view line);

/// Parses a full-string double; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws std::out_of_range if missing.
    std::size_t column(std::string_view name) const;
};

/// Reads a header line followed by data rows.
Table read_table(std::istream& in);

}  // namespace spares::csv

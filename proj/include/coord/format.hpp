#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coord {

/// printf-style "%.<digits>g" rendering. Used for every number that ends up
/// in an export file so outputs are reproducible byte for byte.
std::string format_general(double value, int significant_digits);

/// printf-style "%.<decimals>f".
std::string format_fixed(double value, int decimals);

/// Shortest representation that round-trips through strtod (17 digits max).
std::string format_exact(double value);

/// JSON string literal, including the surrounding quotes.
std::string json_quote(std::string_view text);

/// Quote a CSV cell only when it contains a delimiter, quote or newline.
std::string csv_cell(std::string_view text);

/// Splits one CSV row, honouring double-quoted cells.
std::vector<std::string> split_csv(std::string_view line);

}  // namespace coord

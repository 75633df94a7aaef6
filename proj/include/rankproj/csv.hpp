#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rankproj::csv {

/// Splits CSV text into rows of fields. Handles double-quoted fields with
/// "" escapes, CRLF line endings and a trailing newline. Blank lines are
/// skipped; `line_numbers` receives the 1-based source line of each row.
std::vector<std::vector<std::string>> parse(std::string_view text, char delimiter,
                                            std::vector<std::size_t>* line_numbers = nullptr);

/// Quotes a field only when it contains the delimiter, a quote or a newline.
std::string escape(std::string_view field, char delimiter = ',');

/// Shortest decimal representation that round-trips to the same double.
std::string format_number(double value);

std::string trim(std::string_view s);

}  // namespace rankproj::csv

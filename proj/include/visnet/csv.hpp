#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace visnet::csv {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::optional<double> parse_double(std::string_view text);

// Splits one CSV record on commas; trims surrounding whitespace and one pair
// of double quotes per field. No embedded-comma escaping.
std::vector<std::string_view> split_fields(std::string_view line);

// `# generated: <UTC time>` comment; the one non-reproducible output line,
// omitted when files must be byte-stable.
std::string timestamp_line();

}  // namespace visnet::csv

#pragma once

#include <string>
#include <string_view>

namespace leo {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Quotes a field when it contains a separator, quote or newline.
std::string csv_field(std::string_view text);

}  // namespace leo

#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cellcast {

/// Formats a real with 10 significant digits (printf "%.10g").
std::string format_real(double value);

/// Writes one comma-delimited row terminated by '\n'.
void write_row(std::ostream& os, std::initializer_list<std::string_view> fields);

} // namespace cellcast

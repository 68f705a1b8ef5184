#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace slprime::csv {

/// Shortest round-trippable decimal (%.17g, '.' separator).
std::string num(double x);
std::string num(long long x);

/// Writes one comma-separated, LF-terminated row, quoting fields that need it.
void row(std::ostream& os, std::initializer_list<std::string> fields);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace slprime::csv

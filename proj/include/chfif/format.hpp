#pragma once

#include <string>

namespace chfif {

/// Locale-independent decimal rendering with `significant` significant digits.
/// Infinities render as "inf"/"-inf", NaN as "nan".
std::string format_number(double value, int significant);

/// Shortest representation that round-trips.
std::string format_shortest(double value);

}  // namespace chfif

#include "chfif/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace chfif {

namespace {

std::string non_finite(double value) {
  if (std::isnan(value)) return "nan";
  return value < 0 ? "-inf" : "inf";
}

}  // namespace

std::string format_number(double value, int significant) {
  if (!std::isfinite(value)) return non_finite(value);
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, significant);
  return std::string(buf.data(), end);
}

std::string format_shortest(double value) {
  if (!std::isfinite(value)) return non_finite(value);
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

}  // namespace chfif

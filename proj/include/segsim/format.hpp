#pragma once

#include <array>
#include <charconv>
#include <string>

namespace segsim {

// 9 significant digits, independent of the global locale.
inline std::string format_float(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

}  // namespace segsim

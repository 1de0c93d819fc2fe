#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "dly/errors.hpp"

namespace dly {

// Exact time coordinate. cpp_rational keeps lowest terms and a positive
// denominator, which is exactly the invariant we need.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

inline std::string to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Accepts integer literals and p/q with an optional leading minus.
// Decimals are rejected: they would silently round.
inline Rat parse_rat(std::string_view text) {
  auto bad = [&] { throw parse_error("not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  std::size_t i = 0;
  if (text[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++digits;
  if (digits == 0) bad();
  if (i < text.size()) {
    if (text[i] != '/') bad();
    ++i;
    digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++digits;
    if (digits == 0 || i != text.size()) bad();
  }
  try {
    Rat r{std::string(text)};
    return r;
  } catch (const std::exception&) {
    bad();
  }
  return Rat{};
}

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Smallest integer >= a/b for a positive rational; used for sweep counts.
inline BigInt ceil_div(const Rat& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

} // namespace dly

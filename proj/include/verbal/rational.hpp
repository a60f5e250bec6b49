#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "verbal/errors.hpp"

namespace verbal {

/// Exact rational arithmetic for the Hamming / rank / wreath metrics.
/// Denominators stay bounded by window sizes (<= |A||B| in practice),
/// so 64-bit components are plenty.
using Rat = boost::rational<long long>;

/// Renders "p/q" with q > 0, always including the denominator ("0/1").
inline std::string to_string(const Rat& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "p/q" or a bare integer "p".
inline Rat parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s), 1);
    const long long p = std::stoll(s.substr(0, slash));
    const long long q = std::stoll(s.substr(slash + 1));
    if (q == 0) throw ParseError("rational with zero denominator: " + s);
    return Rat(p, q);
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational: " + s);
  } catch (const std::out_of_range&) {
    throw ParseError("rational out of range: " + s);
  }
}

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace verbal

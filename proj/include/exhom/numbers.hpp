#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace exhom {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int igcd(Int a, Int b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int ilcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return iabs(a / igcd(a, b) * b);
}

// Quotient rounded to nearest integer, |a - q*b| <= |b|/2.
inline Int divround(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (iabs(r) * 2 > iabs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

// Always-on invariant checks; failures indicate a bug or invalid input,
// never a recoverable condition, so they throw.
struct check_error : std::logic_error {
  explicit check_error(const std::string& m) : std::logic_error(m) {}
};

inline void check(bool ok, const std::string& msg) {
  if (!ok) throw check_error(msg);
}

// Input validation failures (bad JSON fields, malformed presentations).
struct input_error : std::invalid_argument {
  explicit input_error(const std::string& m) : std::invalid_argument(m) {}
};

inline Rat rat_of(const Int& n, const Int& d = 1) {
  if (d == 0) throw input_error("rational with zero denominator");
  return Rat(n, d);
}

inline std::string rat_str(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return rat_of(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw input_error("cannot parse rational: " + s);
  }
}

}  // namespace exhom

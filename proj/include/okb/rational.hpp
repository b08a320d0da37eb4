// Exact arbitrary-precision integers and rationals used throughout the
// library, plus the handful of floor/ceil/parse helpers the polyhedral
// code needs. GMP-backed; values are always kept in lowest terms with a
// positive denominator.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace okb {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& r) { return numerator(r); }
inline Int den(const Rat& r) { return denominator(r); }

// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
  Int q = num(r) / den(r);
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

// Smallest integer >= r.
inline Int rat_ceil(const Rat& r) {
  Int q = num(r) / den(r);
  if (num(r) > 0 && q * den(r) != num(r)) ++q;
  return q;
}

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline int sign(const Rat& r) { return r.sign(); }

// Parses "p", "p/q" or a plain decimal integer string.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int p(s.substr(0, slash)), q(s.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(p, q);
}

inline std::string rat_str(const Rat& r) {
  if (is_integer(r)) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

// Least common multiple of the denominators of a list of rationals.
inline Int common_denominator(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& r : v) l = lcm_int(l, den(r));
  return l;
}

}  // namespace okb

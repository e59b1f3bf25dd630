#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <utility>

namespace pffb {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator.  All arithmetic in this library is exact; doubles appear only
// in rendering and as hints that are corrected by exact comparisons.
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an enumeration would exceed the configured size cap.
struct SizeCapError : Error {
  using Error::Error;
};

// Thrown when an algorithm's preconditions on the instance shape are not met.
struct UnsupportedInstanceError : Error {
  using Error::Error;
};

// boost::cpp_rational rejects negative denominators, so normalize the sign
// here instead of at every call site.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw Error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(std::move(num), std::move(den));
}

inline BigInt numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline int sign_of(const Rational& r) { return r.sign(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Accepts "num" or "num/den" where num and den are decimal integers and den
// is positive; den may carry a sign only because we normalize it away.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&] {
    return Error("rational: cannot parse \"" + text + "\"");
  };
  const auto slash = text.find('/');
  const auto parse_int = [&](const std::string& part) {
    if (part.empty()) throw bad();
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
    // The big-integer constructor rejects an explicit leading '+'.
    return BigInt(part[0] == '+' ? part.substr(1) : part);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw bad();
  return make_rational(std::move(num), std::move(den));
}

// Canonical form: lowest terms, "-1/3" style (sign on the numerator),
// integers keep an explicit "/1" so serialized values round-trip verbatim.
inline std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Human-oriented form: drops the "/1" on integers.
inline std::string to_display_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return to_fraction_string(r);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt floor_to_integer(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline BigInt ceil_to_integer(const Rational& r) {
  return -floor_to_integer(-r);
}

}  // namespace pffb

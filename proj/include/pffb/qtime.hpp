#pragma once

#include <cmath>
#include <compare>
#include <string>
#include <utility>

#include "pffb/rational.hpp"

namespace pffb {

// A point in time of the form a + b*sqrt(5), a and b rational.  This field
// is closed under the arithmetic the library needs and contains the golden
// ratio, so every quantity we compute (schedules, bounds, ratios) stays
// exact.  Comparisons never go through floating point.
struct QTime {
  Rational a;  // rational part
  Rational b;  // coefficient of sqrt(5)

  QTime() = default;
  QTime(int value) : a(value) {}  // NOLINT: implicit by design
  QTime(Rational rational_part) : a(std::move(rational_part)) {}
  QTime(Rational rational_part, Rational sqrt5_part)
      : a(std::move(rational_part)), b(std::move(sqrt5_part)) {}

  static QTime sqrt5() { return QTime(Rational(0), Rational(1)); }

  // (1 + sqrt(5)) / 2
  static QTime golden_ratio() {
    return QTime(make_rational(1, 2), make_rational(1, 2));
  }

  bool is_rational() const { return b == 0; }

  // Exact sign.  With b != 0 and a != 0 of opposite signs, the value's sign
  // is decided by comparing a^2 with 5 b^2; equality cannot occur since
  // sqrt(5) is irrational.
  int sign() const {
    const int sa = sign_of(a);
    const int sb = sign_of(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    return (a * a > 5 * b * b) ? sa : sb;
  }

  QTime& operator+=(const QTime& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  QTime& operator-=(const QTime& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }

  friend QTime operator+(QTime x, const QTime& y) { return x += y; }
  friend QTime operator-(QTime x, const QTime& y) { return x -= y; }
  friend QTime operator-(const QTime& x) { return QTime(-x.a, -x.b); }

  friend QTime operator*(const QTime& x, const QTime& y) {
    return QTime(x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a);
  }

  friend QTime operator/(const QTime& x, const QTime& y) {
    // 1/(a + b sqrt5) = (a - b sqrt5) / (a^2 - 5 b^2); the denominator
    // vanishes only for a = b = 0.
    const Rational norm = y.a * y.a - 5 * y.b * y.b;
    if (norm == 0) throw Error("qtime: division by zero");
    return QTime((x.a * y.a - 5 * x.b * y.b) / norm,
                 (x.b * y.a - x.a * y.b) / norm);
  }

  friend bool operator==(const QTime& x, const QTime& y) {
    return x.a == y.a && x.b == y.b;
  }

  friend std::strong_ordering operator<=>(const QTime& x, const QTime& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

inline QTime operator*(const Rational& r, const QTime& x) {
  return QTime(r) * x;
}
inline QTime operator*(const QTime& x, const Rational& r) {
  return x * QTime(r);
}
inline QTime operator/(const QTime& x, const Rational& r) {
  return x / QTime(r);
}

inline double to_double(const QTime& x) {
  return to_double(x.a) + to_double(x.b) * std::sqrt(5.0);
}

// Largest integer <= x.  A double estimate seeds the search; the exact
// comparisons below repair any rounding, and for sane magnitudes they run
// at most a couple of iterations.
inline BigInt floor_to_integer(const QTime& x) {
  if (x.b == 0) return floor_to_integer(x.a);
  BigInt m(static_cast<long long>(std::floor(to_double(x))));
  while (QTime(Rational(m + 1)) <= x) ++m;
  while (QTime(Rational(m)) > x) --m;
  return m;
}

inline BigInt ceil_to_integer(const QTime& x) { return -floor_to_integer(-x); }

inline QTime min(const QTime& x, const QTime& y) { return x < y ? x : y; }
inline QTime max(const QTime& x, const QTime& y) { return x < y ? y : x; }

// Canonical form "a" for rational values and "a + b*sqrt5" otherwise, with
// both coefficients in lowest terms.
inline std::string to_display_string(const QTime& x) {
  if (x.is_rational()) return to_display_string(x.a);
  std::string out = to_display_string(x.a);
  if (sign_of(x.b) < 0)
    out += " - " + to_display_string(-x.b) + "*sqrt5";
  else
    out += " + " + to_display_string(x.b) + "*sqrt5";
  return out;
}

// Some rational strictly inside (lo, hi], preferring small denominators.
// Used when a reaction time must be rational but the trigger time is not.
inline Rational rational_above(const QTime& lo, const QTime& hi) {
  if (!(lo < hi)) throw Error("qtime: empty interval");
  if (lo.is_rational() && hi.is_rational()) return hi.a;
  for (BigInt den(1);; den *= 2) {
    const BigInt num = floor_to_integer(lo * Rational(den)) + 1;
    const Rational candidate = make_rational(num, den);
    if (QTime(candidate) <= hi) return candidate;
  }
}

}  // namespace pffb

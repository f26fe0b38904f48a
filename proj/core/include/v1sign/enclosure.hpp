#pragma once

#include <string>

#include <gmpxx.h>

namespace v1sign {

/// Working precision for irrational endpoints, in bits. Endpoints produced by
/// elementary functions are dyadic rationals rounded outward at this precision.
struct Precision {
  unsigned long bits = 192;

  static Precision from_digits(unsigned digits);
  unsigned digits() const;
  friend bool operator==(Precision, Precision) = default;
};

/// A closed real interval [lo, hi] with exact rational endpoints.
///
/// Arithmetic is exact on the endpoints (so trivially outward); elementary
/// functions round outward at a given Precision. Whatever real number the
/// operands contain, the result contains the corresponding value.
class Enclosure {
 public:
  /// The degenerate interval [0, 0].
  Enclosure() = default;
  /// Throws InvalidInput if lo > hi.
  Enclosure(mpq_class lo, mpq_class hi);

  static Enclosure exact(const mpq_class& value) { return Enclosure(value, value); }
  static Enclosure exact(long value) { return exact(mpq_class(value)); }
  /// Smallest enclosure containing both.
  static Enclosure hull(const Enclosure& a, const Enclosure& b);

  const mpq_class& lo() const noexcept { return lo_; }
  const mpq_class& hi() const noexcept { return hi_; }
  mpq_class width() const { return hi_ - lo_; }
  mpq_class midpoint() const { return (lo_ + hi_) / 2; }
  double midpoint_double() const;

  bool contains(const mpq_class& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& inner) const { return lo_ <= inner.lo_ && inner.hi_ <= hi_; }
  bool intersects(const Enclosure& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
  bool positive() const { return sgn(lo_) > 0; }
  bool negative() const { return sgn(hi_) < 0; }
  /// +1 or -1 when the sign is certified, 0 when the interval touches zero.
  int certified_sign() const { return positive() ? 1 : (negative() ? -1 : 0); }

  /// Certified strict order between intervals.
  bool certainly_less(const Enclosure& other) const { return hi_ < other.lo_; }

  /// Outward rounding of both endpoints to dyadic rationals with `bits`
  /// significant bits; keeps denominators from growing along long chains.
  Enclosure rounded(Precision p) const;

  /// "[lo, hi]" with `digits` fractional decimal digits, rounded outward.
  std::string to_string(unsigned digits = 20) const;

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  /// Throws InvalidInput when the divisor contains zero.
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);

  friend bool operator==(const Enclosure&, const Enclosure&) = default;

 private:
  mpq_class lo_{0};
  mpq_class hi_{0};
};

Enclosure square(const Enclosure& x);
/// True when no integer lies in [lo, hi].
bool excludes_all_integers(const Enclosure& x);
Enclosure abs(const Enclosure& x);

/// Decimal rendering of a rational rounded toward -inf (down) or +inf (up).
std::string decimal_down(const mpq_class& x, unsigned digits);
std::string decimal_up(const mpq_class& x, unsigned digits);

/// Parses "p/q" or an integer "p" into an exact rational. Decimal notation is
/// rejected (InvalidInput) so certificates never depend on binary conversion.
mpq_class parse_rational(const std::string& text);

namespace interval {

/// [pi_down, pi_up] at precision p.
Enclosure pi(Precision p);
Enclosure sqrt(const Enclosure& x, Precision p);  // x.lo >= 0
Enclosure exp(const Enclosure& x, Precision p);
Enclosure log(const Enclosure& x, Precision p);  // x.lo > 0
Enclosure cos(const Enclosure& x, Precision p);
Enclosure sin(const Enclosure& x, Precision p);

}  // namespace interval

}  // namespace v1sign

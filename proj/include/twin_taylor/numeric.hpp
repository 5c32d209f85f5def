#pragma once

// Exact rationals and rational-endpoint enclosures.
//
// Arithmetic on Enclosure is exact: endpoints are GMP rationals, so there is
// no rounding mode to worry about. Long computations keep denominators in
// check with round_out(), which moves endpoints outward onto a dyadic grid.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "twin_taylor/error.hpp"

namespace twin_taylor {

using Integer = mpz_class;
using Rational = mpq_class;

/// "num/den", always with an explicit denominator ("3/1" for 3).
std::string to_fraction_string(const Rational& q);

/// Accepts "num/den", "num", or a plain decimal such as "-0.125".
Rational parse_rational(std::string_view text);

/// Decimal rendering rounded to nearest with `digits` fractional digits.
std::string to_decimal(const Rational& q, int digits);

/// Decimal rendering rounded down (up = false) or up (up = true), so a
/// printed [lo, hi] pair still encloses the exact endpoints.
std::string to_decimal_directed(const Rational& q, int digits, bool up);

double to_double(const Rational& q);

/// Largest multiple of 2^-bits that is <= q.
Rational floor_to_bits(const Rational& q, int bits);
/// Smallest multiple of 2^-bits that is >= q.
Rational ceil_to_bits(const Rational& q, int bits);

/// Number of bits in the denominator of q.
std::size_t denominator_bits(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

/// Target width exponent: enclosures aim for width <= 2^-budget.
class Precision {
 public:
  explicit Precision(int budget);

  int budget() const noexcept { return budget_; }
  /// Bits carried internally; the extra guard bits absorb rounding of
  /// intermediate results.
  int working_bits() const noexcept { return budget_ + 32; }
  Precision doubled() const { return Precision(2 * budget_); }
  Rational target_width() const;

  friend bool operator==(const Precision&, const Precision&) = default;

 private:
  int budget_;
};

class Enclosure {
 public:
  Enclosure() = default;
  explicit Enclosure(Rational point) : lo_(point), hi_(std::move(point)) {}
  Enclosure(Rational lo, Rational hi);

  static Enclosure point(const Rational& q) { return Enclosure(q); }

  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  /// max(|lo|, |hi|)
  Rational magnitude() const;

  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  bool contains(const Enclosure& e) const { return lo_ <= e.lo_ && e.hi_ <= hi_; }
  bool overlaps(const Enclosure& e) const { return lo_ <= e.hi_ && e.lo_ <= hi_; }
  bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
  bool positive() const { return sgn(lo_) > 0; }
  bool negative() const { return sgn(hi_) < 0; }

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
  Enclosure& operator+=(const Enclosure& b);
  Enclosure& operator-=(const Enclosure& b);
  Enclosure& operator*=(const Enclosure& b);
  Enclosure& operator/=(const Enclosure& b);

  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

Enclosure operator+(Enclosure a, const Enclosure& b);
Enclosure operator-(Enclosure a, const Enclosure& b);
Enclosure operator*(Enclosure a, const Enclosure& b);
/// Throws DivisionByIntervalContainingZero when 0 is in b.
Enclosure operator/(Enclosure a, const Enclosure& b);

inline Enclosure operator+(Enclosure a, const Rational& b) { return a += Enclosure(b); }
inline Enclosure operator-(Enclosure a, const Rational& b) { return a -= Enclosure(b); }
inline Enclosure operator*(Enclosure a, const Rational& b) { return a *= Enclosure(b); }
inline Enclosure operator/(Enclosure a, const Rational& b) { return a /= Enclosure(b); }
inline Enclosure operator+(const Rational& a, const Enclosure& b) { return Enclosure(a) + b; }
inline Enclosure operator-(const Rational& a, const Enclosure& b) { return Enclosure(a) - b; }
inline Enclosure operator*(const Rational& a, const Enclosure& b) { return Enclosure(a) * b; }
inline Enclosure operator/(const Rational& a, const Enclosure& b) { return Enclosure(a) / b; }

Enclosure abs(const Enclosure& a);
/// Tight integer power; even powers of sign-straddling intervals start at 0.
/// Negative exponents go through the reciprocal.
Enclosure pow(const Enclosure& a, int exponent);
Enclosure square(const Enclosure& a);

Enclosure hull(const Enclosure& a, const Enclosure& b);
std::optional<Enclosure> intersect(const Enclosure& a, const Enclosure& b);

/// Moves each endpoint outward onto the 2^-bits grid, but only when that
/// endpoint's denominator is wider than `bits`. Small exact values survive.
Enclosure round_out(const Enclosure& a, int bits);

/// Machin's formula pi = 16 atan(1/5) - 4 atan(1/239), each arctangent
/// bracketed by consecutive partial sums of its alternating series.
Enclosure enc_pi(Precision p);

/// Contains e^y for every y in x.
Enclosure enc_exp(const Enclosure& x, Precision p);

/// Contains sqrt(y) for every y in x. Throws NegativeOperand if x.lo < 0.
Enclosure enc_sqrt(const Enclosure& x, Precision p);

/// A real number of the form pi_coeff * pi + offset with rational parts.
/// Keeps pi symbolic so exact endpoint facts (cos(pi/2) = 0) stay visible.
struct PiAffine {
  Rational pi_coeff{0};
  Rational offset{0};

  bool is_rational() const { return pi_coeff == 0; }
  bool equals(const Rational& pi_part, const Rational& rational_part) const {
    return pi_coeff == pi_part && offset == rational_part;
  }
  Enclosure enclose(Precision p) const;
  std::string to_string() const;

  friend bool operator==(const PiAffine&, const PiAffine&) = default;
};

/// Parses sums of rational terms and rational multiples of pi, e.g. "pi/2",
/// "1/2", "pi/3+1/10", "3*pi/4", "2pi/3 - 0.25". Throws ParseError.
PiAffine parse_pi_affine(std::string_view text);

}  // namespace twin_taylor

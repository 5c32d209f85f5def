#pragma once

// Truncated power series with exact rational coefficients.
//
// A PowerSeries knows its first order+1 coefficients exactly. Whatever it
// says about the coefficients it does *not* store lives in its tail class and
// majorant, and only trusted constructors get to set those: std_series() here
// and the builders in paperfns. Arithmetic propagates a tail class only when
// the class is closed under the operation, otherwise the result is Unknown
// and cannot be evaluated rigorously.

#include <cstddef>
#include <optional>
#include <vector>

#include "twin_taylor/numeric.hpp"

namespace twin_taylor {

enum class TailClass {
  AlternatingFactorial,  ///< |c_k| <= M r^k / k!, signs unconstrained for evaluation
  PositiveFactorial,     ///< c_k >= 0 and c_k <= M r^k / k!
  PositiveGeometric,     ///< c_k >= 0 and c_k <= M r^k
  Polynomial,            ///< c_k = 0 beyond the stored order
  Unknown,
};

std::string_view to_string(TailClass tc);

/// Coefficient bound valid for every index k >= from.
struct TailMajorant {
  Rational scale{1};
  Rational rate{1};
  std::size_t from = 0;
};

class PowerSeries {
 public:
  /// Coefficients only; the tail is Unknown.
  PowerSeries(Rational base_point, std::vector<Rational> coeffs);

  /// The stored coefficients are the whole function.
  static PowerSeries polynomial(Rational base_point, std::vector<Rational> coeffs);

  const Rational& base_point() const noexcept { return base_point_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& coeff(std::size_t k) const { return coeffs_.at(k); }
  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  TailClass tail_class() const noexcept { return tail_class_; }
  const std::optional<TailMajorant>& majorant() const noexcept { return majorant_; }

  /// True when the coefficients beyond order() are known to be >= 0.
  bool tail_nonnegative() const;

 private:
  PowerSeries(Rational base_point, std::vector<Rational> coeffs, TailClass tc, std::optional<TailMajorant> m);

  friend PowerSeries with_tail(PowerSeries s, TailClass tc, std::optional<TailMajorant> m);

  Rational base_point_;
  std::vector<Rational> coeffs_;
  TailClass tail_class_ = TailClass::Unknown;
  std::optional<TailMajorant> majorant_;
};

enum class StdKind { Cos, Sin, Cosh, Sinh, Exp, One, X };

/// Textbook Maclaurin coefficients through x^order, with certified tails.
PowerSeries std_series(StdKind kind, std::size_t order);

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(const Rational& s, const PowerSeries& a);
/// Cauchy product truncated at the smaller order.
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

PowerSeries series_reciprocal(const PowerSeries& a);

/// Series of x -> a(lambda * x).
PowerSeries scale_argument(const PowerSeries& a, const Rational& lambda);

/// a / (x - base)^m; requires c_0 = ... = c_{m-1} = 0.
PowerSeries divide_by_power(const PowerSeries& a, std::size_t m);

/// (a - T_{m-1}) / (x - base)^m: drops the first m coefficients without
/// requiring them to vanish. Carries the tail bound along.
PowerSeries drop_leading(const PowerSeries& a, std::size_t m);

/// Truncates to a lower order, keeping the tail certificate where it still
/// applies.
PowerSeries truncate(const PowerSeries& a, std::size_t order);

bool is_zero(const PowerSeries& a);

/// |E_0|, |E_2|, ..., |E_2m|
struct EulerTable {
  std::vector<Integer> values;
};

/// Euler numbers read off the reciprocal of the cosine series. Throws
/// InternalCrossCheckMismatch if (2k)! * sec coefficient is not an integer.
EulerTable euler_numbers(std::size_t m);

/// Upper bound on |sum_{k > order} c_k t^k| for |t| <= t_max.
Rational tail_bound(const PowerSeries& a, const Rational& t_max);

/// Enclosure of the full (infinite) series value at every point of x.
/// Throws TailBoundUnavailable for Unknown tails, RatioConditionViolated
/// when x lies outside the region the majorant certifies.
Enclosure eval_with_tail(const PowerSeries& a, const Enclosure& x, Precision p);

/// Partial sum only. Not an enclosure of the function value unless the
/// series is a polynomial.
Enclosure eval_truncated(const PowerSeries& a, const Enclosure& x, Precision p);

/// cos, sin, cosh, sinh or exp of x with the order chosen so the tail stays
/// below the precision target.
Enclosure eval_elementary(StdKind kind, const Enclosure& x, Precision p);

}  // namespace twin_taylor

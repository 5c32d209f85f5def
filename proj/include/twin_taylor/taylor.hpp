#pragma once

// First and second Taylor approximations on an interval (a, b).
//
// T_n is the degree-n Taylor polynomial of f at a. The second approximation
// of index n keeps T_{n-1} and replaces the rest of the series by a single
// degree-n term chosen so that the polynomial meets f at b:
//
//   TT_n(x) = T_{n-1}(x) + R_n(b) / (b - a)^n * (x - a)^n,   R_n = f - T_{n-1}.
//
// For n = 0 it is the constant f(b). When every series coefficient of f is
// nonnegative the two families nest:
//
//   T_0 <= T_1 <= ... <= f <= ... <= TT_1 <= TT_0   on (a, b).

#include <cstddef>
#include <optional>
#include <vector>

#include "twin_taylor/numeric.hpp"
#include "twin_taylor/series.hpp"

namespace twin_taylor {

struct FirstTaylorPoly {
  Rational base_point;
  std::vector<Rational> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }
};

struct SecondTaylorPoly {
  Rational base_point;
  Enclosure endpoint;
  /// Coefficients of T_{n-1}; empty for n = 0.
  std::vector<Rational> low_coeffs;
  /// R_n(b) / (b - a)^n, or f(b) when n = 0.
  Enclosure top_coeff;
  std::size_t degree = 0;
};

/// Polynomial in (x - base) with enclosure coefficients. Used to subtract
/// approximations symbolically before evaluating, so exactly cancelling low
/// order terms do not cost precision.
struct EnclosurePoly {
  Rational base_point;
  std::vector<Enclosure> coeffs;

  /// Number of leading coefficients that are exactly zero.
  std::size_t low_zeros() const;
};

EnclosurePoly to_enclosure_poly(const FirstTaylorPoly& q);
EnclosurePoly to_enclosure_poly(const SecondTaylorPoly& q);
EnclosurePoly operator-(const EnclosurePoly& a, const EnclosurePoly& b);

/// Throws OrderExceedsTruncation when n > f.order().
FirstTaylorPoly first_taylor(const PowerSeries& f, std::size_t n);

/// The top coefficient is computed two ways, from f(b) - T_{n-1}(b) and from
/// the shifted series sum_{k>=n} c_k (b-a)^{k-n}, and the results are
/// intersected. `f_at_b`, when given, is an independent enclosure of f(b)
/// that is intersected with the series value. Disjoint routes throw
/// InternalCrossCheckMismatch.
SecondTaylorPoly second_taylor(const PowerSeries& f, std::size_t n, const Enclosure& b, Precision p,
                               const std::optional<Enclosure>& f_at_b = std::nullopt);

/// Exact Horner evaluation.
Enclosure eval_poly(const FirstTaylorPoly& q, const Enclosure& x);
Enclosure eval_poly(const SecondTaylorPoly& q, const Enclosure& x);
Enclosure eval_poly(const EnclosurePoly& q, const Enclosure& x);
/// Horner with outward rounding at p.working_bits().
Enclosure eval_poly(const FirstTaylorPoly& q, const Enclosure& x, Precision p);
Enclosure eval_poly(const SecondTaylorPoly& q, const Enclosure& x, Precision p);
Enclosure eval_poly(const EnclosurePoly& q, const Enclosure& x, Precision p);

/// Evaluates (x - base)^m * rest(x) where m = q.low_zeros(), which keeps the
/// relative precision of differences that vanish to high order at the base.
Enclosure eval_factored(const EnclosurePoly& q, const Enclosure& x, Precision p);

enum class RemainderKind { First, Second };

/// f(x) minus the index n-1 approximation of the given kind (n >= 1).
/// First:  R_n(x)  = (x-a)^n * sum_{k>=n} c_k (x-a)^{k-n}.
/// Second: RR_n(x) = (x-a)^{n-1} * (sum_{k>=n-1} c_k (x-a)^{k-n+1} - top_{n-1}).
/// The second kind needs the endpoint b.
Enclosure remainder_eval(const PowerSeries& f, RemainderKind kind, std::size_t n, const std::optional<Enclosure>& b,
                         const Enclosure& x, Precision p);

/// Same as remainder_eval for the second kind with a precomputed TT_{n-1}.
Enclosure second_remainder_eval(const PowerSeries& f, const SecondTaylorPoly& prev, const Enclosure& x, Precision p);

enum class HypothesisStatus { Certified, PrefixOnlyNonnegative, Fails };

struct HypothesisVerdict {
  HypothesisStatus status;
  /// First negative coefficient when status is Fails.
  std::size_t index = 0;
};

/// Certified when every stored coefficient is >= 0 and the tail is
/// certified nonnegative (a positive tail class or an exact polynomial).
HypothesisVerdict check_theorem2_hypothesis(const PowerSeries& f);

struct Ladder {
  std::vector<FirstTaylorPoly> lower;
  std::vector<SecondTaylorPoly> upper;
  PowerSeries source;
  Enclosure endpoint;
  std::vector<std::size_t> orders;
};

/// Throws HypothesisNotCertified unless check_theorem2_hypothesis(f) is
/// Certified, InvalidArgument unless orders are strictly ascending.
Ladder build_ladder(const PowerSeries& f, const Enclosure& b, const std::vector<std::size_t>& orders, Precision p,
                    const std::optional<Enclosure>& f_at_b = std::nullopt);

enum class Sign { Negative, Zero, Positive, Indeterminate };

std::string_view to_string(Sign s);
Sign sign_of(const Enclosure& e);

struct Prop1Sample {
  Enclosure x;
  Enclosure difference;  ///< TT_n(x) - TT_{n+1}(x)
  Sign sign;
  bool agrees;
};

struct Prop1Report {
  Enclosure endpoint_gap;  ///< f(b) - T_n(b)
  Sign endpoint_sign;
  std::vector<Prop1Sample> samples;
  /// Every sample with a resolved sign agrees with the endpoint sign.
  bool consistent = true;
  std::size_t indeterminate = 0;
};

/// Checks sgn(TT_n - TT_{n+1}) = sgn(f(b) - T_n(b)) at each sample in (a, b).
/// Both sides are evaluated directly, without using the identity that
/// relates them.
Prop1Report prop1_sign_check(const PowerSeries& f, std::size_t n, const Enclosure& b,
                             const std::vector<Enclosure>& samples, Precision p);

}  // namespace twin_taylor

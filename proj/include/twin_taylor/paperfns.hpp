#pragma once

// The concrete functions under study, as certified power series about 0.
//
//   f(x)  = (1 - cos x / cos(x/2)) / x^2                     on (0, pi), f(0) = 3/8
//   g(x)  = (2 - sin x / sin(x/2)) / x^2                     on (0, beta], g(0) = 1/4
//   g1(x) = (cosh(x/2) - cos(x/2)) / x^2                     g1(0) = 1/4
//   g2(x) = (cosh(x/2) + cos(x/2) - 2) / x^2                 g2(0) = 0
//
// with g = g1 - g2. Each builder derives the coefficients by series
// arithmetic, checks them against a second construction, and only then
// attaches a tail certificate.

#include <cstddef>
#include <optional>
#include <string_view>

#include "twin_taylor/numeric.hpp"
#include "twin_taylor/series.hpp"

namespace twin_taylor {

enum class FunctionId { F, G, G1, G2 };

std::string_view to_string(FunctionId id);
/// "f", "g", "g1", "g2"; throws InvalidArgument otherwise.
FunctionId parse_function_id(std::string_view name);

struct PaperFunction {
  FunctionId id;
  PowerSeries series;
  /// Right end of the domain: pi for f, beta for the g family.
  PiAffine domain_hi;
  Rational value_at_zero;
};

/// N even and >= 2. Coefficients c_{2k-2} = (|E_2k| - 2(-1)^k) / (2^2k (2k)!)
/// are checked against the series of (1 + sec(x/2) - 2 cos(x/2)) / x^2.
/// Throws InternalCrossCheckMismatch when the two disagree.
PaperFunction build_f(std::size_t order);

struct GFamily {
  PaperFunction g;
  PaperFunction g1;
  PaperFunction g2;
};

/// N >= 4 with N divisible by 4; beta in (0, pi] (default pi).
GFamily build_g_family(std::size_t order, const std::optional<PiAffine>& beta = std::nullopt);

/// Convenience: the series of one function at the given order.
PaperFunction build_function(FunctionId id, std::size_t order, const std::optional<PiAffine>& beta = std::nullopt);

/// Evaluates the defining closed form from cos/sin/cosh enclosures, without
/// touching the function's own Maclaurin series. Requires 0 < x < pi.
/// Throws DomainViolation outside the domain and PoleProximity when a
/// denominator cannot be separated from 0 (f near pi).
Enclosure closed_eval(FunctionId id, const Enclosure& x, Precision p);

enum class IdentityId { SecIdentity, SinRatioIdentity, Splitting };

std::string_view to_string(IdentityId id);

/// Difference of the two sides of an algebraic identity, as a series through
/// the given order. Every coefficient should be exactly zero.
///   SecIdentity:      cos(x/2) (1 + sec(x/2) - 2 cos(x/2)) - (cos(x/2) - cos x)
///   SinRatioIdentity: sin x - 2 cos(x/2) sin(x/2)
///   Splitting:        (2 - sin x / sin(x/2)) / x^2 - (g1 - g2)
PowerSeries identity_check(IdentityId id, std::size_t order);

}  // namespace twin_taylor

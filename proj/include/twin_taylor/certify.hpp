#pragma once

// End-to-end verifiers built on the ladder machinery.
//
// A claim is Proved only when every hypothesis check passed and every
// required inequality was separated by enclosure endpoints. Comparisons that
// stay unresolved are retried with doubled precision and truncation (up to
// CertifyOptions::max_escalations times) before the verdict falls back to
// Indeterminate.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twin_taylor/numeric.hpp"
#include "twin_taylor/paperfns.hpp"
#include "twin_taylor/taylor.hpp"

namespace twin_taylor {

enum class Verdict { Proved, ProvedNonStrictAtEndpoint, Indeterminate, Refuted };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  friend bool operator==(const HypothesisCheck&, const HypothesisCheck&) = default;
};

struct NamedEnclosure {
  std::string name;
  Enclosure value;
  friend bool operator==(const NamedEnclosure&, const NamedEnclosure&) = default;
};

struct SubClaim {
  std::string name;
  Verdict verdict = Verdict::Indeterminate;
  friend bool operator==(const SubClaim&, const SubClaim&) = default;
};

struct CertificateReport {
  std::string claim_id;
  std::vector<HypothesisCheck> hypotheses;
  std::vector<NamedEnclosure> enclosures;
  Verdict verdict = Verdict::Indeterminate;
  int precision = 0;  ///< budget that produced the verdict
  std::size_t truncation = 0;
  std::vector<SubClaim> sub_claims;
  std::vector<std::string> notes;

  const Enclosure* find(std::string_view name) const;
  const SubClaim* sub_claim(std::string_view name) const;
  bool all_hypotheses_passed() const;

  friend bool operator==(const CertificateReport&, const CertificateReport&) = default;
};

struct CertifyOptions {
  int precision = 64;
  std::size_t truncation = 64;
  int grid = 33;
  int max_escalations = 3;

  CertifyOptions doubled() const;
};

/// Statement-1 style bounds 3/8 < f(x) < f(c) on (0, c), from the order-0
/// ladder. c must lie in (0, pi). When c is exactly pi/2 the upper constant is
/// also computed as 4/pi^2 and intersected in.
CertificateReport verify_statement1(const PiAffine& c, const CertifyOptions& opts = {});
CertificateReport verify_statement1(const Enclosure& c, const CertifyOptions& opts = {});

/// Checks the full chain T_{o_0} <= ... <= T_{o_k} <= fn <= TT_{o_k} <= ... <= TT_{o_0}
/// at opts.grid interior sample points of (0, c). Throws HypothesisNotCertified
/// when fn's coefficients are not certified nonnegative.
CertificateReport verify_ladder_chain(FunctionId id, const PiAffine& c, const std::vector<std::size_t>& orders,
                                      const CertifyOptions& opts = {});

/// verify_ladder_chain for f.
CertificateReport verify_theorem3_chain(const PiAffine& c, const std::vector<std::size_t>& orders,
                                        const CertifyOptions& opts = {});

struct MaxSearchResult {
  Enclosure argmax;
  Enclosure max_value;
  int samples_used = 0;
  int refinement_depth = 0;
};

/// Grid scan of |remainder| followed by golden-section refinement of the
/// best cell until the bracket is narrower than tol. The global location is
/// heuristic; max_value is a rigorous enclosure of |remainder| at the
/// reported point hulled with its supremum over the final bracket.
MaxSearchResult remainder_max(FunctionId id, RemainderKind kind, std::size_t n, const std::optional<PiAffine>& b,
                              const PiAffine& left, const PiAffine& right, const Rational& tol,
                              const CertifyOptions& opts = {}, int grid = 256);

struct DeltaConstants {
  Enclosure delta1;
  Enclosure delta2;
};

/// delta1 = sqrt2 pi e^(pi/8) sqrt(pi^2 + 16 sqrt2 - 32) / (8 sqrt((sqrt2 - 4) e^(pi/4) + e^(pi/2) + 1))
/// delta2 = 4 sqrt3 e^(-pi/8) / pi * sqrt(8 + 8 e^(pi/2) - (pi^2 + 8 sqrt2) e^(pi/4))
/// Aims for width <= 2^-budget. Throws NegativeOperand when a radicand cannot
/// be separated from 0 after escalation.
DeltaConstants delta_constants(Precision p);

/// With c = pi/2, L(x) = 1/4 - (g2(c)/c^2) x^2 and U(x) = g1(c) - x^2/192:
///   (a) L <= g <= U on (0, c)
///   (b) U <= 1/4 on [delta2, c]
///   (c) (4/pi^2)(2 - sqrt2) <= L on [0, delta1]
/// (b) and (c) are exact crossings; the equalities U(delta2) = 1/4 and
/// L(delta1) = (4/pi^2)(2 - sqrt2) are proved by an exact identity in
/// Q(sqrt2)[pi^2, 1/pi^2, e^(pi/4), e^(-pi/4)], then monotonicity of the
/// quadratics finishes the interval claims.
CertificateReport verify_statement2_improvement(const CertifyOptions& opts = {});

struct ConstantRow {
  std::string name;
  Enclosure value;
  /// The value as usually quoted: an exact fraction, a closed form, or a
  /// truncated decimal.
  std::string quoted;
  bool consistent = false;
};

/// f coefficients through x^8, 4/pi^2, 16/pi^4 - 3/(2 pi^2), g1(pi/2),
/// g2(pi/2), delta1, delta2 and both remainder maxima.
std::vector<ConstantRow> reproduce_constants(const CertifyOptions& opts = {});

std::string report_to_json(const CertificateReport& report);
/// Throws ParseError on malformed input.
CertificateReport report_from_json(std::string_view text);
std::string report_to_text(const CertificateReport& report);

}  // namespace twin_taylor

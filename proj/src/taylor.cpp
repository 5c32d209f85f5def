#include "twin_taylor/taylor.hpp"

#include <algorithm>

#include "series_internal.hpp"

namespace twin_taylor {

namespace {

template <typename Coeff>
Enclosure horner(const std::vector<Coeff>& c, const Enclosure& t, std::optional<int> bits) {
  if (c.empty()) return Enclosure(Rational(0));
  const int guard = bits ? horner_guard_bits(t, c.size()) : 0;
  Enclosure acc(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = acc * t + c[k];
    if (bits) acc = round_out(acc, *bits + guard);
  }
  return bits ? round_out(acc, *bits) : acc;
}

Enclosure rounded(const Enclosure& e, Precision p) { return round_out(e, p.working_bits()); }

}  // namespace

std::size_t EnclosurePoly::low_zeros() const {
  std::size_t m = 0;
  while (m < coeffs.size() && coeffs[m].is_point() && sgn(coeffs[m].lo()) == 0) ++m;
  return m;
}

EnclosurePoly to_enclosure_poly(const FirstTaylorPoly& q) {
  EnclosurePoly r{q.base_point, {}};
  for (const auto& c : q.coeffs) r.coeffs.emplace_back(c);
  return r;
}

EnclosurePoly to_enclosure_poly(const SecondTaylorPoly& q) {
  EnclosurePoly r{q.base_point, {}};
  for (const auto& c : q.low_coeffs) r.coeffs.emplace_back(c);
  r.coeffs.push_back(q.top_coeff);
  return r;
}

EnclosurePoly operator-(const EnclosurePoly& a, const EnclosurePoly& b) {
  if (a.base_point != b.base_point) throw Error(ErrorKind::BasePointMismatch, "polynomials have different base points");
  EnclosurePoly r{a.base_point, {}};
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  const Enclosure zero(Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    const Enclosure& x = k < a.coeffs.size() ? a.coeffs[k] : zero;
    const Enclosure& y = k < b.coeffs.size() ? b.coeffs[k] : zero;
    r.coeffs.push_back(x - y);
  }
  return r;
}

namespace {

// Exact polynomials are known beyond their stored order: the rest is zero.
void require_order(const PowerSeries& f, std::size_t n) {
  if (n > f.order() && f.tail_class() != TailClass::Polynomial) {
    throw Error(ErrorKind::OrderExceedsTruncation,
                "degree " + std::to_string(n) + " exceeds series order " + std::to_string(f.order()));
  }
}

}  // namespace

FirstTaylorPoly first_taylor(const PowerSeries& f, std::size_t n) {
  require_order(f, n);
  std::vector<Rational> c(n + 1, Rational(0));
  std::copy_n(f.coeffs().begin(), std::min(n, f.order()) + 1, c.begin());
  return FirstTaylorPoly{f.base_point(), std::move(c)};
}

SecondTaylorPoly second_taylor(const PowerSeries& f, std::size_t n, const Enclosure& b, Precision p,
                               const std::optional<Enclosure>& f_at_b) {
  require_order(f, n);
  if (b.lo() <= f.base_point()) throw Error(ErrorKind::DomainViolation, "endpoint must lie right of the base point");

  SecondTaylorPoly q;
  q.base_point = f.base_point();
  q.endpoint = b;
  q.degree = n;
  if (n > 0) q.low_coeffs = first_taylor(f, n - 1).coeffs;

  const Enclosure t = b - f.base_point();
  const bool tail_known = f.tail_class() != TailClass::Unknown;

  std::optional<Enclosure> value = f_at_b;
  if (tail_known || !value) {
    Enclosure series_value = eval_with_tail(f, b, p);
    if (value) {
      auto both = intersect(*value, series_value);
      if (!both) throw Error(ErrorKind::InternalCrossCheckMismatch, "f(b) enclosures from two routes are disjoint");
      value = *both;
    } else {
      value = series_value;
    }
  }

  Enclosure top = n == 0 ? *value : (*value - horner(q.low_coeffs, t, p.working_bits())) / pow(t, static_cast<int>(n));
  if (tail_known && n > 0) {
    Enclosure shifted = eval_with_tail(drop_leading(f, n), b, p);
    auto both = intersect(top, shifted);
    if (!both) throw Error(ErrorKind::InternalCrossCheckMismatch, "top coefficient routes are disjoint");
    top = *both;
  }
  q.top_coeff = rounded(top, p);
  return q;
}

Enclosure eval_poly(const FirstTaylorPoly& q, const Enclosure& x) {
  return horner(q.coeffs, x - q.base_point, std::nullopt);
}

Enclosure eval_poly(const SecondTaylorPoly& q, const Enclosure& x) {
  return eval_poly(to_enclosure_poly(q), x);
}

Enclosure eval_poly(const EnclosurePoly& q, const Enclosure& x) {
  return horner(q.coeffs, x - q.base_point, std::nullopt);
}

Enclosure eval_poly(const FirstTaylorPoly& q, const Enclosure& x, Precision p) {
  return horner(q.coeffs, x - q.base_point, p.working_bits());
}

Enclosure eval_poly(const SecondTaylorPoly& q, const Enclosure& x, Precision p) {
  return eval_poly(to_enclosure_poly(q), x, p);
}

Enclosure eval_poly(const EnclosurePoly& q, const Enclosure& x, Precision p) {
  return horner(q.coeffs, x - q.base_point, p.working_bits());
}

Enclosure eval_factored(const EnclosurePoly& q, const Enclosure& x, Precision p) {
  const std::size_t m = q.low_zeros();
  if (m == q.coeffs.size()) return Enclosure(Rational(0));
  const Enclosure t = x - q.base_point;
  std::vector<Enclosure> rest(q.coeffs.begin() + static_cast<std::ptrdiff_t>(m), q.coeffs.end());
  return rounded(pow(t, static_cast<int>(m)) * horner(rest, t, p.working_bits()), p);
}

Enclosure second_remainder_eval(const PowerSeries& f, const SecondTaylorPoly& prev, const Enclosure& x, Precision p) {
  const std::size_t m = prev.degree;
  const Enclosure t = x - f.base_point();
  Enclosure shifted = eval_with_tail(drop_leading(f, m), x, p);
  return rounded(pow(t, static_cast<int>(m)) * (shifted - prev.top_coeff), p);
}

Enclosure remainder_eval(const PowerSeries& f, RemainderKind kind, std::size_t n, const std::optional<Enclosure>& b,
                         const Enclosure& x, Precision p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "remainder index starts at 1");
  if (kind == RemainderKind::First) {
    const Enclosure t = x - f.base_point();
    return rounded(pow(t, static_cast<int>(n)) * eval_with_tail(drop_leading(f, n), x, p), p);
  }
  if (!b) throw Error(ErrorKind::InvalidArgument, "the second remainder needs an endpoint");
  return second_remainder_eval(f, second_taylor(f, n - 1, *b, p), x, p);
}

HypothesisVerdict check_theorem2_hypothesis(const PowerSeries& f) {
  for (std::size_t k = 0; k <= f.order(); ++k) {
    if (sgn(f.coeff(k)) < 0) return {HypothesisStatus::Fails, k};
  }
  if (f.tail_nonnegative()) return {HypothesisStatus::Certified, 0};
  return {HypothesisStatus::PrefixOnlyNonnegative, 0};
}

Ladder build_ladder(const PowerSeries& f, const Enclosure& b, const std::vector<std::size_t>& orders, Precision p,
                    const std::optional<Enclosure>& f_at_b) {
  if (check_theorem2_hypothesis(f).status != HypothesisStatus::Certified) {
    throw Error(ErrorKind::HypothesisNotCertified, "series coefficients are not certified nonnegative");
  }
  if (orders.empty()) throw Error(ErrorKind::InvalidArgument, "ladder needs at least one order");
  for (std::size_t i = 1; i < orders.size(); ++i) {
    if (orders[i] <= orders[i - 1]) throw Error(ErrorKind::InvalidArgument, "ladder orders must be strictly ascending");
  }
  Ladder ladder{{}, {}, f, b, orders};
  for (std::size_t n : orders) {
    ladder.lower.push_back(first_taylor(f, n));
    ladder.upper.push_back(second_taylor(f, n, b, p, f_at_b));
  }
  return ladder;
}

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Positive: return "positive";
    case Sign::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Sign sign_of(const Enclosure& e) {
  if (e.positive()) return Sign::Positive;
  if (e.negative()) return Sign::Negative;
  if (e.is_point()) return Sign::Zero;
  return Sign::Indeterminate;
}

Prop1Report prop1_sign_check(const PowerSeries& f, std::size_t n, const Enclosure& b,
                             const std::vector<Enclosure>& samples, Precision p) {
  Prop1Report report;
  // factored as t^(n+1) S_(n+1)(b) so an exactly vanishing tail gives exactly 0
  report.endpoint_gap = remainder_eval(f, RemainderKind::First, n + 1, std::nullopt, b, p);
  report.endpoint_sign = sign_of(report.endpoint_gap);

  const EnclosurePoly diff =
      to_enclosure_poly(second_taylor(f, n, b, p)) - to_enclosure_poly(second_taylor(f, n + 1, b, p));
  for (const auto& x : samples) {
    Prop1Sample s{x, eval_factored(diff, x, p), Sign::Indeterminate, true};
    s.sign = sign_of(s.difference);
    if (s.sign == Sign::Indeterminate || report.endpoint_sign == Sign::Indeterminate) {
      ++report.indeterminate;
    } else {
      s.agrees = s.sign == report.endpoint_sign;
      report.consistent = report.consistent && s.agrees;
    }
    report.samples.push_back(std::move(s));
  }
  return report;
}

}  // namespace twin_taylor

#include "twin_taylor/certify.hpp"

#include <algorithm>
#include <map>

namespace twin_taylor {

namespace {

// ---------------------------------------------------------------------------
// small helpers

const Rational kQuarter(1, 4);

Precision guard(const CertifyOptions& o) { return Precision(o.precision + 32); }

// Collects difference enclosures that should all be >= 0.
class Tally {
 public:
  void add(const Enclosure& d) {
    if (sgn(d.hi()) < 0) {
      refuted_ = true;
    } else if (sgn(d.lo()) < 0) {
      unresolved_ = true;
    }
  }
  Verdict verdict() const {
    if (refuted_) return Verdict::Refuted;
    return unresolved_ ? Verdict::Indeterminate : Verdict::Proved;
  }

 private:
  bool refuted_ = false;
  bool unresolved_ = false;
};

bool is_proved(Verdict v) { return v == Verdict::Proved || v == Verdict::ProvedNonStrictAtEndpoint; }

// Overall verdict from the sub-claims and the hypothesis list.
Verdict overall(const CertificateReport& r) {
  bool any_refuted = false;
  bool all_proved = r.all_hypotheses_passed();
  for (const auto& s : r.sub_claims) {
    any_refuted = any_refuted || s.verdict == Verdict::Refuted;
    all_proved = all_proved && is_proved(s.verdict);
  }
  if (any_refuted) return Verdict::Refuted;
  return all_proved ? Verdict::Proved : Verdict::Indeterminate;
}

template <typename Job>
CertificateReport with_escalation(const CertifyOptions& opts, Job job) {
  CertifyOptions cur = opts;
  CertificateReport r = job(cur);
  std::vector<std::string> history;
  for (int i = 0; i < opts.max_escalations && r.verdict == Verdict::Indeterminate; ++i) {
    history.push_back("indeterminate at precision " + std::to_string(cur.precision) + ", truncation " +
                      std::to_string(cur.truncation) + "; escalating");
    cur = cur.doubled();
    r = job(cur);
  }
  r.notes.insert(r.notes.begin(), history.begin(), history.end());
  return r;
}

void require_inside_pi(const Enclosure& c, Precision q) {
  if (!c.positive() || c.hi() >= enc_pi(q).lo()) {
    throw Error(ErrorKind::DomainViolation, "endpoint must lie in (0, pi)");
  }
}

bool is_half_pi(const std::optional<PiAffine>& c) { return c && c->equals(Rational(1, 2), 0); }

std::optional<Enclosure> meet(const Enclosure& a, const Enclosure& b) { return intersect(a, b); }

// interior sample points c * i / (grid + 1), on a 2^-64 grid
std::vector<Enclosure> interior_samples(const Enclosure& c, int grid) {
  std::vector<Enclosure> xs;
  for (int i = 1; i <= grid; ++i) {
    xs.emplace_back(floor_to_bits(c.lo() * Rational(i, grid + 1), 64));
  }
  return xs;
}

// ---------------------------------------------------------------------------
// Exact algebra for the crossing identities: Laurent polynomials in
// P = pi^2 and E = e^(pi/4) with coefficients a + b sqrt2, a, b rational.

struct QSqrt2 {
  Rational a{0};
  Rational b{0};

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
};

class Laurent {
 public:
  static Laurent constant(const Rational& a, const Rational& b = 0) {
    Laurent r;
    r.add_term({0, 0}, {a, b});
    return r;
  }
  static Laurent monomial(int p_exp, int e_exp, const Rational& a = 1) {
    Laurent r;
    r.add_term({p_exp, e_exp}, {a, 0});
    return r;
  }

  friend Laurent operator+(Laurent x, const Laurent& y) {
    for (const auto& [k, v] : y.terms_) x.add_term(k, v);
    return x;
  }
  friend Laurent operator-(Laurent x, const Laurent& y) {
    for (const auto& [k, v] : y.terms_) x.add_term(k, {-v.a, -v.b});
    return x;
  }
  friend Laurent operator*(const Laurent& x, const Laurent& y) {
    Laurent r;
    for (const auto& [kx, vx] : x.terms_) {
      for (const auto& [ky, vy] : y.terms_) {
        r.add_term({kx.first + ky.first, kx.second + ky.second},
                   {vx.a * vy.a + 2 * vx.b * vy.b, vx.a * vy.b + vx.b * vy.a});
      }
    }
    return r;
  }
  friend Laurent operator*(const Rational& s, const Laurent& x) { return constant(s) * x; }

  bool is_zero() const { return terms_.empty(); }

 private:
  void add_term(std::pair<int, int> key, const QSqrt2& v) {
    QSqrt2& slot = terms_[key];
    slot.a += v.a;
    slot.b += v.b;
    if (slot.is_zero()) terms_.erase(key);
  }

  std::map<std::pair<int, int>, QSqrt2> terms_;
};

struct Symbols {
  Laurent P = Laurent::monomial(1, 0);
  Laurent Pinv = Laurent::monomial(-1, 0);
  Laurent E = Laurent::monomial(0, 1);
  Laurent Einv = Laurent::monomial(0, -1);
  Laurent S = Laurent::constant(0, 1);
  Laurent one = Laurent::constant(1);

  Laurent c(const Rational& q) const { return Laurent::constant(q); }
  // cosh(pi/4), cos(pi/4) = sqrt2/2, 1/(pi/2)^2 = 4/P
  Laurent cosh_quarter() const { return Rational(1, 2) * (E + Einv); }
  Laurent cos_quarter() const { return Rational(1, 2) * S; }
  Laurent inv_c_squared() const { return Rational(4) * Pinv; }
};

// U(delta2) - 1/4 with U(x) = g1(pi/2) - x^2/192, everything squared out.
Laurent crossing_residual_upper() {
  Symbols s;
  const Laurent g1c = s.inv_c_squared() * (s.cosh_quarter() - s.cos_quarter());
  // delta2^2 = (4 sqrt3 e^(-pi/8) / pi)^2 * (8 + 8 e^(pi/2) - (pi^2 + 8 sqrt2) e^(pi/4))
  const Laurent delta2_sq =
      Rational(48) * s.Pinv * s.Einv * (s.c(8) + Rational(8) * s.E * s.E - (s.P + Rational(8) * s.S) * s.E);
  return Rational(192) * (g1c - s.c(kQuarter)) - delta2_sq;
}

// (L(delta1) - K) * D with L(x) = 1/4 - (g2(c)/c^2) x^2, K = (4/pi^2)(2 - sqrt2),
// delta1^2 = N / D.
Laurent crossing_residual_lower() {
  Symbols s;
  const Laurent k = Rational(4) * s.Pinv * (s.c(2) - s.S);
  const Laurent g2c_over_c2 = s.inv_c_squared() * s.inv_c_squared() * (s.cosh_quarter() + s.cos_quarter() - s.c(2));
  // (sqrt2 pi e^(pi/8))^2 (pi^2 + 16 sqrt2 - 32) and (8)^2 ((sqrt2 - 4) e^(pi/4) + e^(pi/2) + 1)
  const Laurent num = Rational(2) * s.P * s.E * (s.P + Rational(16) * s.S - s.c(32));
  const Laurent den = Rational(64) * ((s.S - s.c(4)) * s.E + s.E * s.E + s.one);
  return (s.c(kQuarter) - k) * den - g2c_over_c2 * num;
}

// ---------------------------------------------------------------------------

CertificateReport statement1_once(const Enclosure& c, const std::optional<PiAffine>& exact, const CertifyOptions& o) {
  const Precision p(o.precision);
  const PaperFunction f = build_f(o.truncation);

  CertificateReport r;
  r.claim_id = "statement1";
  r.precision = o.precision;
  r.truncation = o.truncation;

  const bool certified = check_theorem2_hypothesis(f.series).status == HypothesisStatus::Certified;
  bool witness = false;
  for (std::size_t k = 1; k <= f.series.order(); ++k) witness = witness || sgn(f.series.coeff(k)) > 0;
  r.hypotheses.push_back({"nonnegative_coefficients", certified});
  r.hypotheses.push_back({"strict_growth_witness", witness});

  // independent routes to f(c): closed form, and 4/pi^2 when c is pi/2
  std::optional<Enclosure> independent = closed_eval(FunctionId::F, c, p);
  std::optional<Enclosure> exact_form;
  if (is_half_pi(exact)) {
    exact_form = Rational(4) / square(enc_pi(guard(o)));
    independent = meet(*independent, *exact_form);
  }
  const Enclosure by_series = eval_with_tail(f.series, c, p);
  const bool agree = independent && independent->overlaps(by_series);
  r.hypotheses.push_back({"closed_form_agreement", agree});

  const Enclosure lower(Rational(3, 8));
  const Enclosure upper = second_taylor(f.series, 0, c, p, agree ? independent : std::nullopt).top_coeff;
  r.enclosures.push_back({"endpoint", c});
  r.enclosures.push_back({"lower", lower});
  r.enclosures.push_back({"upper", upper});
  if (exact_form) r.enclosures.push_back({"4/pi^2", *exact_form});

  // T_0 = 3/8 < f < f(c) = TT_0 on (0, c) follows from the ladder once the
  // coefficients are certified and some c_k with k >= 1 is positive.
  const Verdict ladder_holds = certified && witness ? Verdict::Proved : Verdict::Indeterminate;
  Verdict order = Verdict::Indeterminate;
  if (upper.lo() > lower.hi()) order = Verdict::Proved;
  if (upper.hi() <= lower.lo()) order = Verdict::Refuted;
  r.sub_claims.push_back({"lower_bound_open_interval", ladder_holds});
  r.sub_claims.push_back({"upper_bound_open_interval", ladder_holds});
  r.sub_claims.push_back({"upper_bound_at_endpoint",
                          ladder_holds == Verdict::Proved ? Verdict::ProvedNonStrictAtEndpoint : Verdict::Indeterminate});
  r.sub_claims.push_back({"lower_below_upper", order});
  r.verdict = overall(r);
  r.notes.push_back("the upper bound is attained at x = c, so it is strict only on the open interval");
  return r;
}

CertificateReport chain_once(FunctionId id, const PiAffine& c_sym, const std::vector<std::size_t>& orders,
                             const CertifyOptions& o) {
  const Precision p(o.precision);
  const Enclosure c = c_sym.enclose(guard(o));
  const PaperFunction fn = build_function(id, o.truncation);
  const HypothesisVerdict hyp = check_theorem2_hypothesis(fn.series);
  if (hyp.status != HypothesisStatus::Certified) {
    throw Error(ErrorKind::HypothesisNotCertified,
                std::string(to_string(id)) + " has no certified nonnegative series");
  }
  if (orders.empty()) throw Error(ErrorKind::InvalidArgument, "no ladder orders given");
  if (orders.back() + 2 > o.truncation) {
    throw Error(ErrorKind::OrderExceedsTruncation, "truncation must exceed the largest order by 2");
  }

  CertificateReport r;
  r.claim_id = std::string("ladder_chain_") + std::string(to_string(id));
  r.precision = o.precision;
  r.truncation = o.truncation;
  r.hypotheses.push_back({"nonnegative_coefficients", true});

  const Enclosure closed = closed_eval(id, c, p);
  const Enclosure by_series = eval_with_tail(fn.series, c, p);
  const bool agree = closed.overlaps(by_series);
  r.hypotheses.push_back({"closed_form_agreement", agree});

  const Ladder ladder = build_ladder(fn.series, c, orders, p, agree ? std::optional<Enclosure>(closed) : std::nullopt);
  r.enclosures.push_back({"endpoint", c});
  r.enclosures.push_back({std::string(to_string(id)) + "(endpoint)", ladder.upper.front().degree == 0
                                                                          ? ladder.upper.front().top_coeff
                                                                          : *meet(closed, by_series)});
  for (const auto& tt : ladder.upper) {
    r.enclosures.push_back({"TT_" + std::to_string(tt.degree) + ".top", tt.top_coeff});
  }

  Tally lower_chain, lower_to_f, f_to_upper, upper_chain;
  for (const Enclosure& x : interior_samples(c, o.grid)) {
    for (std::size_t i = 0; i + 1 < orders.size(); ++i) {
      lower_chain.add(eval_factored(to_enclosure_poly(ladder.lower[i + 1]) - to_enclosure_poly(ladder.lower[i]), x, p));
      upper_chain.add(eval_factored(to_enclosure_poly(ladder.upper[i]) - to_enclosure_poly(ladder.upper[i + 1]), x, p));
    }
    lower_to_f.add(remainder_eval(fn.series, RemainderKind::First, orders.back() + 1, std::nullopt, x, p));
    f_to_upper.add(-second_remainder_eval(fn.series, ladder.upper.back(), x, p));
  }
  r.sub_claims.push_back({"lower_rungs_increase", lower_chain.verdict()});
  r.sub_claims.push_back({"lower_rungs_below_function", lower_to_f.verdict()});
  r.sub_claims.push_back({"upper_rungs_above_function", f_to_upper.verdict()});
  r.sub_claims.push_back({"upper_rungs_decrease", upper_chain.verdict()});
  r.verdict = overall(r);
  r.notes.push_back("chain checked at " + std::to_string(o.grid) + " interior sample points of (0, " +
                    c_sym.to_string() + ")");
  return r;
}

CertificateReport statement2_once(const CertifyOptions& o) {
  const Precision p(o.precision);
  const PiAffine c_sym{Rational(1, 2), 0};
  const Enclosure c = c_sym.enclose(guard(o));
  const GFamily fam = build_g_family(o.truncation);

  CertificateReport r;
  r.claim_id = "statement2_improvement";
  r.precision = o.precision;
  r.truncation = o.truncation;

  const bool g1_ok = check_theorem2_hypothesis(fam.g1.series).status == HypothesisStatus::Certified;
  const bool g2_ok = check_theorem2_hypothesis(fam.g2.series).status == HypothesisStatus::Certified;
  r.hypotheses.push_back({"g1_nonnegative_coefficients", g1_ok});
  r.hypotheses.push_back({"g2_nonnegative_coefficients", g2_ok});
  r.hypotheses.push_back(
      {"g_needs_splitting", check_theorem2_hypothesis(fam.g.series).status == HypothesisStatus::Fails});

  const SecondTaylorPoly g1_top = second_taylor(fam.g1.series, 0, c, p, closed_eval(FunctionId::G1, c, p));
  const Enclosure g2c_closed = closed_eval(FunctionId::G2, c, p);
  const Enclosure g2c = second_taylor(fam.g2.series, 0, c, p, g2c_closed).top_coeff;
  const SecondTaylorPoly g2_quad = second_taylor(fam.g2.series, 2, c, p, g2c_closed);
  const Enclosure& g1c = g1_top.top_coeff;
  const Enclosure& k2 = g2_quad.top_coeff;

  r.enclosures.push_back({"g1(pi/2)", g1c});
  r.enclosures.push_back({"g2(pi/2)", g2c});
  r.enclosures.push_back({"lower_quadratic_coefficient", -k2});
  r.enclosures.push_back({"upper_quadratic_coefficient", Enclosure(Rational(-1, 192))});

  // (a) g1 >= T_0 = 1/4, g2 <= TT_2 = k2 x^2, g1 <= TT_0 = g1(c), g2 >= T_2 = x^2/192
  Tally a;
  bool closed_agree = true;
  for (const Enclosure& x : interior_samples(c, o.grid)) {
    a.add(remainder_eval(fam.g1.series, RemainderKind::First, 1, std::nullopt, x, p));
    a.add(-second_remainder_eval(fam.g2.series, g2_quad, x, p));
    a.add(-second_remainder_eval(fam.g1.series, g1_top, x, p));
    a.add(remainder_eval(fam.g2.series, RemainderKind::First, 3, std::nullopt, x, p));
    closed_agree = closed_agree && eval_with_tail(fam.g.series, x, p).overlaps(closed_eval(FunctionId::G, x, p));
  }
  r.hypotheses.push_back({"g_closed_form_agreement", closed_agree});
  const Verdict verdict_a = g1_ok && g2_ok ? a.verdict() : Verdict::Indeterminate;

  const DeltaConstants d = delta_constants(p);
  const Enclosure k_const = Rational(4) / square(enc_pi(guard(o))) * (Rational(2) - enc_sqrt(Enclosure(Rational(2)), guard(o)));
  const Enclosure u_at_d2 = g1c - square(d.delta2) / Rational(192);
  const Enclosure l_at_d1 = kQuarter - k2 * square(d.delta1);
  r.enclosures.push_back({"delta1", d.delta1});
  r.enclosures.push_back({"delta2", d.delta2});
  r.enclosures.push_back({"U(delta2)", round_out(u_at_d2, p.working_bits())});
  r.enclosures.push_back({"L(delta1)", round_out(l_at_d1, p.working_bits())});
  r.enclosures.push_back({"statement2_lower", round_out(k_const, p.working_bits())});
  r.enclosures.push_back({"statement2_upper", Enclosure(kQuarter)});

  // (b) U decreasing for x > 0 (leading coefficient -1/192), U(delta2) = 1/4 exactly
  const bool identity_b = crossing_residual_upper().is_zero();
  const bool d2_inside = d.delta2.positive() && d.delta2.hi() < c.lo();
  const bool b_numeric = u_at_d2.contains(kQuarter);
  r.hypotheses.push_back({"upper_crossing_identity", identity_b});
  r.hypotheses.push_back({"upper_crossing_numeric", b_numeric});
  r.hypotheses.push_back({"delta2_inside_interval", d2_inside});
  const Verdict verdict_b = identity_b && d2_inside && b_numeric ? Verdict::Proved : Verdict::Indeterminate;

  // (c) L decreasing for x > 0 (needs g2(c) > 0), L(delta1) = K exactly
  const bool identity_c = crossing_residual_lower().is_zero();
  const bool d1_inside = d.delta1.positive() && d.delta1.hi() < c.lo();
  const bool l_decreasing = k2.positive();
  const bool c_numeric = l_at_d1.overlaps(k_const);
  r.hypotheses.push_back({"lower_crossing_identity", identity_c});
  r.hypotheses.push_back({"lower_crossing_numeric", c_numeric});
  r.hypotheses.push_back({"delta1_inside_interval", d1_inside});
  r.hypotheses.push_back({"lower_quadratic_decreasing", l_decreasing});
  const Verdict verdict_c =
      identity_c && d1_inside && l_decreasing && c_numeric ? Verdict::Proved : Verdict::Indeterminate;

  r.sub_claims.push_back({"a_quadratic_bounds", verdict_a});
  r.sub_claims.push_back({"b_upper_at_most_quarter", verdict_b});
  r.sub_claims.push_back({"c_lower_at_least_constant", verdict_c});
  r.verdict = overall(r);
  r.notes.push_back("(a) samples " + std::to_string(o.grid) + " interior points of (0, pi/2)");
  r.notes.push_back("(b), (c) hold with equality at delta2, delta1; verdicts are for the closed intervals");
  return r;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "Proved";
    case Verdict::ProvedNonStrictAtEndpoint: return "ProvedNonStrictAtEndpoint";
    case Verdict::Indeterminate: return "Indeterminate";
    case Verdict::Refuted: return "Refuted";
  }
  return "Indeterminate";
}

Verdict parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::Proved, Verdict::ProvedNonStrictAtEndpoint, Verdict::Indeterminate, Verdict::Refuted}) {
    if (to_string(v) == text) return v;
  }
  throw Error(ErrorKind::ParseError, "unknown verdict '" + std::string(text) + "'");
}

const Enclosure* CertificateReport::find(std::string_view name) const {
  for (const auto& e : enclosures) {
    if (e.name == name) return &e.value;
  }
  return nullptr;
}

const SubClaim* CertificateReport::sub_claim(std::string_view name) const {
  for (const auto& s : sub_claims) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool CertificateReport::all_hypotheses_passed() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.passed; });
}

CertifyOptions CertifyOptions::doubled() const {
  CertifyOptions d = *this;
  d.precision *= 2;
  d.truncation *= 2;
  return d;
}

CertificateReport verify_statement1(const PiAffine& c, const CertifyOptions& opts) {
  require_inside_pi(c.enclose(Precision(opts.precision + 32)), Precision(opts.precision + 32));
  return with_escalation(opts, [&](const CertifyOptions& o) { return statement1_once(c.enclose(guard(o)), c, o); });
}

CertificateReport verify_statement1(const Enclosure& c, const CertifyOptions& opts) {
  require_inside_pi(c, Precision(opts.precision + 32));
  return with_escalation(opts, [&](const CertifyOptions& o) { return statement1_once(c, std::nullopt, o); });
}

CertificateReport verify_ladder_chain(FunctionId id, const PiAffine& c, const std::vector<std::size_t>& orders,
                                      const CertifyOptions& opts) {
  require_inside_pi(c.enclose(guard(opts)), guard(opts));
  if (opts.grid < 1) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
  return with_escalation(opts, [&](const CertifyOptions& o) { return chain_once(id, c, orders, o); });
}

CertificateReport verify_theorem3_chain(const PiAffine& c, const std::vector<std::size_t>& orders,
                                        const CertifyOptions& opts) {
  return verify_ladder_chain(FunctionId::F, c, orders, opts);
}

MaxSearchResult remainder_max(FunctionId id, RemainderKind kind, std::size_t n, const std::optional<PiAffine>& b,
                              const PiAffine& left, const PiAffine& right, const Rational& tol,
                              const CertifyOptions& opts, int grid) {
  if (grid < 3) throw Error(ErrorKind::InvalidArgument, "grid must have at least 3 points");
  if (sgn(tol) <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const Precision p(opts.precision);
  const Precision q = guard(opts);
  const int bits = p.working_bits();
  const PaperFunction fn = build_function(id, opts.truncation);

  const Enclosure lo_end = left.enclose(q);
  const Enclosure hi_end = right.enclose(q);
  if (sgn(lo_end.lo()) < 0 || hi_end.hi() >= fn.domain_hi.enclose(q).lo()) {
    throw Error(ErrorKind::DomainViolation, "search interval must lie in [0, " + fn.domain_hi.to_string() + ")");
  }
  if (lo_end.hi() >= hi_end.lo()) throw Error(ErrorKind::InvalidArgument, "search interval is empty");

  std::optional<SecondTaylorPoly> prev;
  if (kind == RemainderKind::Second) {
    if (!b) throw Error(ErrorKind::InvalidArgument, "the second remainder needs an endpoint");
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "remainder index starts at 1");
    const Enclosure be = b->enclose(q);
    require_inside_pi(be, q);
    prev = second_taylor(fn.series, n - 1, be, p, closed_eval(id, be, p));
  }
  auto value = [&](const Enclosure& x) {
    if (prev) return abs(second_remainder_eval(fn.series, *prev, x, p));
    return abs(remainder_eval(fn.series, RemainderKind::First, n, std::nullopt, x, p));
  };

  MaxSearchResult result;
  const Rational a0 = lo_end.lo();
  const Rational b0 = hi_end.hi();
  std::vector<Enclosure> xs;
  for (int i = 0; i < grid; ++i) {
    if (i == 0) {
      xs.push_back(lo_end);
    } else if (i == grid - 1) {
      xs.push_back(hi_end);
    } else {
      xs.emplace_back(floor_to_bits(a0 + (b0 - a0) * Rational(i, grid - 1), bits));
    }
  }
  int best = 0;
  Enclosure best_value = value(xs[0]);
  for (int i = 1; i < grid; ++i) {
    Enclosure v = value(xs[static_cast<std::size_t>(i)]);
    if (v.mid() > best_value.mid()) {
      best = i;
      best_value = v;
    }
  }
  result.samples_used = grid;

  // golden-section refinement on the neighbouring cells
  Rational lo = best == 0 ? a0 : xs[static_cast<std::size_t>(best - 1)].lo();
  Rational hi = best == grid - 1 ? b0 : xs[static_cast<std::size_t>(best + 1)].hi();
  const Rational g(381966011, 1000000000);
  auto probe = [&](const Rational& x) { return floor_to_bits(x, bits); };
  Rational x1 = probe(lo + g * (hi - lo));
  Rational x2 = probe(hi - g * (hi - lo));
  Enclosure v1 = value(Enclosure(x1));
  Enclosure v2 = value(Enclosure(x2));
  while (hi - lo >= tol && result.refinement_depth < 400) {
    if (v1.mid() >= v2.mid()) {
      hi = x2;
      x2 = x1;
      v2 = v1;
      x1 = probe(lo + g * (hi - lo));
      v1 = value(Enclosure(x1));
    } else {
      lo = x1;
      x1 = x2;
      v1 = v2;
      x2 = probe(hi - g * (hi - lo));
      v2 = value(Enclosure(x2));
    }
    ++result.refinement_depth;
    result.samples_used += 1;
  }
  const Enclosure point_value = v1.mid() >= v2.mid() ? v1 : v2;
  const Enclosure bracket(std::max(lo, a0), std::min(hi, b0));
  const Enclosure bracket_value = value(bracket);
  result.argmax = bracket;
  result.max_value = Enclosure(point_value.lo(), std::max(point_value.hi(), bracket_value.hi()));
  return result;
}

DeltaConstants delta_constants(Precision p) {
  const Rational target = p.target_width();
  std::optional<DeltaConstants> last;
  int bits = p.budget() + 32;
  for (int attempt = 0; attempt <= 3; ++attempt, bits *= 2) {
    const Precision q(bits);
    const Enclosure pi = enc_pi(q);
    const Enclosure pi2 = square(pi);
    const Enclosure s2 = enc_sqrt(Enclosure(Rational(2)), q);
    const Enclosure s3 = enc_sqrt(Enclosure(Rational(3)), q);
    const Enclosure e8 = enc_exp(pi / Rational(8), q);
    const Enclosure e4 = square(e8);
    const Enclosure e2 = square(e4);

    const Enclosure rad2 = Rational(8) + Rational(8) * e2 - (pi2 + Rational(8) * s2) * e4;
    const Enclosure rad1_num = pi2 + Rational(16) * s2 - Rational(32);
    const Enclosure rad1_den = (s2 - Rational(4)) * e4 + e2 + Rational(1);
    if (!rad2.positive() || !rad1_num.positive() || !rad1_den.positive()) continue;

    DeltaConstants d{
        round_out(s2 * pi * e8 * enc_sqrt(rad1_num, q) / (Rational(8) * enc_sqrt(rad1_den, q)), q.working_bits()),
        round_out(Rational(4) * s3 / e8 / pi * enc_sqrt(rad2, q), q.working_bits()),
    };
    last = d;
    if (d.delta1.width() <= target && d.delta2.width() <= target) break;
  }
  if (!last) throw Error(ErrorKind::NegativeOperand, "radicand of a delta constant is not separated from 0");
  return *last;
}

CertificateReport verify_statement2_improvement(const CertifyOptions& opts) {
  return with_escalation(opts, [](const CertifyOptions& o) { return statement2_once(o); });
}

std::vector<ConstantRow> reproduce_constants(const CertifyOptions& opts) {
  const Precision p(opts.precision);
  const Precision q = guard(opts);
  const PiAffine half_pi{Rational(1, 2), 0};
  const Enclosure c = half_pi.enclose(q);
  std::vector<ConstantRow> rows;

  const PaperFunction f = build_f(opts.truncation);
  for (std::size_t k : {0u, 2u, 4u, 6u, 8u}) {
    static const char* quoted[] = {"3/8", "", "1/128", "", "7/5120", "", "461/3440640", "", "16841/1238630400"};
    const Rational& v = f.series.coeff(k);
    rows.push_back({"f coefficient x^" + std::to_string(k), Enclosure(v), quoted[k], v == parse_rational(quoted[k])});
  }

  const Enclosure pi = enc_pi(q);
  const Enclosure pi2 = square(pi);
  const Enclosure s2 = enc_sqrt(Enclosure(Rational(2)), q);
  const Enclosure e4 = enc_exp(pi / Rational(4), q);
  const Enclosure cosh_quarter = (e4 + Rational(1) / e4) / Rational(2);

  const Enclosure f_c = second_taylor(f.series, 0, c, p, closed_eval(FunctionId::F, c, p)).top_coeff;
  const Enclosure ref_f_c = Rational(4) / pi2;
  rows.push_back({"f(pi/2)", f_c, "4/pi^2", f_c.overlaps(ref_f_c)});

  const Enclosure tt2 = second_taylor(f.series, 2, c, p, closed_eval(FunctionId::F, c, p)).top_coeff;
  const Enclosure ref_tt2 = Rational(16) / square(pi2) - Rational(3, 2) / pi2;
  rows.push_back({"TT_2 top coefficient of f", tt2, "16/pi^4 - 3/(2 pi^2)", tt2.overlaps(ref_tt2)});

  const GFamily fam = build_g_family(opts.truncation);
  const Enclosure g1c = second_taylor(fam.g1.series, 0, c, p, closed_eval(FunctionId::G1, c, p)).top_coeff;
  const Enclosure ref_g1c = Rational(4) / pi2 * (cosh_quarter - s2 / Rational(2));
  rows.push_back({"g1(pi/2)", g1c, "4/pi^2 (cosh(pi/4) - sqrt2/2)", g1c.overlaps(ref_g1c)});

  const Enclosure g2c = second_taylor(fam.g2.series, 0, c, p, closed_eval(FunctionId::G2, c, p)).top_coeff;
  const Enclosure ref_g2c = Rational(4) / pi2 * (cosh_quarter + s2 / Rational(2) - Rational(2));
  rows.push_back({"g2(pi/2)", g2c, "4/pi^2 (cosh(pi/4) + sqrt2/2 - 2)", g2c.overlaps(ref_g2c)});

  const Enclosure k2 = second_taylor(fam.g2.series, 2, c, p, closed_eval(FunctionId::G2, c, p)).top_coeff;
  const Enclosure ref_k2 = Rational(16) / square(pi2) * (cosh_quarter + s2 / Rational(2) - Rational(2));
  rows.push_back({"g2(pi/2)/(pi/2)^2", k2, "16/pi^4 (cosh(pi/4) + sqrt2/2 - 2)", k2.overlaps(ref_k2)});

  // truncated decimal: the value meets [v, v + 10^-digits)
  auto truncated = [](const Enclosure& e, const std::string& printed, int digits) {
    const Rational v = parse_rational(printed);
    const Rational ulp = 1 / Rational(pow(Rational(10), static_cast<unsigned>(digits)));
    return e.hi() >= v && e.lo() < v + ulp;
  };
  const DeltaConstants d = delta_constants(p);
  rows.push_back({"delta1", d.delta1, "1.55456...", truncated(d.delta1, "1.55456", 5)});
  rows.push_back({"delta2", d.delta2, "0.22525...", truncated(d.delta2, "0.22525", 5)});

  // remainder maxima, tolerance 5e-5 absolute
  const Rational tol(1, 1000000);
  const Rational slack(5, 100000);
  auto within = [&](const Enclosure& e, const std::string& printed) {
    const Rational v = parse_rational(printed);
    return Enclosure(v - slack, v + slack).contains(e);
  };
  const MaxSearchResult r3 =
      remainder_max(FunctionId::F, RemainderKind::First, 3, std::nullopt, PiAffine{0, 0}, half_pi, tol, opts);
  rows.push_back({"max |R_3| on [0, pi/2]", r3.max_value, "0.01100...", within(r3.max_value, "0.01100")});
  rows.push_back({"argmax |R_3|", r3.argmax, "pi/2", r3.argmax.contains(c)});

  const MaxSearchResult rr3 =
      remainder_max(FunctionId::F, RemainderKind::Second, 3, half_pi, PiAffine{0, 0}, half_pi, tol, opts);
  rows.push_back({"max |RR_3| on [0, pi/2]", rr3.max_value, "0.00315...", within(rr3.max_value, "0.00315")});
  const Rational spot = parse_rational("1.14909");
  rows.push_back({"argmax |RR_3|", rr3.argmax, "1.14909...",
                  Enclosure(spot - Rational(1, 1000), spot + Rational(1, 1000)).contains(rr3.argmax)});
  return rows;
}

}  // namespace twin_taylor

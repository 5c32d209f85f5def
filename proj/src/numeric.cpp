#include "twin_taylor/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace twin_taylor {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidPrecision: return "InvalidPrecision";
    case ErrorKind::InvalidEnclosure: return "InvalidEnclosure";
    case ErrorKind::DivisionByIntervalContainingZero: return "DivisionByIntervalContainingZero";
    case ErrorKind::NegativeOperand: return "NegativeOperand";
    case ErrorKind::BasePointMismatch: return "BasePointMismatch";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::NonzeroLowOrderCoefficient: return "NonzeroLowOrderCoefficient";
    case ErrorKind::TailBoundUnavailable: return "TailBoundUnavailable";
    case ErrorKind::RatioConditionViolated: return "RatioConditionViolated";
    case ErrorKind::OrderExceedsTruncation: return "OrderExceedsTruncation";
    case ErrorKind::HypothesisNotCertified: return "HypothesisNotCertified";
    case ErrorKind::InternalCrossCheckMismatch: return "InternalCrossCheckMismatch";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Rational helpers

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

Integer pow10(unsigned n) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

Integer pow2(unsigned n) {
  Integer r = 1;
  r <<= n;
  return r;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty number");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw Error(ErrorKind::ParseError, "bad fraction '" + s + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    value = Rational(Integer(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw Error(ErrorKind::ParseError, "bad decimal '" + s + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    value = Rational(Integer(digits, 10), pow10(static_cast<unsigned>(frac.size())));
  } else {
    if (!all_digits(body)) throw Error(ErrorKind::ParseError, "bad integer '" + s + "'");
    value = Rational(Integer(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_decimal(const Rational& q, int digits) {
  Integer scale = pow10(static_cast<unsigned>(digits));
  Rational scaled = abs(q) * scale;
  // round half up on the magnitude
  Integer n = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = n.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sgn(q) < 0 && n != 0) s.insert(0, "-");
  return s;
}

std::string to_decimal_directed(const Rational& q, int digits, bool up) {
  const Integer scale = pow10(static_cast<unsigned>(digits));
  const Integer num = q.get_num() * scale;
  Integer n;
  if (up) {
    mpz_cdiv_q(n.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  } else {
    mpz_fdiv_q(n.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  }
  Rational exact(n, scale);
  exact.canonicalize();
  return to_decimal(exact, digits);
}

double to_double(const Rational& q) { return q.get_d(); }

Rational floor_to_bits(const Rational& q, int bits) {
  Integer scaled_num = q.get_num() << static_cast<mp_bitcnt_t>(bits);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
  Rational r(f, pow2(static_cast<unsigned>(bits)));
  r.canonicalize();
  return r;
}

Rational ceil_to_bits(const Rational& q, int bits) {
  Integer scaled_num = q.get_num() << static_cast<mp_bitcnt_t>(bits);
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
  Rational r(c, pow2(static_cast<unsigned>(bits)));
  r.canonicalize();
  return r;
}

std::size_t denominator_bits(const Rational& q) { return mpz_sizeinbase(q.get_den().get_mpz_t(), 2); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), exponent);
  return r;  // already canonical: powers of coprime integers stay coprime
}

// ---------------------------------------------------------------------------
// Precision

Precision::Precision(int budget) : budget_(budget) {
  if (budget < 8) throw Error(ErrorKind::InvalidPrecision, "budget must be >= 8, got " + std::to_string(budget));
}

Rational Precision::target_width() const { return Rational(1, pow2(static_cast<unsigned>(budget_))); }

// ---------------------------------------------------------------------------
// Enclosure arithmetic

Enclosure::Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) {
    throw Error(ErrorKind::InvalidEnclosure,
                "lo > hi: [" + to_fraction_string(lo_) + ", " + to_fraction_string(hi_) + "]");
  }
}

Rational Enclosure::magnitude() const {
  Rational a = abs(lo_);
  Rational b = abs(hi_);
  return a > b ? a : b;
}

Enclosure& Enclosure::operator+=(const Enclosure& b) {
  lo_ += b.lo_;
  hi_ += b.hi_;
  return *this;
}

Enclosure& Enclosure::operator-=(const Enclosure& b) {
  Rational new_lo = lo_ - b.hi_;
  hi_ -= b.lo_;
  lo_ = std::move(new_lo);
  return *this;
}

Enclosure& Enclosure::operator*=(const Enclosure& b) {
  if (sgn(lo_) >= 0 && sgn(b.lo_) >= 0) {
    lo_ *= b.lo_;
    hi_ *= b.hi_;
    return *this;
  }
  Rational p1 = lo_ * b.lo_;
  Rational p2 = lo_ * b.hi_;
  Rational p3 = hi_ * b.lo_;
  Rational p4 = hi_ * b.hi_;
  lo_ = std::min({p1, p2, p3, p4});
  hi_ = std::max({p1, p2, p3, p4});
  return *this;
}

Enclosure& Enclosure::operator/=(const Enclosure& b) {
  if (b.contains_zero()) {
    throw Error(ErrorKind::DivisionByIntervalContainingZero,
                "divisor [" + to_fraction_string(b.lo_) + ", " + to_fraction_string(b.hi_) + "] contains 0");
  }
  Enclosure reciprocal(1 / b.hi_, 1 / b.lo_);
  return *this *= reciprocal;
}

Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }
Enclosure operator*(Enclosure a, const Enclosure& b) { return a *= b; }
Enclosure operator/(Enclosure a, const Enclosure& b) { return a /= b; }

Enclosure abs(const Enclosure& a) {
  if (sgn(a.lo()) >= 0) return a;
  if (sgn(a.hi()) <= 0) return -a;
  return Enclosure(Rational(0), a.magnitude());
}

Enclosure pow(const Enclosure& a, int exponent) {
  if (exponent < 0) return Enclosure(Rational(1)) / pow(a, -exponent);
  if (exponent == 0) return Enclosure(Rational(1));
  auto e = static_cast<unsigned>(exponent);
  Rational plo = pow(a.lo(), e);
  Rational phi = pow(a.hi(), e);
  if (e % 2 == 1) return Enclosure(plo, phi);
  if (sgn(a.lo()) >= 0) return Enclosure(plo, phi);
  if (sgn(a.hi()) <= 0) return Enclosure(phi, plo);
  return Enclosure(Rational(0), std::max(plo, phi));
}

Enclosure square(const Enclosure& a) { return pow(a, 2); }

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

std::optional<Enclosure> intersect(const Enclosure& a, const Enclosure& b) {
  if (!a.overlaps(b)) return std::nullopt;
  return Enclosure(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Enclosure round_out(const Enclosure& a, int bits) {
  auto limit = static_cast<std::size_t>(bits);
  const bool round_lo = denominator_bits(a.lo()) > limit;
  const bool round_hi = denominator_bits(a.hi()) > limit;
  if (!round_lo && !round_hi) return a;
  return Enclosure(round_lo ? floor_to_bits(a.lo(), bits) : a.lo(),
                   round_hi ? ceil_to_bits(a.hi(), bits) : a.hi());
}

// ---------------------------------------------------------------------------
// Transcendental constants

namespace {

// atan(1/m) as an alternating series; consecutive partial sums bracket the
// limit because the terms decrease in magnitude.
Enclosure arctan_inverse(unsigned m, int bits) {
  const Rational threshold(1, pow2(static_cast<unsigned>(bits)));
  const Integer m_squared = Integer(m) * m;
  Integer power = m;  // m^(2k+1)
  Rational sum = 0;
  for (unsigned k = 0;; ++k) {
    Rational term(1, Integer(2 * k + 1) * power);
    term.canonicalize();
    Rational next_sum = (k % 2 == 0) ? Rational(sum + term) : Rational(sum - term);
    if (term < threshold) return Enclosure(std::min(sum, next_sum), std::max(sum, next_sum));
    sum = next_sum;
    power *= m_squared;
  }
}

// e^r for rational r >= 0. Halves the argument until it is <= 1/2, sums the
// series with a geometric tail bound, then squares back up.
Enclosure exp_nonnegative(const Rational& r, int bits) {
  if (sgn(r) == 0) return Enclosure(Rational(1));
  unsigned halvings = 0;
  Rational y = r;
  while (y > Rational(1, 2)) {
    y /= 2;
    ++halvings;
  }
  const int work = bits + static_cast<int>(halvings) + 8;
  const Rational threshold(1, pow2(static_cast<unsigned>(work)));
  Rational sum = 1;
  Rational term = 1;  // y^k / k!
  for (unsigned k = 1;; ++k) {
    term *= y;
    term /= k;
    // once k > 2y the remaining tail is at most twice the next term
    if (term < threshold && Rational(k) > 2 * y) break;
    sum += term;
  }
  Enclosure value = round_out(Enclosure(sum, sum + 2 * term), work);
  for (unsigned i = 0; i < halvings; ++i) value = round_out(square(value), work);
  return value;
}

Enclosure exp_point(const Rational& r, int bits) {
  if (sgn(r) >= 0) return exp_nonnegative(r, bits);
  Enclosure positive = exp_nonnegative(-r, bits + 8);
  return round_out(Enclosure(Rational(1)) / positive, bits + 8);
}

bool is_perfect_square(const Integer& n) { return mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// [floor, ceil] of sqrt(r) on the 2^-bits grid; exact for rational squares.
Enclosure sqrt_point(const Rational& r, int bits) {
  if (is_perfect_square(r.get_num()) && is_perfect_square(r.get_den())) {
    Rational s(isqrt(r.get_num()), isqrt(r.get_den()));
    return Enclosure(s);
  }
  // N = floor(r * 4^bits); s = isqrt(N) gives s <= sqrt(r)*2^bits < s + 1
  Integer scaled = (r.get_num() << static_cast<mp_bitcnt_t>(2 * bits)) / r.get_den();
  Integer s = isqrt(scaled);
  Integer den = pow2(static_cast<unsigned>(bits));
  Rational lo(s, den);
  Rational hi(s + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return Enclosure(lo, hi);
}

}  // namespace

Enclosure enc_pi(Precision p) {
  const int bits = p.budget() + 6;
  Enclosure a = arctan_inverse(5, bits);
  Enclosure b = arctan_inverse(239, bits);
  Enclosure pi = a * Rational(16) - b * Rational(4);
  return round_out(pi, p.budget() + 4);
}

Enclosure enc_exp(const Enclosure& x, Precision p) {
  const int bits = p.budget() + 16;
  Enclosure lo = exp_point(x.lo(), bits);
  Enclosure hi = x.is_point() ? lo : exp_point(x.hi(), bits);
  return round_out(Enclosure(lo.lo(), hi.hi()), bits);
}

Enclosure enc_sqrt(const Enclosure& x, Precision p) {
  if (sgn(x.lo()) < 0) {
    throw Error(ErrorKind::NegativeOperand, "sqrt of enclosure with lo = " + to_fraction_string(x.lo()));
  }
  const int bits = p.budget() + 8;
  Enclosure lo = sqrt_point(x.lo(), bits);
  Enclosure hi = x.is_point() ? lo : sqrt_point(x.hi(), bits);
  return Enclosure(lo.lo(), hi.hi());
}

Enclosure PiAffine::enclose(Precision p) const {
  if (pi_coeff == 0) return Enclosure(offset);
  // scale the pi budget so the product still meets the target width
  int extra = static_cast<int>(mpz_sizeinbase(Rational(abs(pi_coeff)).get_num().get_mpz_t(), 2)) + 2;
  Enclosure pi = enc_pi(Precision(p.budget() + extra));
  return pi * pi_coeff + offset;
}

std::string PiAffine::to_string() const {
  std::ostringstream out;
  if (pi_coeff != 0) {
    if (pi_coeff == -1) {
      out << "-";
    } else if (pi_coeff.get_num() != 1) {
      out << pi_coeff.get_num().get_str() << "*";
    }
    out << "pi";
    if (pi_coeff.get_den() != 1) out << "/" << pi_coeff.get_den().get_str();
  }
  if (offset != 0 || pi_coeff == 0) {
    if (pi_coeff != 0 && sgn(offset) > 0) out << "+";
    out << offset.get_str();
  }
  return out.str();
}

namespace {

// One summand: a rational, or [coef][*]pi[/den] with coef, den rational.
PiAffine parse_term(std::string_view term) {
  const auto at = term.find("pi");
  if (at == std::string_view::npos) return PiAffine{0, parse_rational(term)};
  std::string_view coef = term.substr(0, at);
  std::string_view rest = term.substr(at + 2);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  if (coef.find('*') != std::string_view::npos || coef.find("pi") != std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "bad pi term '" + std::string(term) + "'");
  }
  Rational q = coef.empty() ? Rational(1) : parse_rational(coef);
  if (!rest.empty()) {
    if (rest.front() != '/' || rest.size() < 2) throw Error(ErrorKind::ParseError, "bad pi term '" + std::string(term) + "'");
    const Rational den = parse_rational(rest.substr(1));
    if (sgn(den) == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(term) + "'");
    q /= den;
  }
  return PiAffine{q, 0};
}

}  // namespace

PiAffine parse_pi_affine(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty expression");
  PiAffine sum;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '*')) {
      std::string_view term(s.data() + start, i - start);
      bool negative = false;
      if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
        negative = term.front() == '-';
        term.remove_prefix(1);
      }
      if (term.empty()) throw Error(ErrorKind::ParseError, "dangling sign in '" + s + "'");
      PiAffine t = parse_term(term);
      if (negative) {
        t.pi_coeff = -t.pi_coeff;
        t.offset = -t.offset;
      }
      sum.pi_coeff += t.pi_coeff;
      sum.offset += t.offset;
      start = i;
    }
  }
  return sum;
}

}  // namespace twin_taylor

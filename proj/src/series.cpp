#include "twin_taylor/series.hpp"

#include <algorithm>

#include "series_internal.hpp"

namespace twin_taylor {

std::string_view to_string(TailClass tc) {
  switch (tc) {
    case TailClass::AlternatingFactorial: return "AlternatingFactorial";
    case TailClass::PositiveFactorial: return "PositiveFactorial";
    case TailClass::PositiveGeometric: return "PositiveGeometric";
    case TailClass::Polynomial: return "Polynomial";
    case TailClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

bool is_factorial(TailClass tc) {
  return tc == TailClass::AlternatingFactorial || tc == TailClass::PositiveFactorial;
}

bool is_positive(TailClass tc) {
  return tc == TailClass::PositiveFactorial || tc == TailClass::PositiveGeometric;
}

void require_same_base(const PowerSeries& a, const PowerSeries& b) {
  if (a.base_point() != b.base_point()) {
    throw Error(ErrorKind::BasePointMismatch,
                to_fraction_string(a.base_point()) + " vs " + to_fraction_string(b.base_point()));
  }
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Degree of the last nonzero coefficient, 0 for the zero series.
std::size_t effective_degree(const std::vector<Rational>& c) {
  for (std::size_t k = c.size(); k-- > 0;) {
    if (sgn(c[k]) != 0) return k;
  }
  return 0;
}

std::vector<Rational> resized(const std::vector<Rational>& c, std::size_t order) {
  std::vector<Rational> out(order + 1, Rational(0));
  std::copy_n(c.begin(), std::min(c.size(), order + 1), out.begin());
  return out;
}

}  // namespace

PowerSeries::PowerSeries(Rational base_point, std::vector<Rational> coeffs)
    : PowerSeries(std::move(base_point), std::move(coeffs), TailClass::Unknown, std::nullopt) {}

PowerSeries::PowerSeries(Rational base_point, std::vector<Rational> coeffs, TailClass tc,
                         std::optional<TailMajorant> m)
    : base_point_(std::move(base_point)), coeffs_(std::move(coeffs)), tail_class_(tc), majorant_(std::move(m)) {
  if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "power series needs at least one coefficient");
  if ((tc == TailClass::Polynomial || tc == TailClass::Unknown) && majorant_) majorant_.reset();
  if (tc != TailClass::Polynomial && tc != TailClass::Unknown && !majorant_) {
    throw Error(ErrorKind::InvalidArgument, "certified tail class requires a majorant");
  }
}

PowerSeries PowerSeries::polynomial(Rational base_point, std::vector<Rational> coeffs) {
  return PowerSeries(std::move(base_point), std::move(coeffs), TailClass::Polynomial, std::nullopt);
}

bool PowerSeries::tail_nonnegative() const {
  if (tail_class_ == TailClass::Polynomial) return true;
  return is_positive(tail_class_) && majorant_ && majorant_->from <= order() + 1;
}

PowerSeries with_tail(PowerSeries s, TailClass tc, std::optional<TailMajorant> m) {
  return PowerSeries(std::move(s.base_point_), std::move(s.coeffs_), tc, std::move(m));
}

// ---------------------------------------------------------------------------

PowerSeries std_series(StdKind kind, std::size_t order) {
  std::vector<Rational> c(order + 1, Rational(0));
  TailClass tc = TailClass::PositiveFactorial;
  Integer fact = 1;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(k);
    Rational inv(Integer(1), fact);
    switch (kind) {
      case StdKind::Cos:
        if (k % 2 == 0) c[k] = (k / 2 % 2 == 0) ? inv : Rational(-inv);
        break;
      case StdKind::Sin:
        if (k % 2 == 1) c[k] = ((k - 1) / 2 % 2 == 0) ? inv : Rational(-inv);
        break;
      case StdKind::Cosh:
        if (k % 2 == 0) c[k] = inv;
        break;
      case StdKind::Sinh:
        if (k % 2 == 1) c[k] = inv;
        break;
      case StdKind::Exp:
        c[k] = inv;
        break;
      case StdKind::One:
        if (k == 0) c[k] = 1;
        break;
      case StdKind::X:
        if (k == 1) c[k] = 1;
        break;
    }
  }
  switch (kind) {
    case StdKind::Cos:
    case StdKind::Sin: tc = TailClass::AlternatingFactorial; break;
    case StdKind::One:
    case StdKind::X: return PowerSeries::polynomial(0, std::move(c));
    default: break;
  }
  // |c_k| <= 1/k! for every k
  return with_tail(PowerSeries(0, std::move(c)), tc, TailMajorant{1, 1, 0});
}

// ---------------------------------------------------------------------------
// Arithmetic

namespace {

enum class Combine { Add, Sub };

PowerSeries combine(const PowerSeries& a, const PowerSeries& b, Combine op) {
  require_same_base(a, b);
  const bool a_poly = a.tail_class() == TailClass::Polynomial;
  const bool b_poly = b.tail_class() == TailClass::Polynomial;

  std::size_t order;
  if (a_poly && b_poly) {
    order = std::max(a.order(), b.order());
  } else if (a_poly) {
    order = b.order();
  } else if (b_poly) {
    order = a.order();
  } else {
    order = std::min(a.order(), b.order());
  }

  auto ca = resized(a.coeffs(), order);
  auto cb = resized(b.coeffs(), order);
  for (std::size_t k = 0; k <= order; ++k) {
    if (op == Combine::Add) {
      ca[k] += cb[k];
    } else {
      ca[k] -= cb[k];
    }
  }
  PowerSeries result(a.base_point(), std::move(ca));

  if (a_poly && b_poly) return with_tail(std::move(result), TailClass::Polynomial, std::nullopt);
  if (op == Combine::Sub) return result;

  // polynomial + certified series keeps the series' tail as long as the
  // polynomial fits inside the result order
  if (a_poly || b_poly) {
    const PowerSeries& poly = a_poly ? a : b;
    const PowerSeries& other = a_poly ? b : a;
    if (effective_degree(poly.coeffs()) > order || other.tail_class() == TailClass::Unknown) return result;
    if (other.tail_class() == TailClass::Polynomial) return result;
    return with_tail(std::move(result), other.tail_class(), other.majorant());
  }

  if (a.tail_class() == b.tail_class() && is_positive(a.tail_class())) {
    const auto& ma = *a.majorant();
    const auto& mb = *b.majorant();
    TailMajorant m{ma.scale + mb.scale, std::max(ma.rate, mb.rate), std::max(ma.from, mb.from)};
    return with_tail(std::move(result), a.tail_class(), m);
  }
  return result;
}

}  // namespace

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return combine(a, b, Combine::Add); }
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return combine(a, b, Combine::Sub); }

PowerSeries operator*(const Rational& s, const PowerSeries& a) {
  std::vector<Rational> c = a.coeffs();
  for (auto& v : c) v *= s;
  PowerSeries result(a.base_point(), std::move(c));
  if (sgn(s) == 0 || a.tail_class() == TailClass::Polynomial) {
    return with_tail(std::move(result), TailClass::Polynomial, std::nullopt);
  }
  if (a.tail_class() == TailClass::Unknown) return result;
  if (is_positive(a.tail_class()) && sgn(s) < 0) return result;
  TailMajorant m = *a.majorant();
  m.scale *= abs(s);
  return with_tail(std::move(result), a.tail_class(), m);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  require_same_base(a, b);
  const bool both_poly = a.tail_class() == TailClass::Polynomial && b.tail_class() == TailClass::Polynomial;
  const std::size_t order = both_poly ? a.order() + b.order() : std::min(a.order(), b.order());
  std::vector<Rational> c(order + 1, Rational(0));
  for (std::size_t i = 0; i <= std::min(order, a.order()); ++i) {
    if (sgn(a.coeff(i)) == 0) continue;
    for (std::size_t j = 0; j <= std::min(order - i, b.order()); ++j) {
      c[i + j] += a.coeff(i) * b.coeff(j);
    }
  }
  PowerSeries result(a.base_point(), std::move(c));
  if (both_poly) return with_tail(std::move(result), TailClass::Polynomial, std::nullopt);
  return result;
}

PowerSeries series_reciprocal(const PowerSeries& a) {
  if (sgn(a.coeff(0)) == 0) throw Error(ErrorKind::ZeroConstantTerm, "reciprocal needs c_0 != 0");
  const std::size_t n_max = a.order();
  const Rational inv0 = 1 / a.coeff(0);
  std::vector<Rational> b(n_max + 1, Rational(0));
  b[0] = inv0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (sgn(a.coeff(j)) != 0) acc += a.coeff(j) * b[n - j];
    }
    b[n] = -inv0 * acc;
  }
  PowerSeries result(a.base_point(), std::move(b));
  if (a.tail_class() == TailClass::Polynomial && effective_degree(a.coeffs()) == 0) {
    return with_tail(std::move(result), TailClass::Polynomial, std::nullopt);
  }
  return result;
}

PowerSeries scale_argument(const PowerSeries& a, const Rational& lambda) {
  std::vector<Rational> c = a.coeffs();
  Rational power = 1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= power;
    power *= lambda;
  }
  PowerSeries result(a.base_point(), std::move(c));
  if (a.tail_class() == TailClass::Polynomial || sgn(lambda) == 0) {
    return with_tail(std::move(result), TailClass::Polynomial, std::nullopt);
  }
  if (a.tail_class() == TailClass::Unknown) return result;
  if (is_positive(a.tail_class()) && sgn(lambda) < 0) return result;
  TailMajorant m = *a.majorant();
  m.rate *= abs(lambda);
  return with_tail(std::move(result), a.tail_class(), m);
}

PowerSeries drop_leading(const PowerSeries& a, std::size_t m) {
  if (m == 0) return a;
  if (m > a.order()) {
    if (a.tail_class() == TailClass::Polynomial) {
      return PowerSeries::polynomial(a.base_point(), {Rational(0)});
    }
    throw Error(ErrorKind::OrderExceedsTruncation,
                "cannot drop " + std::to_string(m) + " terms from order " + std::to_string(a.order()));
  }
  std::vector<Rational> c(a.coeffs().begin() + static_cast<std::ptrdiff_t>(m), a.coeffs().end());
  PowerSeries result(a.base_point(), std::move(c));
  if (a.tail_class() == TailClass::Polynomial) return with_tail(std::move(result), TailClass::Polynomial, std::nullopt);
  if (a.tail_class() == TailClass::Unknown) return result;
  // factorial:  |c_{k+m}| <= M r^{k+m} / (k+m)! <= (M r^m) r^k / k!
  // geometric:  |c_{k+m}| <= M r^{k+m}          =  (M r^m) r^k
  TailMajorant maj = *a.majorant();
  maj.scale *= pow(maj.rate, static_cast<unsigned>(m));
  maj.from = maj.from > m ? maj.from - m : 0;
  return with_tail(std::move(result), a.tail_class(), maj);
}

PowerSeries divide_by_power(const PowerSeries& a, std::size_t m) {
  for (std::size_t k = 0; k < m && k <= a.order(); ++k) {
    if (sgn(a.coeff(k)) != 0) {
      throw Error(ErrorKind::NonzeroLowOrderCoefficient,
                  "coefficient " + std::to_string(k) + " is " + to_fraction_string(a.coeff(k)));
    }
  }
  return drop_leading(a, m);
}

PowerSeries truncate(const PowerSeries& a, std::size_t order) {
  if (order > a.order()) {
    if (a.tail_class() == TailClass::Polynomial) {
      return PowerSeries::polynomial(a.base_point(), resized(a.coeffs(), order));
    }
    throw Error(ErrorKind::OrderExceedsTruncation,
                "order " + std::to_string(order) + " exceeds " + std::to_string(a.order()));
  }
  PowerSeries result(a.base_point(), resized(a.coeffs(), order));
  if (a.tail_class() == TailClass::Unknown) return result;
  if (a.tail_class() == TailClass::Polynomial) {
    if (effective_degree(a.coeffs()) <= order) return with_tail(std::move(result), TailClass::Polynomial, std::nullopt);
    return result;
  }
  if (a.majorant()->from > order + 1) return result;
  return with_tail(std::move(result), a.tail_class(), a.majorant());
}

bool is_zero(const PowerSeries& a) {
  return std::all_of(a.coeffs().begin(), a.coeffs().end(), [](const Rational& c) { return sgn(c) == 0; });
}

EulerTable euler_numbers(std::size_t m) {
  PowerSeries sec = series_reciprocal(std_series(StdKind::Cos, 2 * m));
  EulerTable table;
  table.values.reserve(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    Rational scaled = sec.coeff(2 * k) * factorial(2 * k);
    if (scaled.get_den() != 1 || sgn(scaled) <= 0) {
      throw Error(ErrorKind::InternalCrossCheckMismatch,
                  "(2k)! * sec coefficient is not a positive integer at k = " + std::to_string(k));
    }
    table.values.push_back(scaled.get_num());
  }
  return table;
}

// ---------------------------------------------------------------------------
// Evaluation

Rational tail_bound(const PowerSeries& a, const Rational& t_max) {
  const TailClass tc = a.tail_class();
  if (tc == TailClass::Polynomial) return 0;
  if (tc == TailClass::Unknown) throw Error(ErrorKind::TailBoundUnavailable, "series tail is not certified");
  const TailMajorant& m = *a.majorant();
  const std::size_t n = a.order();
  if (m.from > n + 1) {
    throw Error(ErrorKind::TailBoundUnavailable,
                "majorant starts at " + std::to_string(m.from) + ", beyond order " + std::to_string(n));
  }
  // rounding t_max up keeps the bound valid and the rationals small
  const Rational u = m.rate * ceil_to_bits(abs(t_max), 64);
  if (is_factorial(tc)) {
    const Rational limit(static_cast<unsigned long>(n + 2));
    if (u >= limit) {
      throw Error(ErrorKind::RatioConditionViolated,
                  "r|x| = " + to_decimal(u, 6) + " must stay below order + 2 = " + limit.get_str());
    }
    // sum_{k>n} M u^k / k! <= M u^{n+1}/(n+1)! * 1/(1 - u/(n+2))
    Rational first = m.scale * pow(u, static_cast<unsigned>(n + 1)) / Rational(factorial(n + 1));
    return first / (1 - u / limit);
  }
  if (u >= 1) {
    throw Error(ErrorKind::RatioConditionViolated, "r|x| = " + to_decimal(u, 6) + " must stay below 1");
  }
  return m.scale * pow(u, static_cast<unsigned>(n + 1)) / (1 - u);
}

namespace {

Enclosure horner(const std::vector<Rational>& c, const Enclosure& t, int bits) {
  const int step_bits = bits + horner_guard_bits(t, c.size());
  Enclosure acc(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc = round_out(acc * t + c[k], step_bits);
  }
  return round_out(acc, bits);
}

}  // namespace

Enclosure eval_truncated(const PowerSeries& a, const Enclosure& x, Precision p) {
  return horner(a.coeffs(), x - a.base_point(), p.working_bits());
}

Enclosure eval_with_tail(const PowerSeries& a, const Enclosure& x, Precision p) {
  const int bits = p.working_bits();
  const Enclosure t = x - a.base_point();
  const Rational bound = ceil_to_bits(tail_bound(a, t.magnitude()), bits);
  Enclosure sum = horner(a.coeffs(), t, bits);
  if (sgn(bound) == 0) return sum;
  const bool nonnegative_tail = a.tail_nonnegative() && sgn(t.lo()) >= 0;
  Enclosure tail(nonnegative_tail ? Rational(0) : Rational(-bound), bound);
  return round_out(sum + tail, bits);
}

Enclosure eval_elementary(StdKind kind, const Enclosure& x, Precision p) {
  if (kind == StdKind::One || kind == StdKind::X) return eval_with_tail(std_series(kind, 1), x, p);
  const Rational target(1, Integer(1) << static_cast<mp_bitcnt_t>(p.budget() + 8));
  const Rational magnitude = x.magnitude();
  std::size_t order = 8;
  for (;;) {
    PowerSeries s = std_series(kind, order);
    if (magnitude < Rational(static_cast<unsigned long>(order + 2)) && tail_bound(s, magnitude) <= target) {
      return eval_with_tail(s, x, p);
    }
    order *= 2;
    if (order > 100000) throw Error(ErrorKind::RatioConditionViolated, "argument too large for series evaluation");
  }
}

}  // namespace twin_taylor

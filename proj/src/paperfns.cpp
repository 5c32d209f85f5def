#include "twin_taylor/paperfns.hpp"

#include "series_internal.hpp"

namespace twin_taylor {

namespace {

const Rational kHalf(1, 2);

PowerSeries half_arg(StdKind kind, std::size_t order) { return scale_argument(std_series(kind, order), kHalf); }

PowerSeries one(std::size_t order) { return std_series(StdKind::One, order); }

// (cosh(x/2) - cos(x/2)) / x^2 through x^order
PowerSeries raw_g1(std::size_t order) {
  return divide_by_power(half_arg(StdKind::Cosh, order + 2) - half_arg(StdKind::Cos, order + 2), 2);
}

// (cosh(x/2) + cos(x/2) - 2) / x^2
PowerSeries raw_g2(std::size_t order) {
  const std::size_t m = order + 2;
  return divide_by_power(half_arg(StdKind::Cosh, m) + half_arg(StdKind::Cos, m) - Rational(2) * one(m), 2);
}

// (2 - 2 cos(x/2)) / x^2, the direct form of g
PowerSeries raw_g(std::size_t order) {
  const std::size_t m = order + 2;
  return divide_by_power(Rational(2) * one(m) - Rational(2) * half_arg(StdKind::Cos, m), 2);
}

void require_majorant(const PowerSeries& s, const TailMajorant& m, bool factorial, std::string_view name) {
  for (std::size_t k = m.from; k <= s.order(); ++k) {
    Rational bound = m.scale * pow(m.rate, static_cast<unsigned>(k));
    if (factorial) {
      Integer fact;
      mpz_fac_ui(fact.get_mpz_t(), k);
      bound /= fact;
    }
    if (abs(s.coeff(k)) > bound) {
      throw Error(ErrorKind::InternalCrossCheckMismatch,
                  std::string(name) + " coefficient " + std::to_string(k) + " exceeds its majorant");
    }
  }
}

void require_nonnegative(const PowerSeries& s, std::string_view name) {
  for (std::size_t k = 0; k <= s.order(); ++k) {
    if (sgn(s.coeff(k)) < 0) {
      throw Error(ErrorKind::InternalCrossCheckMismatch,
                  std::string(name) + " coefficient " + std::to_string(k) + " is negative");
    }
  }
}

void require_equal(const PowerSeries& a, const PowerSeries& b, std::string_view what) {
  if (a.coeffs() != b.coeffs()) {
    for (std::size_t k = 0; k <= std::min(a.order(), b.order()); ++k) {
      if (a.coeff(k) != b.coeff(k)) {
        throw Error(ErrorKind::InternalCrossCheckMismatch,
                    std::string(what) + " disagree at degree " + std::to_string(k) + ": " +
                        to_fraction_string(a.coeff(k)) + " vs " + to_fraction_string(b.coeff(k)));
      }
    }
    throw Error(ErrorKind::InternalCrossCheckMismatch, std::string(what) + " differ in length");
  }
}

// |E_2k| / (2k)! <= 2 (2/pi)^(2k+1), so c_j <= (4/pi^3 + 1/4) pi^-j <= (1/2) (10000/31415)^j.
const TailMajorant kFMajorant{Rational(1, 2), Rational(10000, 31415), 0};
// 1 / (2^(j+1) (j+2)!) <= (1/2) (1/2)^j / j!
const TailMajorant kGMajorant{Rational(1, 2), Rational(1, 2), 0};

PiAffine checked_beta(const std::optional<PiAffine>& beta) {
  const PiAffine pi{1, 0};
  if (!beta || *beta == pi) return pi;
  const Precision p(64);
  const Enclosure b = beta->enclose(p);
  if (!b.positive() || b.hi() >= enc_pi(p).lo()) {
    throw Error(ErrorKind::DomainViolation, "beta must lie in (0, pi], got " + beta->to_string());
  }
  return *beta;
}

Precision inner_precision(const Enclosure& x, Precision p) {
  // dividing by x^2 after a cancellation of order x^2 costs about 2 log2(1/x) bits
  Integer inv(Rational(1 / x.lo()));
  inv += 1;
  int extra = 2 * static_cast<int>(mpz_sizeinbase(inv.get_mpz_t(), 2));
  return Precision(p.budget() + 32 + extra);
}

}  // namespace

std::string_view to_string(FunctionId id) {
  switch (id) {
    case FunctionId::F: return "f";
    case FunctionId::G: return "g";
    case FunctionId::G1: return "g1";
    case FunctionId::G2: return "g2";
  }
  return "f";
}

FunctionId parse_function_id(std::string_view name) {
  if (name == "f") return FunctionId::F;
  if (name == "g") return FunctionId::G;
  if (name == "g1") return FunctionId::G1;
  if (name == "g2") return FunctionId::G2;
  throw Error(ErrorKind::InvalidArgument, "unknown function '" + std::string(name) + "'");
}

PaperFunction build_f(std::size_t order) {
  if (order < 2 || order % 2 != 0) throw Error(ErrorKind::InvalidArgument, "order for f must be even and >= 2");

  // (i) Euler numbers
  const std::size_t kmax = order / 2 + 1;
  const EulerTable euler = euler_numbers(kmax);
  std::vector<Rational> coeffs(order + 1, Rational(0));
  for (std::size_t k = 1; k <= kmax; ++k) {
    const Integer sign_term = k % 2 == 0 ? Integer(-2) : Integer(2);
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), 2 * k);
    Rational c(euler.values[k] + sign_term, (Integer(1) << static_cast<mp_bitcnt_t>(2 * k)) * fact);
    c.canonicalize();
    coeffs[2 * k - 2] = c;
  }
  PowerSeries from_euler(0, coeffs);

  // (ii) 1 + sec(x/2) - 2 cos(x/2), divided by x^2
  const PowerSeries cos_half = half_arg(StdKind::Cos, order + 2);
  const PowerSeries from_series =
      divide_by_power(one(order + 2) + series_reciprocal(cos_half) - Rational(2) * cos_half, 2);

  require_equal(from_euler, from_series, "Euler-number and secant constructions of f");
  require_nonnegative(from_euler, "f");
  require_majorant(from_euler, kFMajorant, false, "f");

  return PaperFunction{FunctionId::F, with_tail(from_euler, TailClass::PositiveGeometric, kFMajorant), PiAffine{1, 0},
                       Rational(3, 8)};
}

GFamily build_g_family(std::size_t order, const std::optional<PiAffine>& beta) {
  if (order < 4 || order % 4 != 0) throw Error(ErrorKind::InvalidArgument, "order for the g family must be a multiple of 4");
  const PiAffine hi = checked_beta(beta);

  PowerSeries g1 = raw_g1(order);
  PowerSeries g2 = raw_g2(order);
  PowerSeries split = g1 - g2;
  require_equal(split, raw_g(order), "g1 - g2 and (2 - 2cos(x/2))/x^2");
  require_nonnegative(g1, "g1");
  require_nonnegative(g2, "g2");
  require_majorant(g1, kGMajorant, true, "g1");
  require_majorant(g2, kGMajorant, true, "g2");
  require_majorant(split, kGMajorant, true, "g");

  return GFamily{
      PaperFunction{FunctionId::G, with_tail(split, TailClass::AlternatingFactorial, kGMajorant), hi, Rational(1, 4)},
      PaperFunction{FunctionId::G1, with_tail(g1, TailClass::PositiveFactorial, kGMajorant), hi, Rational(1, 4)},
      PaperFunction{FunctionId::G2, with_tail(g2, TailClass::PositiveFactorial, kGMajorant), hi, Rational(0)},
  };
}

PaperFunction build_function(FunctionId id, std::size_t order, const std::optional<PiAffine>& beta) {
  if (id == FunctionId::F) return build_f(order);
  GFamily fam = build_g_family(order, beta);
  switch (id) {
    case FunctionId::G: return fam.g;
    case FunctionId::G1: return fam.g1;
    default: return fam.g2;
  }
}

Enclosure closed_eval(FunctionId id, const Enclosure& x, Precision p) {
  if (!x.positive()) throw Error(ErrorKind::DomainViolation, "closed form needs x > 0");
  const Precision q = inner_precision(x, p);
  if (x.hi() >= enc_pi(q).lo()) throw Error(ErrorKind::DomainViolation, "closed form needs x < pi");

  const Enclosure half = x * kHalf;
  const Enclosure x2 = square(x);
  Enclosure value;
  switch (id) {
    case FunctionId::F: {
      const Enclosure ch = eval_elementary(StdKind::Cos, half, q);
      if (!ch.positive()) throw Error(ErrorKind::PoleProximity, "cos(x/2) is not separated from 0");
      value = (1 - eval_elementary(StdKind::Cos, x, q) / ch) / x2;
      break;
    }
    case FunctionId::G: {
      const Enclosure sh = eval_elementary(StdKind::Sin, half, q);
      if (!sh.positive()) throw Error(ErrorKind::PoleProximity, "sin(x/2) is not separated from 0");
      value = (2 - eval_elementary(StdKind::Sin, x, q) / sh) / x2;
      break;
    }
    case FunctionId::G1:
      value = (eval_elementary(StdKind::Cosh, half, q) - eval_elementary(StdKind::Cos, half, q)) / x2;
      break;
    case FunctionId::G2:
      value = (eval_elementary(StdKind::Cosh, half, q) + eval_elementary(StdKind::Cos, half, q) - Rational(2)) / x2;
      break;
  }
  return round_out(value, p.working_bits());
}

std::string_view to_string(IdentityId id) {
  switch (id) {
    case IdentityId::SecIdentity: return "sec_identity";
    case IdentityId::SinRatioIdentity: return "sin_ratio_identity";
    case IdentityId::Splitting: return "splitting";
  }
  return "sec_identity";
}

PowerSeries identity_check(IdentityId id, std::size_t order) {
  switch (id) {
    case IdentityId::SecIdentity: {
      const PowerSeries c = half_arg(StdKind::Cos, order);
      const PowerSeries lhs = c * (one(order) + series_reciprocal(c) - Rational(2) * c);
      return lhs - (c - std_series(StdKind::Cos, order));
    }
    case IdentityId::SinRatioIdentity:
      return std_series(StdKind::Sin, order) -
             Rational(2) * (half_arg(StdKind::Cos, order) * half_arg(StdKind::Sin, order));
    case IdentityId::Splitting: {
      const std::size_t m = order + 3;
      const PowerSeries sin_over_x = divide_by_power(std_series(StdKind::Sin, m), 1);
      const PowerSeries sin_half_over_x = divide_by_power(half_arg(StdKind::Sin, m), 1);
      const PowerSeries ratio = sin_over_x * series_reciprocal(sin_half_over_x);
      const PowerSeries lhs = divide_by_power(Rational(2) * one(m - 1) - ratio, 2);
      return lhs - (raw_g1(order) - raw_g2(order));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown identity");
}

}  // namespace twin_taylor

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "twin_taylor/paperfns.hpp"
#include "twin_taylor/taylor.hpp"

using namespace twin_taylor;

namespace {

Rational q(const Integer& n, const Integer& d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Enclosure half_pi(int budget) { return enc_pi(Precision(budget)) / Rational(2); }

}  // namespace

TEST(BuildF, PublishedCoefficients) {
  const PaperFunction f = build_f(16);
  EXPECT_EQ(f.series.coeff(0), q(3, 8));
  EXPECT_EQ(f.series.coeff(2), q(1, 128));
  EXPECT_EQ(f.series.coeff(4), q(7, 5120));
  EXPECT_EQ(f.series.coeff(6), q(461, 3440640));
  EXPECT_EQ(f.series.coeff(8), q(16841, 1238630400));
  // next term from an independent sympy expansion
  EXPECT_EQ(f.series.coeff(10), q(42901, 31142707200));
  EXPECT_EQ(f.value_at_zero, f.series.coeff(0));
}

TEST(BuildF, OddCoefficientsVanishEvenArePositive) {
  const PaperFunction f = build_f(40);
  for (std::size_t k = 0; k <= 40; ++k) {
    if (k % 2 == 1) {
      EXPECT_EQ(f.series.coeff(k), 0) << k;
    } else {
      EXPECT_GT(f.series.coeff(k), 0) << k;
    }
  }
  EXPECT_EQ(f.series.tail_class(), TailClass::PositiveGeometric);
  EXPECT_TRUE(f.domain_hi.equals(1, 0));
}

TEST(BuildF, EulerFormulaAgreesWithRecurrenceOracle) {
  // c_{2k-2} rebuilt from the test-side Euler recurrence
  const PaperFunction f = build_f(30);
  const auto e = oracle::euler_by_recurrence(16);
  for (std::size_t k = 1; k <= 16; ++k) {
    Integer sign_term = k % 2 == 0 ? Integer(-2) : Integer(2);
    Rational expected = q(e[k] + sign_term, (Integer(1) << static_cast<mp_bitcnt_t>(2 * k)) * oracle::factorial(2 * k));
    EXPECT_EQ(f.series.coeff(2 * k - 2), expected) << k;
  }
}

TEST(BuildF, RejectsBadOrders) {
  EXPECT_THROW(build_f(7), Error);
  EXPECT_THROW(build_f(0), Error);
}

TEST(BuildGFamily, AnchorsAndGeneralTerms) {
  const GFamily fam = build_g_family(32);
  EXPECT_EQ(fam.g1.series.coeff(0), q(1, 4));
  EXPECT_EQ(fam.g2.series.coeff(0), 0);
  EXPECT_EQ(fam.g2.series.coeff(1), 0);
  EXPECT_EQ(fam.g2.series.coeff(2), q(1, 192));
  EXPECT_EQ(fam.g.series.coeff(0), q(1, 4));
  EXPECT_EQ(fam.g.series.coeff(2), q(-1, 192));
  EXPECT_EQ(fam.g1.value_at_zero, q(1, 4));
  EXPECT_EQ(fam.g2.value_at_zero, 0);
  // sympy: g1 = 1/4 + x^4/23040 + x^8/1857945600, g2 = x^2/192 + x^6/5160960
  EXPECT_EQ(fam.g1.series.coeff(4), q(1, 23040));
  EXPECT_EQ(fam.g1.series.coeff(8), q(1, 1857945600));
  EXPECT_EQ(fam.g2.series.coeff(6), q(1, 5160960));
  // x^{4k} / (2^{4k+1} (4k+2)!) and x^{4k+2} / (2^{4k+3} (4k+4)!)
  for (std::size_t k = 0; 4 * k + 2 <= 32; ++k) {
    EXPECT_EQ(fam.g1.series.coeff(4 * k),
              q(1, (Integer(1) << static_cast<mp_bitcnt_t>(4 * k + 1)) * oracle::factorial(4 * k + 2)));
    EXPECT_EQ(fam.g2.series.coeff(4 * k + 2),
              q(1, (Integer(1) << static_cast<mp_bitcnt_t>(4 * k + 3)) * oracle::factorial(4 * k + 4)));
    EXPECT_EQ(fam.g1.series.coeff(4 * k + 2), 0);
    EXPECT_EQ(fam.g2.series.coeff(4 * k), 0);
  }
}

TEST(BuildGFamily, TailClassesAndHypothesis) {
  const GFamily fam = build_g_family(64);
  EXPECT_EQ(fam.g1.series.tail_class(), TailClass::PositiveFactorial);
  EXPECT_EQ(fam.g2.series.tail_class(), TailClass::PositiveFactorial);
  EXPECT_EQ(fam.g.series.tail_class(), TailClass::AlternatingFactorial);
  EXPECT_EQ(check_theorem2_hypothesis(build_f(64).series).status, HypothesisStatus::Certified);
  EXPECT_EQ(check_theorem2_hypothesis(fam.g1.series).status, HypothesisStatus::Certified);
  EXPECT_EQ(check_theorem2_hypothesis(fam.g2.series).status, HypothesisStatus::Certified);
  const auto g = check_theorem2_hypothesis(fam.g.series);
  EXPECT_EQ(g.status, HypothesisStatus::Fails);
  EXPECT_EQ(g.index, 2u);
}

TEST(BuildGFamily, RejectsBadOrdersAndBeta) {
  EXPECT_THROW(build_g_family(6), Error);
  EXPECT_THROW(build_g_family(0), Error);
  EXPECT_THROW(build_g_family(8, PiAffine{2, 0}), Error);
  EXPECT_THROW(build_g_family(8, PiAffine{0, -1}), Error);
  EXPECT_TRUE(build_g_family(8, PiAffine{Rational(3, 4), 0}).g1.domain_hi.equals(Rational(3, 4), 0));
  EXPECT_TRUE(build_g_family(8).g.domain_hi.equals(1, 0));
}

TEST(ClosedEval, ReferenceValues) {
  const Precision p(96);
  const Enclosure c = half_pi(160);
  EXPECT_TRUE(oracle::brackets(closed_eval(FunctionId::F, c, p), oracle::kFourOverPiSq));
  EXPECT_TRUE(oracle::brackets(closed_eval(FunctionId::G1, c, p), oracle::kG1AtPiOver2));
  EXPECT_TRUE(oracle::brackets(closed_eval(FunctionId::G2, c, p), oracle::kG2AtPiOver2));
  EXPECT_TRUE(oracle::brackets(closed_eval(FunctionId::F, enc_pi(Precision(160)) / Rational(3), p), oracle::kFAtPiOver3));
  // g = g1 - g2 at the same point
  EXPECT_TRUE(closed_eval(FunctionId::G, c, p)
                  .overlaps(closed_eval(FunctionId::G1, c, p) - closed_eval(FunctionId::G2, c, p)));
  EXPECT_LT(closed_eval(FunctionId::F, c, p).width(), oracle::pow10_inv(25));
}

TEST(ClosedEval, DomainErrors) {
  const Precision p(32);
  auto kind = [&](const Enclosure& x) {
    try {
      (void)closed_eval(FunctionId::F, x, p);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind(Enclosure(Rational(0))), ErrorKind::DomainViolation);
  EXPECT_EQ(kind(Enclosure(Rational(-1), Rational(1))), ErrorKind::DomainViolation);
  EXPECT_EQ(kind(enc_pi(Precision(64))), ErrorKind::DomainViolation);
  EXPECT_EQ(kind(Enclosure(Rational(4))), ErrorKind::DomainViolation);
}

TEST(ClosedEval, AgreesWithSeriesAtRandomPoints) {
  std::mt19937_64 rng(17);
  const Precision p(64);
  const PaperFunction f = build_f(64);
  const GFamily fam = build_g_family(64);
  const double hi = 0.95 * 3.14159265358979;
  for (const PaperFunction* fn : {&f, &fam.g, &fam.g1, &fam.g2}) {
    for (int i = 0; i < 50; ++i) {
      Enclosure x(oracle::random_rational(rng, 0.01, hi));
      Enclosure by_series = eval_with_tail(fn->series, x, p);
      Enclosure by_closed_form = closed_eval(fn->id, x, p);
      EXPECT_TRUE(by_series.overlaps(by_closed_form)) << to_string(fn->id) << " at " << to_double(x.lo());
    }
  }
}

TEST(IdentityCheck, ResidualsVanishThroughOrder32) {
  for (auto id : {IdentityId::SecIdentity, IdentityId::SinRatioIdentity, IdentityId::Splitting}) {
    for (std::size_t order : {4u, 17u, 32u}) {
      PowerSeries r = identity_check(id, order);
      EXPECT_GE(r.order(), order - 1) << to_string(id);
      EXPECT_TRUE(is_zero(r)) << to_string(id) << " order " << order;
    }
  }
}

TEST(FunctionIds, ParseAndPrint) {
  for (auto id : {FunctionId::F, FunctionId::G, FunctionId::G1, FunctionId::G2}) {
    EXPECT_EQ(parse_function_id(to_string(id)), id);
  }
  EXPECT_THROW(parse_function_id("h"), Error);
  EXPECT_EQ(build_function(FunctionId::G2, 8).id, FunctionId::G2);
}

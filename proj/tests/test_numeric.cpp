#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "twin_taylor/numeric.hpp"

using namespace twin_taylor;

namespace {

Enclosure E(long lo, long hi) { return Enclosure(Rational(lo), Rational(hi)); }

}  // namespace

TEST(Rational, FractionStringAlwaysCarriesDenominator) {
  EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
  EXPECT_EQ(to_fraction_string(Rational(-6, 4)), "-6/4");  // not canonicalised by construction
  Rational q(-6, 4);
  q.canonicalize();
  EXPECT_EQ(to_fraction_string(q), "-3/2");
}

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("7/5120"), Rational(7, 5120));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("42"), Rational(42));
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(to_decimal(Rational(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal(Rational(2, 3), 4), "0.6667");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_decimal(Rational(5), 0), "5");
}

TEST(Rational, DyadicRoundingBrackets) {
  Rational third(1, 3);
  Rational lo = floor_to_bits(third, 10);
  Rational hi = ceil_to_bits(third, 10);
  EXPECT_LT(lo, third);
  EXPECT_GT(hi, third);
  EXPECT_EQ(hi - lo, Rational(1, 1024));
  EXPECT_EQ(floor_to_bits(Rational(-1, 3), 4), Rational(-3, 8));
}

TEST(Precision, RejectsSmallBudgets) {
  EXPECT_THROW(Precision(7), Error);
  EXPECT_NO_THROW(Precision(8));
  EXPECT_EQ(Precision(16).doubled().budget(), 32);
}

TEST(EnclosureArith, EndpointExamples) {
  EXPECT_EQ(E(1, 2) + E(3, 4), E(4, 6));
  EXPECT_EQ(E(-1, 1) * E(-1, 1), E(-1, 1));
  EXPECT_EQ(pow(Enclosure(Rational(1, 2)), 2), Enclosure(Rational(1, 4)));
  EXPECT_EQ(E(1, 2) - E(3, 4), E(-3, -1));
  EXPECT_EQ(-E(1, 2), E(-2, -1));
  EXPECT_EQ(abs(E(-3, 2)), E(0, 3));
  EXPECT_EQ(abs(E(-3, -2)), E(2, 3));
  EXPECT_EQ(pow(E(-2, 1), 2), E(0, 4));
  EXPECT_EQ(pow(E(-2, 1), 3), E(-8, 1));
  EXPECT_EQ(pow(E(2, 4), -1), Enclosure(Rational(1, 4), Rational(1, 2)));
  EXPECT_EQ(E(1, 2) / E(2, 4), Enclosure(Rational(1, 4), Rational(1)));
}

TEST(EnclosureArith, DivisionByZeroIntervalThrows) {
  try {
    (void)(E(1, 2) / E(-1, 1));
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByIntervalContainingZero);
  }
  EXPECT_THROW(Enclosure(Rational(2), Rational(1)), Error);
}

TEST(EnclosureArith, ExactOnPoints) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational a = oracle::random_rational(rng, -5, 5);
    Rational b = oracle::random_rational(rng, 0.1, 5);
    EXPECT_EQ(Enclosure(a) + Enclosure(b), Enclosure(Rational(a + b)));
    EXPECT_EQ(Enclosure(a) - Enclosure(b), Enclosure(Rational(a - b)));
    EXPECT_EQ(Enclosure(a) * Enclosure(b), Enclosure(Rational(a * b)));
    EXPECT_EQ(Enclosure(a) / Enclosure(b), Enclosure(Rational(a / b)));
  }
}

TEST(EnclosureArith, ContainmentMonotone) {
  std::mt19937_64 rng(11);
  auto random_enclosure = [&](double lo, double hi) {
    Rational x = oracle::random_rational(rng, lo, hi);
    Rational y = oracle::random_rational(rng, lo, hi);
    return Enclosure(std::min(x, y), std::max(x, y));
  };
  for (int i = 0; i < 300; ++i) {
    Enclosure a = random_enclosure(-3, 3);
    Enclosure b = random_enclosure(0.5, 3);
    Enclosure a_wide(a.lo() - Rational(1, 7), a.hi() + Rational(1, 5));
    Enclosure b_wide(b.lo() - Rational(1, 9), b.hi() + Rational(1, 11));
    EXPECT_TRUE((a_wide + b_wide).contains(a + b));
    EXPECT_TRUE((a_wide - b_wide).contains(a - b));
    EXPECT_TRUE((a_wide * b_wide).contains(a * b));
    EXPECT_TRUE((a_wide / b_wide).contains(a / b));
    EXPECT_TRUE(pow(a_wide, 3).contains(pow(a, 3)));
    EXPECT_TRUE(pow(a_wide, 2).contains(pow(a, 2)));
    EXPECT_TRUE(abs(a_wide).contains(abs(a)));
  }
}

TEST(EnclosureArith, ProductContainsSampledProducts) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Rational p = oracle::random_rational(rng, -2, 2), q = oracle::random_rational(rng, -2, 2);
    Rational r = oracle::random_rational(rng, -2, 2), s = oracle::random_rational(rng, -2, 2);
    Enclosure a(std::min(p, q), std::max(p, q));
    Enclosure b(std::min(r, s), std::max(r, s));
    Enclosure prod = a * b;
    for (int t = 0; t <= 4; ++t) {
      Rational x = a.lo() + (a.hi() - a.lo()) * Rational(t, 4);
      Rational y = b.lo() + (b.hi() - b.lo()) * Rational(4 - t, 4);
      EXPECT_TRUE(prod.contains(Rational(x * y)));
    }
  }
}

TEST(EnclosureArith, RoundOutOnlyWidensLongDenominators) {
  Enclosure exact(Rational(3, 8));
  EXPECT_EQ(round_out(exact, 16), exact);
  Enclosure third(Rational(1, 3));
  Enclosure r = round_out(third, 20);
  EXPECT_TRUE(r.contains(third));
  EXPECT_LE(r.width(), Rational(1, 1 << 20));
  auto i = intersect(E(0, 2), E(1, 3));
  ASSERT_TRUE(i.has_value());
  EXPECT_EQ(*i, E(1, 2));
  EXPECT_FALSE(intersect(E(0, 1), E(2, 3)).has_value());
  EXPECT_EQ(hull(E(0, 1), E(2, 3)), E(0, 3));
}

TEST(EncPi, ContainsReferenceAndMeetsWidth) {
  for (int budget : {8, 16, 32, 64, 80, 128, 256}) {
    Enclosure pi = enc_pi(Precision(budget));
    EXPECT_TRUE(oracle::brackets(pi, oracle::kPi)) << budget;
    EXPECT_LE(pi.width(), Precision(budget).target_width()) << budget;
  }
  Enclosure p16 = enc_pi(Precision(16));
  EXPECT_GE(p16.lo(), parse_rational("3.14159"));
  EXPECT_LE(p16.hi(), parse_rational("3.14160"));
  EXPECT_TRUE(enc_pi(Precision(8)).contains(parse_rational("3.14159265")));
  EXPECT_TRUE(oracle::matches_truncated(enc_pi(Precision(40)), "3.14159265", 8));
  EXPECT_LT(enc_pi(Precision(32)).width(), enc_pi(Precision(16)).width());
}

TEST(EncExp, Examples) {
  EXPECT_EQ(enc_exp(Enclosure(Rational(0)), Precision(20)), Enclosure(Rational(1)));

  Enclosure quarter_pi = enc_pi(Precision(40)) / Rational(4);
  Enclosure e = enc_exp(quarter_pi, Precision(20));
  EXPECT_TRUE(oracle::matches_truncated(e, "2.19328", 5));
  EXPECT_TRUE(oracle::brackets(e, oracle::kExpPiOver4));
  EXPECT_TRUE(oracle::brackets(enc_exp(enc_pi(Precision(200)) / Rational(4), Precision(160)), oracle::kExpPiOver4));
}

TEST(EncExp, AgreesWithBruteForceSeries) {
  // 60 exact terms of sum x^k/k! for x in [-2, 2]; remainder < 2^60/60! ~ 1e-64
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    Rational x = oracle::random_rational(rng, -2, 2);
    Rational sum = oracle::partial_sum(60, [&](std::size_t k) {
      return Rational(pow(x, static_cast<unsigned>(k)) / Rational(oracle::factorial(k)));
    });
    Enclosure e = enc_exp(Enclosure(x), Precision(100));
    EXPECT_TRUE(e.contains(Enclosure(sum - oracle::pow10_inv(60), sum + oracle::pow10_inv(60))));
    EXPECT_LE(e.width(), Precision(100).target_width());
  }
}

TEST(EncExp, ProductWithNegativeContainsOne) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    Rational a = oracle::random_rational(rng, -6, 6);
    Enclosure prod = enc_exp(Enclosure(a), Precision(40)) * enc_exp(Enclosure(Rational(-a)), Precision(40));
    EXPECT_TRUE(prod.contains(Rational(1)));
  }
}

TEST(EncExp, LargeArgumentStillNarrow) {
  Enclosure e = enc_exp(Enclosure(Rational(10)), Precision(64));
  EXPECT_TRUE(oracle::brackets(e, "22026.4657948067165169579006452842443663535126185567810742354"));
  EXPECT_LT(e.width() / e.lo(), Rational(1, Integer(1) << 60));
}

TEST(EncSqrt, Examples) {
  EXPECT_EQ(enc_sqrt(Enclosure(Rational(4)), Precision(20)), Enclosure(Rational(2)));
  EXPECT_EQ(enc_sqrt(Enclosure(Rational(0)), Precision(20)), Enclosure(Rational(0)));
  EXPECT_EQ(enc_sqrt(Enclosure(Rational(9, 16)), Precision(20)), Enclosure(Rational(3, 4)));
  Enclosure r2 = enc_sqrt(Enclosure(Rational(2)), Precision(20));
  EXPECT_TRUE(oracle::matches_truncated(r2, "1.41421356", 8));
  EXPECT_TRUE(oracle::brackets(r2, oracle::kSqrt2));
  EXPECT_TRUE(oracle::brackets(enc_sqrt(Enclosure(Rational(2)), Precision(180)), oracle::kSqrt2));
  try {
    (void)enc_sqrt(Enclosure(Rational(-1), Rational(1)), Precision(20));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeOperand);
  }
}

TEST(EncSqrt, BisectionOracle) {
  // plain rational bisection on y^2 = x, independent of the integer sqrt path
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    Rational x = oracle::random_rational(rng, 0.01, 50);
    Rational lo = 0, hi = x + 1;
    for (int it = 0; it < 90; ++it) {
      Rational m = (lo + hi) / 2;
      if (m * m <= x) {
        lo = m;
      } else {
        hi = m;
      }
    }
    Enclosure s = enc_sqrt(Enclosure(x), Precision(64));
    EXPECT_TRUE(s.overlaps(Enclosure(lo, hi)));
    EXPECT_LE(s.lo() * s.lo(), x);
    EXPECT_GE(s.hi() * s.hi(), x);
  }
}

TEST(PiAffine, EnclosesAndPrints) {
  PiAffine half_pi{Rational(1, 2), 0};
  Enclosure e = half_pi.enclose(Precision(64));
  EXPECT_TRUE(e.overlaps(oracle::reference(oracle::kPi) / Rational(2)));
  EXPECT_LE(e.width(), Precision(64).target_width());
  EXPECT_EQ(half_pi.to_string(), "pi/2");
  EXPECT_EQ((PiAffine{Rational(1, 3), Rational(1, 10)}).to_string(), "pi/3+1/10");
  EXPECT_EQ((PiAffine{0, Rational(1, 2)}).to_string(), "1/2");
  EXPECT_EQ((PiAffine{Rational(3, 4), 0}).to_string(), "3*pi/4");
}

TEST(DirectedDecimal, RoundsAwayFromTheInterior) {
  const Rational third(1, 3);
  EXPECT_EQ(to_decimal_directed(third, 4, false), "0.3333");
  EXPECT_EQ(to_decimal_directed(third, 4, true), "0.3334");
  EXPECT_EQ(to_decimal_directed(-third, 4, false), "-0.3334");
  EXPECT_EQ(to_decimal_directed(-third, 4, true), "-0.3333");
  EXPECT_EQ(to_decimal_directed(Rational(1, 4), 2, true), "0.25");
}

TEST(PiAffineParse, AcceptedForms) {
  EXPECT_EQ(parse_pi_affine("pi/2"), (PiAffine{Rational(1, 2), 0}));
  EXPECT_EQ(parse_pi_affine("1/2"), (PiAffine{0, Rational(1, 2)}));
  EXPECT_EQ(parse_pi_affine("pi/3+1/10"), (PiAffine{Rational(1, 3), Rational(1, 10)}));
  EXPECT_EQ(parse_pi_affine("3*pi/4"), (PiAffine{Rational(3, 4), 0}));
  EXPECT_EQ(parse_pi_affine("2pi/3 - 0.25"), (PiAffine{Rational(2, 3), Rational(-1, 4)}));
  EXPECT_EQ(parse_pi_affine("-pi/4+1"), (PiAffine{Rational(-1, 4), 1}));
  EXPECT_EQ(parse_pi_affine("pi"), (PiAffine{1, 0}));
  EXPECT_EQ(parse_pi_affine("1/2*pi"), (PiAffine{Rational(1, 2), 0}));
}

TEST(PiAffineParse, RoundTripsThroughToString) {
  for (const char* text : {"pi/2", "1/2", "pi/3+1/10", "-pi/4+1", "3*pi/7-2/5"}) {
    const PiAffine a = parse_pi_affine(text);
    EXPECT_EQ(parse_pi_affine(a.to_string()), a) << text;
  }
}

TEST(PiAffineParse, RejectsGarbage) {
  for (const char* text : {"", "pie", "pi/", "pi/0", "pi*pi", "1/2+", "x", "pi2"}) {
    try {
      parse_pi_affine(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << text;
    }
  }
}

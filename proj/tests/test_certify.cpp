#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twin_taylor/certify.hpp"

using namespace twin_taylor;
using namespace oracle;

namespace {

const PiAffine kHalfPi{Rational(1, 2), 0};
const PiAffine kZero{0, 0};

Rational tiny(int digits) { return pow10_inv(digits); }

void expect_all_proved(const CertificateReport& r) {
  EXPECT_TRUE(r.all_hypotheses_passed()) << report_to_text(r);
  for (const auto& s : r.sub_claims) {
    EXPECT_TRUE(s.verdict == Verdict::Proved || s.verdict == Verdict::ProvedNonStrictAtEndpoint)
        << s.name << ": " << to_string(s.verdict);
  }
}

}  // namespace

TEST(EndpointBoundsOfF, HalfPiProvedWithNarrowUpperConstant) {
  CertifyOptions o;
  o.precision = 80;
  const CertificateReport r = verify_statement1(kHalfPi, o);
  EXPECT_EQ(r.verdict, Verdict::Proved) << report_to_text(r);
  expect_all_proved(r);
  EXPECT_EQ(r.sub_claim("upper_bound_at_endpoint")->verdict, Verdict::ProvedNonStrictAtEndpoint);
  const Enclosure* upper = r.find("upper");
  ASSERT_NE(upper, nullptr);
  EXPECT_TRUE(brackets(*upper, kFourOverPiSq));
  EXPECT_LT(upper->width(), tiny(20));
  // 4/pi^2 computed independently of the report
  const Enclosure four_over_pi_sq = Rational(4) / square(enc_pi(Precision(200)));
  EXPECT_TRUE(upper->overlaps(four_over_pi_sq));
  EXPECT_EQ(*r.find("lower"), Enclosure(Rational(3, 8)));
}

TEST(EndpointBoundsOfF, ThirdPi) {
  const CertificateReport r = verify_statement1(PiAffine{Rational(1, 3), 0});
  EXPECT_EQ(r.verdict, Verdict::Proved);
  EXPECT_TRUE(brackets(*r.find("upper"), kFAtPiOver3));
}

TEST(EndpointBoundsOfF, TinyEndpointStillSeparated) {
  const CertificateReport r = verify_statement1(Enclosure(tiny(3)));
  EXPECT_EQ(r.verdict, Verdict::Proved) << report_to_text(r);
  EXPECT_GT(r.find("upper")->lo(), Rational(3, 8));
}

TEST(EndpointBoundsOfF, EndpointOutsideDomainThrows) {
  try {
    verify_statement1(PiAffine{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
  }
  EXPECT_THROW(verify_statement1(Enclosure(Rational(0))), Error);
  EXPECT_THROW(verify_statement1(Enclosure(Rational(-1))), Error);
}

TEST(LadderChain, OrdersZeroTwo) {
  CertifyOptions o;
  o.grid = 33;
  const CertificateReport r = verify_theorem3_chain(kHalfPi, {0, 2}, o);
  EXPECT_EQ(r.verdict, Verdict::Proved) << report_to_text(r);
  expect_all_proved(r);
  EXPECT_NE(r.find("TT_2.top"), nullptr);
  EXPECT_TRUE(brackets(*r.find("TT_2.top"), kTT2Top));
}

TEST(LadderChain, FourRungs) {
  CertifyOptions o;
  o.grid = 65;
  const CertificateReport r = verify_theorem3_chain(kHalfPi, {0, 2, 4, 6}, o);
  EXPECT_EQ(r.verdict, Verdict::Proved) << report_to_text(r);
  EXPECT_EQ(r.sub_claims.size(), 4u);
}

TEST(LadderChain, SplitPartsOfG) {
  for (FunctionId id : {FunctionId::G1, FunctionId::G2}) {
    const CertificateReport r = verify_ladder_chain(id, kHalfPi, {0, 4, 8});
    EXPECT_EQ(r.verdict, Verdict::Proved) << report_to_text(r);
  }
}

TEST(LadderChain, CombinedGIsRejected) {
  try {
    verify_ladder_chain(FunctionId::G, kHalfPi, {0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisNotCertified);
  }
}

TEST(LadderChain, TruncationMustExceedOrders) {
  CertifyOptions o;
  o.truncation = 8;
  EXPECT_THROW(verify_theorem3_chain(kHalfPi, {0, 8}, o), Error);
}

TEST(RemainderMax, FirstKindPeaksAtEndpoint) {
  const MaxSearchResult r = remainder_max(FunctionId::F, RemainderKind::First, 3, std::nullopt, kZero, kHalfPi,
                                          Rational(1, 1000000));
  const Rational quoted = parse_rational("0.01100");
  const Rational slack(5, 100000);
  EXPECT_TRUE(Enclosure(quoted - slack, quoted + slack).contains(r.max_value));
  EXPECT_TRUE(r.argmax.contains(kHalfPi.enclose(Precision(96))));
  EXPECT_TRUE(brackets(r.max_value, kR3AtPiOver2));
  EXPECT_GT(r.refinement_depth, 0);
}

TEST(RemainderMax, SecondKindInteriorPeak) {
  const MaxSearchResult r = remainder_max(FunctionId::F, RemainderKind::Second, 3, kHalfPi, kZero, kHalfPi,
                                          Rational(1, 1000000));
  const Rational quoted = parse_rational("0.00315");
  const Rational slack(5, 100000);
  EXPECT_TRUE(Enclosure(quoted - slack, quoted + slack).contains(r.max_value));
  const Rational spot = parse_rational("1.14909");
  EXPECT_TRUE(Enclosure(spot - Rational(1, 1000), spot + Rational(1, 1000)).contains(r.argmax));
  EXPECT_TRUE(r.argmax.overlaps(reference(kSecondR3Argmax)));
  // the enclosure must not undercut the true maximum
  EXPECT_GE(r.max_value.hi(), reference(kSecondR3Max).lo());
}

TEST(RemainderMax, TighterToleranceNeverLowersTheMaximum) {
  Rational prev_lo = 0;
  Rational prev_width = 1;
  for (int digits : {3, 5, 7}) {
    const MaxSearchResult r = remainder_max(FunctionId::F, RemainderKind::Second, 3, kHalfPi, kZero, kHalfPi,
                                            tiny(digits));
    EXPECT_GE(r.max_value.lo(), prev_lo - tiny(12));
    EXPECT_LE(r.argmax.width(), prev_width);
    prev_lo = r.max_value.lo();
    prev_width = r.argmax.width();
  }
}

TEST(RemainderMax, RejectsBadIntervals) {
  EXPECT_THROW(remainder_max(FunctionId::F, RemainderKind::First, 3, std::nullopt, kZero, PiAffine{1, 0},
                             Rational(1, 1000)),
               Error);
  EXPECT_THROW(remainder_max(FunctionId::F, RemainderKind::First, 3, std::nullopt, kHalfPi, kZero, Rational(1, 1000)),
               Error);
  EXPECT_THROW(remainder_max(FunctionId::F, RemainderKind::Second, 3, std::nullopt, kZero, kHalfPi, Rational(1, 1000)),
               Error);
}

TEST(DeltaConstants, MatchReferencesAndNarrow) {
  const DeltaConstants d = delta_constants(Precision(64));
  EXPECT_TRUE(matches_truncated(d.delta1, "1.55456", 5));
  EXPECT_TRUE(matches_truncated(d.delta2, "0.22525", 5));
  EXPECT_TRUE(brackets(d.delta1, kDelta1));
  EXPECT_TRUE(brackets(d.delta2, kDelta2));
  EXPECT_LT(d.delta1.width(), tiny(8));
  EXPECT_LT(d.delta2.width(), tiny(8));
}

TEST(DeltaConstants, WidthShrinksWithBudget) {
  Rational prev = 1;
  for (int budget : {32, 64, 128}) {
    const DeltaConstants d = delta_constants(Precision(budget));
    EXPECT_LE(d.delta1.width(), Precision(budget).target_width());
    EXPECT_LE(d.delta2.width(), Precision(budget).target_width());
    EXPECT_LT(d.delta2.width(), prev);
    prev = d.delta2.width();
  }
}

TEST(QuadraticBoundsOfG, AllPartsProved) {
  CertifyOptions o;
  o.precision = 64;
  o.truncation = 64;
  o.grid = 64;
  const CertificateReport r = verify_statement2_improvement(o);
  EXPECT_EQ(r.verdict, Verdict::Proved) << report_to_text(r);
  for (const char* name : {"a_quadratic_bounds", "b_upper_at_most_quarter", "c_lower_at_least_constant"}) {
    ASSERT_NE(r.sub_claim(name), nullptr) << name;
    EXPECT_EQ(r.sub_claim(name)->verdict, Verdict::Proved) << name;
  }
  EXPECT_EQ(r.precision, 64);
  EXPECT_TRUE(brackets(*r.find("g1(pi/2)"), kG1AtPiOver2));
  EXPECT_TRUE(brackets(*r.find("g2(pi/2)"), kG2AtPiOver2));
  EXPECT_TRUE(r.find("U(delta2)")->contains(Rational(1, 4)));
  EXPECT_TRUE(r.find("L(delta1)")->overlaps(*r.find("statement2_lower")));
  EXPECT_TRUE(brackets(*r.find("statement2_lower"), kStatement2Lower));
}

TEST(QuadraticBoundsOfG, StableUnderRefinement) {
  CertifyOptions o;
  o.grid = 17;
  const CertificateReport coarse = verify_statement2_improvement(o);
  const CertificateReport fine = verify_statement2_improvement(o.doubled());
  EXPECT_EQ(coarse.verdict, Verdict::Proved);
  EXPECT_EQ(fine.verdict, Verdict::Proved);
  for (const auto& e : fine.enclosures) {
    const Enclosure* c = coarse.find(e.name);
    ASSERT_NE(c, nullptr) << e.name;
    EXPECT_TRUE(c->overlaps(e.value)) << e.name;
    EXPECT_LE(e.value.width(), c->width()) << e.name;
  }
}

TEST(Constants, AllRowsConsistent) {
  const std::vector<ConstantRow> rows = reproduce_constants();
  EXPECT_GE(rows.size(), 15u);
  for (const auto& row : rows) EXPECT_TRUE(row.consistent) << row.name << " quoted " << row.quoted;
}

TEST(Report, JsonRoundTripIsExact) {
  const CertificateReport r = verify_theorem3_chain(kHalfPi, {0, 2});
  const std::string text = report_to_json(r);
  const CertificateReport back = report_from_json(text);
  EXPECT_EQ(back, r);
  EXPECT_EQ(report_to_json(back), text);
}

TEST(Report, JsonFieldsPresent) {
  const std::string text = report_to_json(verify_statement1(kHalfPi));
  for (const char* key : {"\"claim_id\"", "\"hypotheses\"", "\"enclosures\"", "\"verdict\"", "\"precision\"",
                          "\"truncation\"", "\"lo\"", "\"hi\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

TEST(Report, MalformedJsonThrowsParseError) {
  for (const char* bad : {"", "{", "[]", R"({"claim_id": "x"})",
                          R"({"claim_id":"x","verdict":"Maybe","hypotheses":[],"enclosures":{},"precision":1,"truncation":1})",
                          R"({"claim_id":"x","verdict":"Proved","hypotheses":[],"enclosures":{"a":{"lo":"1/0","hi":"1"}},"precision":1,"truncation":1})"}) {
    try {
      report_from_json(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << bad;
    }
  }
}

TEST(Report, TextMentionsVerdictAndBounds) {
  const std::string text = report_to_text(verify_statement1(kHalfPi));
  EXPECT_NE(text.find("Proved"), std::string::npos);
  EXPECT_NE(text.find("0.4052847345693510857755178"), std::string::npos);
}

TEST(Verdicts, RoundTripNames) {
  for (Verdict v : {Verdict::Proved, Verdict::ProvedNonStrictAtEndpoint, Verdict::Indeterminate, Verdict::Refuted}) {
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  }
  EXPECT_THROW(parse_verdict("proved"), Error);
}

#include <gtest/gtest.h>

#include "dtmwb/classify.hpp"
#include "dtmwb/instances.hpp"
#include "dtmwb/set_function.hpp"
#include "helpers.hpp"

using namespace dtmwb;
using testing_helpers::l3;
using testing_helpers::pts;
using testing_helpers::slurp;

TEST(SetFunction, ParsesL3HalfTable) {
  auto sp = l3();
  SetFunction nu = SetFunction::parse(sp, slurp("L3_half.fn"));
  EXPECT_EQ(nu.closed(pts(sp, {"b", "c"})), ExtValue(1));
  EXPECT_EQ(nu.open(pts(sp, {"a", "b"})), ExtValue(Rational(1, 2)));
  EXPECT_EQ(nu.open(Region()), ExtValue(0));

  ClassificationReport rep = classify(nu);
  EXPECT_TRUE(rep.is_measure_restriction);
  EXPECT_TRUE(rep.is_dtm);
  EXPECT_TRUE(rep.is_tm);
  ASSERT_EQ(rep.weights.size(), 3u);
  EXPECT_EQ(rep.weights[0] + rep.weights[1] + rep.weights[2], Rational(1));
  // a is never closed-separated from b or c, so only b and c carry weight here.
  EXPECT_EQ(rep.weights[1], Rational(1, 2));
  EXPECT_EQ(rep.weights[2], Rational(1, 2));
  EXPECT_EQ(rep.norm, ExtValue(1));
}

TEST(SetFunction, ParseRejectsMissingAndDuplicateEntries) {
  auto sp = l3();
  EXPECT_THROW(SetFunction::parse(sp, "C b = 1\n"), ParseError);
  std::string text = slurp("L3_half.fn") + "C b = 1/2\n";
  EXPECT_THROW(SetFunction::parse(sp, text), ParseError);
}

TEST(SetFunction, FormatTableRoundTrips) {
  auto sp = l3();
  SetFunction nu = SetFunction::parse(sp, slurp("L3_half.fn"));
  SetFunction back = SetFunction::parse(sp, format_table(nu));
  for (const auto& u : sp->opens()) EXPECT_EQ(back.open(u), nu.open(u));
  for (const auto& c : sp->compacts()) EXPECT_EQ(back.closed(c), nu.closed(c));
}

TEST(SetFunction, CombineFollowsExtendedArithmetic) {
  auto g = make_grid_space(2);
  SetFunction inf = infinity_dtm(g, {1, 1});
  SetFunction leb = lebesgue(g);
  Region k = Region::single(g->grid().index(1, 1));
  // 0 * inf = 0
  EXPECT_EQ(combine(Rational(0), inf, Rational(1), leb).closed(k), ExtValue(Rational(1, 16)));
  EXPECT_EQ((inf + leb).closed(k), ExtValue::inf());
  // Values are combined on demand, so the error surfaces at evaluation.
  SetFunction diff = combine(Rational(1), inf, Rational(-1), inf);
  EXPECT_EQ(diff.closed(Region::single(0)), ExtValue(0));
  EXPECT_THROW(diff.closed(k), UndefinedSum);
}

TEST(SetFunction, RenamedSharesValues) {
  auto g = make_grid_space(2);
  SetFunction a = aarnes_qm(g, default_aarnes_marks(2));
  SetFunction b = a.renamed("other");
  EXPECT_EQ(b.name(), "other");
  for (const auto& k : g->compacts()) ASSERT_EQ(a.closed(k), b.closed(k));
}

TEST(Regularize, FlagsTheCoveredConflict) {
  auto sp = l3();
  const Region bc = pts(sp, {"b", "c"});
  SetFunction raw = SetFunction::from_rule(sp, "raw", [u = sp->universe()](Flavor, const Region& r) {
    return r == u ? ExtValue(1) : ExtValue(0);
  });
  RegularizeResult res = regularize(raw);
  EXPECT_EQ(res.fn.open(pts(sp, {"a"})), ExtValue(0));
  EXPECT_EQ(res.fn.open(pts(sp, {"a", "b"})), ExtValue(0));
  EXPECT_EQ(res.fn.open(pts(sp, {"a", "c"})), ExtValue(0));
  EXPECT_EQ(res.fn.open(sp->universe()), ExtValue(1));
  // bc only fits inside X, so its outer value is 1 while the raw value is 0.
  EXPECT_EQ(res.fn.closed(bc), ExtValue(1));
  ASSERT_EQ(res.conflicts.size(), 1u);
  EXPECT_EQ(res.conflicts[0], bc);
  EXPECT_TRUE(res.conflicts_exhaustive);
}

TEST(Classify, LebesgueIsAMeasure) {
  auto g = make_grid_space(2);
  ClassificationReport rep = classify(lebesgue(g));
  EXPECT_TRUE(rep.is_measure_restriction);
  EXPECT_TRUE(rep.is_tm);
  EXPECT_TRUE(rep.is_dtm);
  EXPECT_TRUE(rep.finite);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_EQ(rep.norm, ExtValue(1));
  ASSERT_EQ(rep.weights.size(), 16u);
  for (const auto& w : rep.weights) EXPECT_EQ(w, Rational(1, 16));
}

TEST(Classify, AarnesIsATmButNotAMeasure) {
  auto g = make_grid_space(2);
  SetFunction a = aarnes_qm(g, default_aarnes_marks(2));
  ClassificationReport rep = classify(a);
  EXPECT_TRUE(rep.is_tm);
  EXPECT_TRUE(rep.is_dtm);
  EXPECT_TRUE(rep.simple);
  EXPECT_FALSE(rep.is_measure_restriction);
  const Violation* v = rep.find("measure");
  ASSERT_NE(v, nullptr);
  EXPECT_TRUE(recheck(a, *v));
  for (const auto& w : rep.witnesses) EXPECT_TRUE(recheck(a, w)) << w.axiom;
}

TEST(Classify, SignedDifferenceIsNotNonnegative) {
  auto g = make_grid_space(2);
  SetFunction d = lebesgue(g) - aarnes_qm(g, default_aarnes_marks(2));
  ClassificationReport rep = classify(d);
  EXPECT_FALSE(rep.is_dtm);
  EXPECT_TRUE(rep.is_stm);
  const Violation* v = rep.find("nonnegative");
  ASSERT_NE(v, nullptr);
  EXPECT_TRUE(recheck(d, *v));
}

TEST(Classify, InfinityDtmIsNotSingletonFinite) {
  auto g = make_grid_space(2);
  ClassificationReport rep = classify(infinity_dtm(g, {1, 1}));
  EXPECT_TRUE(rep.is_dtm);
  EXPECT_FALSE(rep.singleton_finite);
  EXPECT_FALSE(rep.compact_finite);
  EXPECT_EQ(rep.norm, ExtValue::inf());
}

TEST(Classify, MixedInfinitiesThrow) {
  auto g = make_grid_space(2);
  const int p = g->grid().index(1, 1), q = g->grid().index(2, 2);
  SetFunction bad = SetFunction::from_rule(g, "bad", [p, q](Flavor, const Region& r) {
    if (r.test(p) && !r.test(q)) return ExtValue::inf();
    if (r.test(q) && !r.test(p)) return -ExtValue::inf();
    return ExtValue(0);
  });
  EXPECT_THROW(classify(bad), MixedInfinities);
}

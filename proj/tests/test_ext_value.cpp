#include <gtest/gtest.h>

#include "dtmwb/ext_value.hpp"
#include "dtmwb/region.hpp"

using namespace dtmwb;

TEST(ExtValue, CanonicalRationals) {
  EXPECT_EQ(ExtValue(2, 4).str(), "1/2");
  EXPECT_EQ(ExtValue(-3, 6), ExtValue(Rational(-1, 2)));
  EXPECT_EQ(ExtValue(4, 2).str(), "2");
  EXPECT_EQ(ExtValue::parse(" -6/8 ").str(), "-3/4");
  EXPECT_EQ(ExtValue::parse("inf"), ExtValue::inf());
  EXPECT_EQ(ExtValue::parse("-inf"), ExtValue::neg_inf());
}

TEST(ExtValue, DecimalsAreRejected) {
  EXPECT_THROW(parse_rational("0.5"), ParseError);
  EXPECT_THROW(ExtValue::parse("1/0"), ParseError);
  EXPECT_THROW(ExtValue::parse(""), ParseError);
}

TEST(ExtValue, InfinityArithmetic) {
  const ExtValue inf = ExtValue::inf();
  EXPECT_EQ(inf + ExtValue(3), inf);
  EXPECT_EQ(ExtValue(1, 3) + ExtValue(1, 6), ExtValue(1, 2));
  EXPECT_THROW(inf + ExtValue::neg_inf(), UndefinedSum);
  EXPECT_THROW(inf - inf, UndefinedSubtraction);
  EXPECT_EQ(inf - ExtValue(5), inf);
  EXPECT_EQ(Rational(0) * inf, ExtValue(0));
  EXPECT_EQ(Rational(-2) * inf, ExtValue::neg_inf());
  EXPECT_EQ((-inf).abs(), inf);
  EXPECT_THROW(inf.value(), InfiniteValue);
}

TEST(ExtValue, TotalOrder) {
  EXPECT_LT(ExtValue::neg_inf(), ExtValue(-1000));
  EXPECT_LT(ExtValue(1, 3), ExtValue(1, 2));
  EXPECT_LT(ExtValue(7), ExtValue::inf());
  EXPECT_EQ(min(ExtValue(2), ExtValue::inf()), ExtValue(2));
  EXPECT_EQ(max(ExtValue::neg_inf(), ExtValue(0)), ExtValue(0));
  EXPECT_EQ(ExtValue(-1, 2).sign(), -1);
  EXPECT_TRUE(ExtValue(0).is_zero());
}

TEST(Region, SetOperations) {
  Region a = Region::from_bits(0b1011);
  Region b = Region::from_bits(0b0110);
  EXPECT_EQ((a | b).low_word(), 0b1111u);
  EXPECT_EQ((a & b).low_word(), 0b0010u);
  EXPECT_EQ((a - b).low_word(), 0b1001u);
  EXPECT_EQ(a.count(), 3);
  EXPECT_EQ(a.lowest(), 0);
  EXPECT_TRUE(Region::from_bits(0b0010).subset_of(a));
  EXPECT_FALSE(b.subset_of(a));
  Region big;
  big.set(200);
  big.set(3);
  EXPECT_EQ(big.indices(), (std::vector<int>{3, 200}));
  EXPECT_EQ(Region::from_hex(big.hex()), big);
  EXPECT_EQ(Region::first(70).count(), 70);
}

TEST(Region, SubsetEnumeration) {
  int n = 0;
  for_each_subset(Region::from_bits(0b10110), [&](const Region& s) {
    EXPECT_TRUE(s.subset_of(Region::from_bits(0b10110)));
    ++n;
  });
  EXPECT_EQ(n, 8);
}

TEST(Region, OrderDecidedByLowestDifferingIndex) {
  // {0,5} < {1}: index 0 is the first difference and {0,5} holds it.
  EXPECT_LT(Region::from_bits(0b100001), Region::from_bits(0b10));
  // A set sorts before its proper subsets.
  EXPECT_LT(Region::from_bits(0b11), Region::from_bits(0b01));
  EXPECT_LT(Region::from_bits(1), Region());
}

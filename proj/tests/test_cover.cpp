#include <gtest/gtest.h>

#include <random>

#include "dtmwb/cover.hpp"
#include "dtmwb/instances.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dtmwb;
using testing_helpers::l3;

namespace {

oracle::Value closed_values(const SetFunction& nu) {
  return [nu](const Region& r) { return nu.closed(r); };
}

// Random cell sets of at most `max_cells` cells on a grid.
std::vector<Region> small_regions(const SpacePtr& g, int max_cells, int count, uint32_t seed) {
  std::mt19937 rng(seed);
  const int n = g->grid().cell_count();
  std::vector<Region> out;
  while (static_cast<int>(out.size()) < count) {
    Region r;
    const int want = 1 + static_cast<int>(rng() % max_cells);
    while (r.count() < want) r.set(static_cast<int>(rng() % n));
    out.push_back(r);
  }
  return out;
}

void expect_cover_of(const CoverCertificate& c) {
  Region u;
  for (const auto& p : c.pieces) {
    EXPECT_TRUE(p.subset_of(c.target));
    u |= p;
  }
  EXPECT_EQ(u, c.target);
}

}  // namespace

TEST(Tilde, MatchesOracleOnEveryL3Dtm) {
  auto sp = l3();
  auto dtms = enumerate_dtms(sp, {Rational(0), Rational(1, 2), Rational(1)});
  ASSERT_FALSE(dtms.empty());
  for (const auto& e : dtms) {
    TildeSolver solver(e.fn);
    for (const auto& k : sp->compacts()) {
      CoverCertificate c = solver.solve(k);
      ExtValue want = oracle::min_cover(k, sp->compacts(), closed_values(e.fn));
      ASSERT_EQ(c.total, want) << e.fn.name() << " at " << sp->format(k);
      EXPECT_TRUE(c.optimal);
      EXPECT_EQ(c.lower, c.total);
      if (!k.empty()) expect_cover_of(c);
    }
  }
}

TEST(Tilde, MatchesOracleOnSmallGridCompacts) {
  auto g = make_grid_space(2);
  std::vector<SetFunction> fns = {lebesgue(g), aarnes_qm(g, default_aarnes_marks(2)),
                                  combine(Rational(1, 2), lebesgue(g), Rational(1, 2),
                                          aarnes_qm(g, default_aarnes_marks(2)))};
  auto targets = small_regions(g, 9, 40, 11);
  for (const auto& nu : fns) {
    TildeSolver solver(nu);
    for (const auto& k : targets) {
      auto allowed = oracle::subsets(k);
      ExtValue want = oracle::min_cover(k, allowed, closed_values(nu));
      CoverCertificate c = solver.solve(k);
      ASSERT_EQ(c.total, want) << nu.name() << " at " << g->format(k);
      EXPECT_TRUE(c.optimal);
      expect_cover_of(c);
    }
  }
}

TEST(Tilde, AarnesVanishesUnderCoverOnTheWholeSquare) {
  // Every compact holding two marks in one component can be split into pieces
  // that hold at most one mark each, so the cover infimum is 0 everywhere.
  auto g = make_grid_space(2);
  SetFunction a = aarnes_qm(g, default_aarnes_marks(2));
  EXPECT_EQ(tilde(a, g->universe()).total, ExtValue(0));
  EXPECT_EQ(a.closed(g->universe()), ExtValue(1));
}

TEST(Tilde, RejectsNonMonotoneInput) {
  auto g = make_grid_space(2);
  SetFunction d = lebesgue(g) - aarnes_qm(g, default_aarnes_marks(2));
  EXPECT_THROW(TildeSolver{d}, HypothesisViolated);
}

TEST(Tilde, ValidateCoverCatchesTampering) {
  auto g = make_grid_space(2);
  SetFunction nu = combine(Rational(1, 2), lebesgue(g), Rational(1, 2), aarnes_qm(g, default_aarnes_marks(2)));
  CoverCertificate c = tilde(nu, g->universe());
  std::string why;
  EXPECT_TRUE(validate_cover(nu, c, &why)) << why;

  CoverCertificate wrong_total = c;
  wrong_total.total = c.total + ExtValue(Rational(1, 16));
  EXPECT_FALSE(validate_cover(nu, wrong_total, &why));

  CoverCertificate missing = c;
  ASSERT_FALSE(missing.pieces.empty());
  missing.pieces.pop_back();
  EXPECT_FALSE(validate_cover(nu, missing, &why));

  // A valid but non-optimal cover claiming optimality.
  CoverCertificate whole{g->universe(), {g->universe()}, nu.closed(g->universe()), true, nu.closed(g->universe())};
  ASSERT_GT(whole.total, c.total);
  EXPECT_FALSE(validate_cover(nu, whole, &why));
  whole.optimal = false;
  whole.lower = ExtValue(0);
  EXPECT_TRUE(validate_cover(nu, whole, &why)) << why;
}

TEST(Tilde, SimplifyKeepsTotalAndCover) {
  auto g = make_grid_space(3);
  SetFunction nu = lebesgue(g);
  Region k = g->grid().rectangle(1, 1, 4, 4);
  std::vector<Region> pieces;
  k.for_each([&](int i) { pieces.push_back(Region::single(i)); });
  CoverCertificate c{k, pieces, ExtValue(Rational(16, 64)), false, ExtValue(0)};
  CoverCertificate s = simplify_cover(nu, c);
  EXPECT_LE(s.total, c.total);
  EXPECT_LT(s.pieces.size(), c.pieces.size());
  expect_cover_of(s);
}

TEST(Tilde, TinyBudgetGivesCertifiedBounds) {
  auto g = make_grid_space(3);
  SetFunction nu = combine(Rational(1, 2), lebesgue(g), Rational(1, 2), aarnes_qm(g, default_aarnes_marks(3)));
  Region k = g->grid().rectangle(0, 0, 3, 7);
  CoverCertificate rough = tilde(nu, k, SearchOptions{1, 1});
  CoverCertificate exact = tilde(nu, k);
  ASSERT_TRUE(exact.optimal);
  EXPECT_LE(rough.lower, exact.total);
  EXPECT_GE(rough.total, exact.total);
  if (rough.optimal) EXPECT_EQ(rough.total, exact.total);
  expect_cover_of(rough);
}

TEST(Packing, MatchesOracleForHalfDifference) {
  auto g = make_grid_space(2);
  SetFunction lam = combine(Rational(1, 2), lebesgue(g), Rational(-1, 2), aarnes_qm(g, default_aarnes_marks(2)));
  // 32 * lam(K) is an integer: |K| - 16 a(K).
  std::vector<int64_t> v(1 << 16, 0);
  for (uint32_t m = 1; m < (1u << 16); ++m) {
    ExtValue x = Rational(32) * lam.closed(Region::from_bits(m));
    v[m] = x.value().get_num().get_si();
    ASSERT_EQ(x.value().get_den(), 1);
  }
  PackingSolver solver(lam);
  PackingCertificate whole = solver.solve(g->universe());
  const int64_t want = oracle::max_packing(0xFFFF, 4, v);
  EXPECT_EQ(want, 20);
  EXPECT_EQ(whole.total, ExtValue(Rational(want, 32)));
  EXPECT_TRUE(whole.optimal);
  std::string why;
  EXPECT_TRUE(validate_packing(lam, whole, &why)) << why;
  for (const auto& u : small_regions(g, 10, 12, 5)) {
    const uint32_t host = static_cast<uint32_t>(u.low_word());
    EXPECT_EQ(solver.solve(u).total, ExtValue(Rational(oracle::max_packing(host, 4, v), 32))) << g->format(u);
  }
}

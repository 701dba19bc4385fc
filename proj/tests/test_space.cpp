#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dtmwb/space.hpp"

using namespace dtmwb;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(DTMWB_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Region pts(const FiniteLattice& l, std::initializer_list<const char*> names) {
  Region r;
  for (const char* n : names) r.set(*l.index_of(n));
  return r;
}

}  // namespace

TEST(Lattice, L3FromFile) {
  FiniteLattice l = FiniteLattice::parse(slurp("L3.lattice"));
  ASSERT_EQ(l.size(), 3);
  EXPECT_EQ(l.opens().size(), 5u);
  EXPECT_EQ(l.closeds().size(), 5u);
  EXPECT_TRUE(l.is_closed(pts(l, {"b", "c"})));
  EXPECT_FALSE(l.is_closed(pts(l, {"a"})));
  EXPECT_EQ(l.kernel(pts(l, {"a", "b"})), pts(l, {"b"}));
  EXPECT_EQ(l.hull(pts(l, {"b"})), pts(l, {"a", "b"}));
  EXPECT_EQ(l.closure(pts(l, {"a"})), l.universe());
}

TEST(Lattice, L3IsConnectedButNotNormal) {
  ValidationReport r = validate_lattice(FiniteLattice::parse(slurp("L3.lattice")));
  EXPECT_TRUE(r.lattice_closed);
  EXPECT_TRUE(r.connected);
  EXPECT_FALSE(r.normal);
  EXPECT_TRUE(r.exhaustive);
  ASSERT_FALSE(r.counterexamples.empty());
}

TEST(Lattice, ChainIsNormal) {
  ValidationReport r = validate_lattice(FiniteLattice::parse(slurp("chain.lattice")));
  EXPECT_TRUE(r.normal);
  EXPECT_TRUE(r.connected);
}

TEST(Lattice, MalformedIsRejected) {
  FiniteLattice l = FiniteLattice::parse(slurp("malformed.lattice"));
  EXPECT_THROW(validate_lattice(l), MalformedLattice);
  // Missing X.
  EXPECT_THROW(validate_lattice(FiniteLattice({"a", "b"}, {Region(), Region::from_bits(1)})), MalformedLattice);
}

TEST(Lattice, ParseErrors) {
  EXPECT_THROW(FiniteLattice::parse("open: a\n"), ParseError);
  EXPECT_THROW(FiniteLattice::parse("points: a a\nopen:\nopen: a\n"), ParseError);
  EXPECT_THROW(FiniteLattice::parse("points: a\nopen: z\n"), ParseError);
  EXPECT_THROW(FiniteLattice::parse("points: a\nclosed: a\n"), ParseError);
}

TEST(Lattice, AtomsOfL3AreThePoints) {
  FiniteLattice l = FiniteLattice::parse(slurp("L3.lattice"));
  EXPECT_EQ(l.atoms().size(), 3u);
}

TEST(Grid, ThinNeighbourhoodDisjointness) {
  auto sp = make_grid_space(2);
  const DyadicGrid& g = sp->grid();
  Region a = Region::single(g.index(0, 0));
  Region diag = Region::single(g.index(1, 1));
  Region far = Region::single(g.index(0, 2));
  EXPECT_FALSE(sp->disjoint(a, diag));  // corner contact intersects
  EXPECT_TRUE(sp->disjoint(a, far));
  EXPECT_EQ(sp->kernel(a), a);
  EXPECT_EQ(sp->hull(a), a);
  EXPECT_EQ(sp->closure(a), a);
  EXPECT_EQ(g.components8(a | diag).size(), 1u);
  EXPECT_EQ(g.components4(a | diag).size(), 2u);
}

TEST(Grid, RectangleAndDilate) {
  DyadicGrid g(3);
  Region r = g.rectangle(2, 2, 3, 4);
  EXPECT_EQ(r.count(), 6);
  EXPECT_EQ(g.dilate(r).count(), 20);  // 4 x 5 block
  EXPECT_EQ(g.erode(g.dilate(r)), r);
  // Neighbours outside the square do not count against erosion.
  Region corner = g.rectangle(0, 0, 1, 1);
  EXPECT_EQ(g.erode(corner), Region::single(g.index(0, 0)));
  EXPECT_EQ(g.cell(g.index(5, 6)), (Cell{5, 6}));
}

TEST(Grid, ParseWithMarks) {
  DyadicGrid g = DyadicGrid::parse("grid k=3\nmarked: (1,1) (1,6) (6,3)\n");
  EXPECT_EQ(g.resolution(), 3);
  ASSERT_EQ(g.marked().size(), 3u);
  EXPECT_EQ(g.marked()[2], (Cell{6, 3}));
  EXPECT_THROW(DyadicGrid(5), Error);
}

TEST(Grid, K2SplittingAndInterpolationExhaustive) {
  ValidationReport r = grid_axiom_check(DyadicGrid(2), 1000);
  EXPECT_TRUE(r.splitting);
  EXPECT_TRUE(r.interpolating);
  EXPECT_TRUE(r.exhaustive);
}

TEST(Grid, K3AxiomsSampledDeterministically) {
  ValidationReport a = grid_axiom_check(DyadicGrid(3), 3000, 42);
  ValidationReport b = grid_axiom_check(DyadicGrid(3), 3000, 42);
  EXPECT_TRUE(a.splitting);
  EXPECT_TRUE(a.interpolating);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.checked, b.checked);
}

TEST(Space, EnumerationLimits) {
  EXPECT_TRUE(make_grid_space(2)->enumerable());
  EXPECT_FALSE(make_grid_space(3)->enumerable());
  EXPECT_EQ(make_grid_space(1)->compacts().size(), 16u);
}

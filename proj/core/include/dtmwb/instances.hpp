#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtmwb/set_function.hpp"

namespace dtmwb {

/// A signed function given as a difference: value = pos - neg.
struct SignedPresentation {
  SetFunction pos;
  SetFunction neg;

  /// pos - neg as one set function (throws UndefinedSubtraction on inf - inf).
  SetFunction value() const;
  std::string name() const { return pos.name() + "-" + neg.name(); }
};

/// Cell weights; opens and compacts with the same cells get the same value.
SetFunction lebesgue_cells(SpacePtr grid, std::vector<Rational> weights, std::string name = "lebesgue");
/// Total mass `total`, spread evenly over the cells.
SetFunction lebesgue(SpacePtr grid, const Rational& total = 1);

/// Three marked cells: a compact has value 1 when one of its 8-components
/// holds at least two of them, else 0. Marks must be pairwise non-adjacent and,
/// for k >= 3, off the outer ring of cells.
SetFunction aarnes_qm(SpacePtr grid, std::array<Cell, 3> marks);
/// Defaults: k=2 (0,0),(0,3),(3,1); k>=3 scaled (1,1),(1,6),(6,3). `which` = 1
/// gives a second triple on k=4, separated from the first.
std::array<Cell, 3> default_aarnes_marks(int k, int which = 0);

/// +inf on every region whose cells contain `marked`, 0 elsewhere.
SetFunction infinity_dtm(SpacePtr grid, Cell marked);

/// Lattice: sum of point weights over the set.
SetFunction point_weights(SpacePtr lattice, std::vector<Rational> weights, std::string name);
SetFunction point_mass(SpacePtr lattice, int x);

/// An instance produced by the registry.
struct Instance {
  std::string name;
  SetFunction fn;
  std::optional<SignedPresentation> presentation;
};

/// Registry names: lebesgue, lebesgue:uniform t, lebesgue:w1,w2,..., aarnes,
/// aarnes:(r,c),(r,c),(r,c), aarnes2 (second k=4 triple), infdtm,
/// infdtm:(r,c), zero, mix:a*NAME+b*NAME..., signed:NAME-NAME, and on
/// lattices atoms:p=w,..., pointmass:p, or a set-function file path.
Instance make_instance(const SpacePtr& space, std::string_view spec);

struct EnumeratedDtm {
  SetFunction fn;
  bool measure = false;
  bool tm = false;
};

/// Every closed-set table with values in `grid` (0 at the empty set) that
/// regularizes without conflict into a DTM.
std::vector<EnumeratedDtm> enumerate_dtms(const SpacePtr& lattice, const std::vector<Rational>& grid,
                                          size_t max_closeds = 12, uint64_t budget = 2'000'000);

}  // namespace dtmwb

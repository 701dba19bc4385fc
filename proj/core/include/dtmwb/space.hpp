#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dtmwb/ext_value.hpp"
#include "dtmwb/region.hpp"

namespace dtmwb {

/// Which of the two families a region belongs to. Compacts are the closed regions.
enum class Flavor { open, closed };

std::string_view to_string(Flavor f);

/// A finite topology given by its list of open sets.
class FiniteLattice {
 public:
  /// Stores the presentation as given; call validate_lattice() to check it.
  /// Throws ParseError on an empty or oversized point list or duplicate names.
  FiniteLattice(std::vector<std::string> points, std::vector<Region> opens);

  /// Parses the line-based lattice format (see README).
  static FiniteLattice parse(std::string_view text);

  const std::vector<std::string>& points() const { return points_; }
  const std::vector<Region>& opens() const { return opens_; }
  const std::vector<Region>& closeds() const { return closeds_; }
  Region universe() const { return universe_; }
  int size() const { return static_cast<int>(points_.size()); }

  std::optional<int> index_of(std::string_view name) const;
  bool is_open(const Region& r) const;
  bool is_closed(const Region& r) const;

  /// Largest closed set inside U.
  Region kernel(const Region& u) const;
  /// Smallest open set containing A (A need not be closed).
  Region hull(const Region& a) const;
  /// Smallest closed set containing A.
  Region closure(const Region& a) const;

  /// Atoms of the algebra generated by the opens.
  std::vector<Region> atoms() const;

  std::string format(const Region& r) const;

 private:
  std::vector<std::string> points_;
  std::vector<Region> opens_;
  std::vector<Region> closeds_;
  Region universe_;
};

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// The 2^k x 2^k cell partition of the unit square.
///
/// Compact regions are closed unions of cells; an open region with cell set T
/// is a thin open neighbourhood of the union of T (thinner than one cell).
/// Touching cells therefore intersect, and two regions are disjoint exactly
/// when no cell of one is 8-adjacent to (or equal to) a cell of the other.
class DyadicGrid {
 public:
  static constexpr int kMaxResolution = 4;

  explicit DyadicGrid(int k, std::vector<Cell> marked = {});

  /// Parses "grid k=<int>" with an optional "marked: (r,c) ..." line.
  static DyadicGrid parse(std::string_view text);

  int resolution() const { return k_; }
  int side() const { return side_; }
  int cell_count() const { return side_ * side_; }
  Region universe() const { return universe_; }
  const std::vector<Cell>& marked() const { return marked_; }

  int index(Cell c) const { return c.row * side_ + c.col; }
  int index(int row, int col) const { return row * side_ + col; }
  Cell cell(int i) const { return {i / side_, i % side_}; }
  bool in_bounds(Cell c) const { return c.row >= 0 && c.col >= 0 && c.row < side_ && c.col < side_; }

  /// The cell and its (up to 8) neighbours inside the square.
  const Region& closed_neighbourhood(int i) const { return nbhd8_[i]; }
  Region dilate(const Region& s) const;
  /// Keeps a cell iff it and all its neighbours inside the square belong to s.
  Region erode(const Region& s) const;
  bool adjacent_or_overlapping(const Region& a, const Region& b) const;

  std::vector<Region> components8(const Region& s) const;
  std::vector<Region> components4(const Region& s) const;

  Region rectangle(int r0, int c0, int r1, int c1) const;  // inclusive bounds
  std::string format(const Region& r) const;
  std::string format(Cell c) const;

 private:
  std::vector<Region> components(const Region& s, bool eight) const;

  int k_;
  int side_;
  Region universe_;
  std::vector<Cell> marked_;
  std::vector<Region> nbhd8_;
  std::vector<Region> nbhd4_;
};

/// Outcome of the structural checks on a model.
struct ValidationReport {
  bool lattice_closed = true;
  bool connected = true;
  bool normal = true;
  bool splitting = true;
  bool interpolating = true;
  bool exhaustive = true;
  uint64_t checked = 0;
  std::vector<std::string> counterexamples;
};

/// A finitely presented compact-space surrogate: either model behind one interface.
class Space {
 public:
  explicit Space(FiniteLattice lattice, std::string label = "lattice");
  explicit Space(DyadicGrid grid);

  bool is_grid() const { return std::holds_alternative<DyadicGrid>(model_); }
  const FiniteLattice& lattice() const { return std::get<FiniteLattice>(model_); }
  const DyadicGrid& grid() const { return std::get<DyadicGrid>(model_); }
  const std::string& label() const { return label_; }

  Region universe() const { return universe_; }
  int point_count() const { return universe_.count(); }

  bool is_region(Flavor f, const Region& r) const;
  /// inner ⊆ outer as point sets of the model.
  bool contained(Flavor inner_f, const Region& inner, Flavor outer_f, const Region& outer) const;
  bool disjoint(const Region& a, const Region& b) const;

  Region kernel(const Region& open) const;
  Region hull(const Region& closed) const;
  /// Closure of an open region, as a closed region.
  Region closure(const Region& open) const;
  /// Smallest open region containing the point set A (used for outer values).
  Region open_hull_of_points(const Region& a) const;
  Region open_complement(const Region& closed) const;
  Region closed_complement(const Region& open) const;
  bool is_clopen(const Region& r) const;

  /// Meet and join inside one family.
  Region join(const Region& a, const Region& b) const { return a | b; }
  Region meet(const Region& a, const Region& b) const { return a & b; }

  /// Whether compacts/opens can be listed exhaustively.
  bool enumerable() const;
  const std::vector<Region>& compacts() const;
  const std::vector<Region>& opens() const;
  std::vector<Region> atoms() const;

  std::string format(const Region& r) const;
  std::string point_name(int i) const;

 private:
  std::variant<FiniteLattice, DyadicGrid> model_;
  std::string label_;
  Region universe_;
  std::vector<Region> compacts_;
  std::vector<Region> opens_;
};

using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_lattice_space(FiniteLattice lattice, std::string label = "lattice");
SpacePtr make_grid_space(int k, std::vector<Cell> marked = {});

/// Checks the presentation and the structural axioms of a lattice.
/// Throws MalformedLattice if the opens miss the empty set or X, or are not
/// closed under pairwise union and intersection.
ValidationReport validate_lattice(const FiniteLattice& lattice);

/// Splitting and interpolation on the grid encoding: exhaustive for k <= 2,
/// sampled with `budget` random triples otherwise.
ValidationReport grid_axiom_check(const DyadicGrid& grid, uint64_t budget, uint64_t seed = 1);

/// Dispatches to validate_lattice or grid_axiom_check.
ValidationReport validate_space(const Space& space, uint64_t budget = 100000, uint64_t seed = 1);

}  // namespace dtmwb

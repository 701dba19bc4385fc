#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtmwb/ext_value.hpp"
#include "dtmwb/set_function.hpp"

namespace dtmwb {

/// One failed axiom with the regions that exhibit it.
struct Violation {
  std::string axiom;  // e.g. "additive-compacts", "inner-regular", "measure"
  std::vector<std::pair<Flavor, Region>> regions;
  std::string detail;
};

struct ClassificationReport {
  bool is_measure_restriction = false;
  bool is_radon_surrogate = false;
  bool is_tm = false;
  bool is_dtm = false;
  bool is_stm = false;
  bool is_sdtm = false;

  bool compact_finite = false;
  bool singleton_finite = false;
  bool locally_finite = false;
  bool simple = false;
  bool finite = false;

  ExtValue norm;
  bool norm_exact = true;
  /// Point (atom / cell) weights when is_measure_restriction holds.
  std::vector<Rational> weights;

  /// Failed axioms; every false flag above is backed by at least one entry.
  std::vector<Violation> witnesses;
  /// False when some check visited only a sample of regions or pairs.
  bool exhaustive = true;
  uint64_t checked = 0;

  const Violation* find(const std::string& axiom) const;
};

struct ClassifyOptions {
  size_t budget = 20000;
  uint64_t seed = 1;
};

/// Checks every definition against the function. Throws MixedInfinities when
/// both +inf and -inf occur among the visited values.
ClassificationReport classify(const SetFunction& nu, const ClassifyOptions& opt = {});

/// Re-evaluates a witness on its own; true when it still shows a violation.
bool recheck(const SetFunction& nu, const Violation& v);

/// max |nu(K)| over compacts. Throws BudgetExceeded when the grid is too large
/// to settle it exactly and no trait decides it.
ExtValue norm(const SetFunction& nu);

/// min nu(U) over opens U containing the point set A.
ExtValue outer_value(const SetFunction& nu, const Region& a);

/// Value used for singleton-finiteness at point x: nu({x}) when {x} is closed,
/// otherwise outer_value(nu, {x}).
ExtValue singleton_value(const SetFunction& nu, int x);

/// max nu(K) over compacts K inside the open region U. Exact or BudgetExceeded.
ExtValue inner_max(const SetFunction& nu, const Region& u);

struct MonotonicityReport {
  bool monotone = true;
  bool superadditive = true;
  bool exhaustive = true;
  std::optional<Violation> violation;
  /// A host A and disjoint pieces inside it with nu(A) > sum of the pieces.
  std::optional<Violation> strict_witness;
};

MonotonicityReport check_superadditive_monotone(const SetFunction& nu, const ClassifyOptions& opt = {});

struct RegularizeResult {
  SetFunction fn;
  /// Compacts where the regularized value differs from the raw value.
  std::vector<Region> conflicts;
  bool conflicts_exhaustive = true;
};

/// Extends the closed values of `raw` to opens by inner maxima and to closeds
/// by outer minima of those.
RegularizeResult regularize(const SetFunction& raw, const ClassifyOptions& opt = {});

}  // namespace dtmwb

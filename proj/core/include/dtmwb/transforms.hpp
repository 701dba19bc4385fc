#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtmwb/check.hpp"
#include "dtmwb/classify.hpp"
#include "dtmwb/cover.hpp"
#include "dtmwb/set_function.hpp"

namespace dtmwb {

/// The regions a suite visits for one function: every compact when the model
/// is enumerable, otherwise a seeded sample of `budget` compacts.
struct EvaluationFamily {
  std::vector<Region> compacts;
  bool exhaustive = true;
};
EvaluationFamily evaluation_family(const SpacePtr& space, size_t budget, uint64_t seed, std::string_view tag);

struct VariationResult {
  SetFunction fn;
  ClassificationReport report;
  /// Compacts where the input exceeds its positive variation (must stay empty).
  std::vector<Region> below_input_failures;
};

/// lambda+(U) = max lambda(K) over compacts K in U, closed values by outer minima.
VariationResult positive_variation(const SetFunction& lambda, const ClassifyOptions& opt = {});
/// (-lambda)+.
VariationResult negative_variation(const SetFunction& lambda, const ClassifyOptions& opt = {});

/// |lambda|: packing maxima of |lambda(K_i)| on opens, outer minima on closeds.
/// On large grids values that cannot be settled throw SearchBudgetExceeded.
SetFunction total_variation(const SetFunction& lambda, const SearchOptions& opt = {},
                            std::optional<SetFunction> bound = std::nullopt);

/// |lambda + nu| <= |lambda| + |nu| and |lambda - nu| <= |lambda| + |nu| on sampled opens.
Check variation_subadditivity(const SetFunction& lambda, const SetFunction& nu, size_t budget, uint64_t seed);

/// nu~ as a set function: closed values are cover minima, open values the
/// inner maxima of those. Throws SearchBudgetExceeded where only bounds exist.
SetFunction tilde_function(const SetFunction& nu, const SearchOptions& opt = {});

/// Properties p1..p7 of the cover infimum, one Check each.
std::vector<Check> tilde_properties_suite(const SetFunction& nu, size_t budget = 10000, uint64_t seed = 1,
                                          const SearchOptions& search = {});

struct RadonDiagnostics {
  Check below_nu;            // m <= nu on evaluated regions
  Check open_subadditive;    // m(U u V) <= m(U) + m(V)
  Check compact_finite;      // nu compact-finite => m compact-finite
  bool measure_restriction = false;
  ClassificationReport report;
};

struct RadonPart {
  SetFunction m;
  SetFunction tilde;
  RadonDiagnostics diagnostics;
};

/// m = (nu~)+. Needs a DTM.
RadonPart radon_part(const SetFunction& nu, const SearchOptions& search = {}, size_t budget = 2000,
                     uint64_t seed = 1);

struct CoverFormulas {
  /// Covers by opens and compacts; by compacts; by opens; by opens with union U.
  std::array<ExtValue, 4> values;
  ExtValue m;
  bool agree = false;
  std::vector<std::vector<Region>> covers;  // one optimal cover per formula
};

/// The four cover formulas for m(U). Throws InfiniteValue if nu(U) = inf.
CoverFormulas open_cover_formulas(const SetFunction& nu, const Region& u, const SearchOptions& search = {});

struct FinitenessReport {
  bool singleton_finite = false;  // (a)
  bool tilde_compact_finite = false;  // (b)
  bool m_compact_finite = false;  // (c)
  bool equivalent = false;
  std::string witness;
};

FinitenessReport finiteness_equivalences(const SetFunction& nu, const SearchOptions& search = {});

struct MaximalityRow {
  Region k;
  ExtValue optimum;
  ExtValue m;
  bool ok = false;
};

struct MaximalityReport {
  std::vector<MaximalityRow> rows;
  /// True on lattices (all closed-set constraints); false on the grid where
  /// the constraint family is sampled and only optimum >= m(K) is asserted.
  bool exact = true;
  bool ok = true;
};

/// max sum of point weights on K under w >= 0 and w(C) <= nu(C) for closed C,
/// compared with m(K). Grid runs use `targets` (default: X) and a sampled
/// constraint family of `budget` compacts.
MaximalityReport maximality_check(const SetFunction& nu, const SetFunction& m, size_t budget = 400,
                                  uint64_t seed = 1, std::vector<Region> targets = {});

}  // namespace dtmwb

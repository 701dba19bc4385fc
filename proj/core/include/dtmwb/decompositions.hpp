#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtmwb/check.hpp"
#include "dtmwb/classify.hpp"
#include "dtmwb/cover.hpp"
#include "dtmwb/instances.hpp"
#include "dtmwb/set_function.hpp"

namespace dtmwb {

/// Shared knobs for the decomposition routines.
struct DecomposeOptions {
  SearchOptions search;
  /// Regions visited by sampled checks on large grids.
  size_t budget = 2000;
  uint64_t seed = 1;
  /// Certificates kept per properness verdict (the count checked is separate).
  size_t keep_certificates = 16;
};

struct SubtractResult {
  SetFunction lambda;
  ClassificationReport report;
  /// lambda = nu - mu on the visited compacts.
  Check consistency;
  /// nu = mu + lambda on the visited opens and closeds.
  Check reconstruction;
  /// Compacts where regularizing changed nu - mu.
  std::vector<Region> conflicts;
};

/// lambda = regularization of nu - mu on compacts. Throws OrderViolated when
/// mu(K) > nu(K) for a visited compact and UndefinedSubtraction on inf - inf.
SubtractResult subtract_dtm(const SetFunction& nu, const SetFunction& mu, const DecomposeOptions& opt = {});

struct ProperVerdict {
  bool proper = false;
  /// Zero-total covers (proper) or the offending compact's best cover.
  std::vector<CoverCertificate> certificates;
  uint64_t compacts_checked = 0;
  bool exhaustive = true;
  std::string witness;
  /// Finite inputs: whether an open cover of X with total 0 exists.
  std::optional<bool> open_cover_form;
  std::string route;
};

/// Proper iff the cover infimum vanishes on every compact. Nonnegative input.
ProperVerdict is_proper(const SetFunction& nu, const DecomposeOptions& opt = {});
/// Signed input: zero covers of X under pos + neg settle it; otherwise the
/// total variation is computed on enumerable models.
ProperVerdict is_proper(const SignedPresentation& mu, const DecomposeOptions& opt = {});

struct Decomposition {
  std::string input;
  SetFunction radon;
  SetFunction proper;
  std::optional<SignedPresentation> presentation;
  std::vector<Check> certificates;
  std::optional<ProperVerdict> proper_verdict;
  std::string uniqueness_route;

  const Check* find(std::string_view statement) const;
};

Decomposition decompose_proper(const SetFunction& nu, const DecomposeOptions& opt = {});
Decomposition decompose_signed(const SignedPresentation& mu, const DecomposeOptions& opt = {});

/// Both inputs are expected proper; checks sums, positive multiples and, for
/// a finite pair, the difference.
std::vector<Check> sum_proper_check(const SetFunction& nu, const SetFunction& mu, const DecomposeOptions& opt = {});

struct JordanResult {
  SignedPresentation parts;
  Check reconstruction;
};

/// mu+ and mu- from positive variations. Throws NormInfinite.
JordanResult jordan_parts(const SetFunction& mu, const DecomposeOptions& opt = {});

struct StmDifference {
  SetFunction lambda;
  ClassificationReport report;
  Check stm;
  Check tm;
};

/// Pointwise nu - mu, classified. Throws UndefinedSubtraction.
StmDifference subtract_stm(const SetFunction& nu, const SetFunction& mu, const DecomposeOptions& opt = {});

/// Order statements for mu <= nu; inapplicable ones are skipped with a reason.
std::vector<Check> order_preservation_suite(const SetFunction& mu, const SetFunction& nu,
                                            const DecomposeOptions& opt = {});

struct ModularityReport {
  bool modular = true;
  bool exhaustive = true;
  uint64_t pairs_checked = 0;
  /// K, C with mu(K u C) + mu(K n C) != mu(K) + mu(C).
  std::optional<std::pair<Region, Region>> violation;
  std::string witness;
  bool signed_radon = false;
  bool proper_part_zero = false;
  /// modular <=> proper part zero.
  bool equivalence = false;
  /// Proper and modular inputs must vanish.
  std::optional<Check> modular_proper_is_zero;
};

ModularityReport modularity_radon_check(const SignedPresentation& mu, const DecomposeOptions& opt = {});

/// Convex split of a mixed DTM, the simple point-mass statement and the
/// three-way properness criterion for finitely many values.
std::vector<Check> structure_lemmas_suite(const SetFunction& nu, const DecomposeOptions& opt = {});

}  // namespace dtmwb

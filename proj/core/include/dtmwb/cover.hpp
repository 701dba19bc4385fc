#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dtmwb/ext_value.hpp"
#include "dtmwb/set_function.hpp"

namespace dtmwb {

struct SearchOptions {
  /// Node budget for one exact search; beyond it a bound pair is returned.
  uint64_t budget = 50'000'000;
  uint64_t seed = 1;
};

/// A cover of `target` by compacts inside it.
struct CoverCertificate {
  Region target;
  std::vector<Region> pieces;
  ExtValue total;
  bool optimal = false;
  /// Certified lower bound on every cover total (equals total when optimal).
  ExtValue lower;
};

/// Pairwise disjoint compacts inside an open host.
struct PackingCertificate {
  Region host;
  std::vector<Region> pieces;
  ExtValue total;
  bool optimal = false;
  /// Certified upper bound on every packing total (equals total when optimal).
  ExtValue upper;
};

/// Raised when a value was requested exactly but only bounds were reached.
class SearchBudgetExceeded : public BudgetExceeded {
 public:
  SearchBudgetExceeded(const std::string& what, ExtValue lower, ExtValue upper)
      : BudgetExceeded(what + " (bounds [" + lower.str() + ", " + upper.str() + "])"),
        lower_(std::move(lower)),
        upper_(std::move(upper)) {}
  const ExtValue& lower() const { return lower_; }
  const ExtValue& upper() const { return upper_; }

 private:
  ExtValue lower_;
  ExtValue upper_;
};

/// Cover-infimum search for one function. Checks the monotone / additive
/// hypotheses once at construction (HypothesisViolated) and caches tables.
class TildeSolver {
 public:
  explicit TildeSolver(SetFunction nu, SearchOptions opt = {});
  ~TildeSolver();
  TildeSolver(const TildeSolver&) = delete;
  TildeSolver& operator=(const TildeSolver&) = delete;

  const SetFunction& function() const;
  /// Minimum of sum nu(K_i) over covers of K by compacts K_i inside K.
  CoverCertificate solve(const Region& k) const;

 private:
  struct State;
  std::unique_ptr<State> st_;
};

/// Packing search for |lambda|(U): max of sum |lambda(K_i)| over pairwise
/// disjoint compacts in U. `bound` (optional) is a monotone superadditive
/// function with |lambda| <= bound on compacts, used for upper bounds.
class PackingSolver {
 public:
  explicit PackingSolver(SetFunction lambda, SearchOptions opt = {},
                         std::optional<SetFunction> bound = std::nullopt);
  ~PackingSolver();
  PackingSolver(const PackingSolver&) = delete;
  PackingSolver& operator=(const PackingSolver&) = delete;

  PackingCertificate solve(const Region& u) const;

 private:
  struct State;
  std::unique_ptr<State> st_;
};

/// Convenience wrappers constructing a solver per call.
CoverCertificate tilde(const SetFunction& nu, const Region& k, const SearchOptions& opt = {});

/// Grid only: merges 8-adjacent pieces while the union costs no more than the
/// two pieces did. The total never increases; optimality is preserved.
CoverCertificate simplify_cover(const SetFunction& nu, CoverCertificate cert);

/// Re-validates a certificate against the function. When the certificate
/// claims optimality the search is re-run and must agree.
bool validate_cover(const SetFunction& nu, const CoverCertificate& c, std::string* why,
                    const SearchOptions& opt = {});
bool validate_packing(const SetFunction& lambda, const PackingCertificate& p, std::string* why,
                      const SearchOptions& opt = {});

}  // namespace dtmwb

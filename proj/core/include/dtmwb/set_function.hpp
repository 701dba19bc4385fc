#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtmwb/ext_value.hpp"
#include "dtmwb/region.hpp"
#include "dtmwb/space.hpp"

namespace dtmwb {

using Rule = std::function<ExtValue(Flavor, const Region&)>;

/// Facts a constructor knows about its output. They are never used to skip a
/// check that can be run exactly; they only let large grids avoid exponential
/// searches in the places where the fact settles the answer.
struct Traits {
  /// Monotone on each flavour, and the open value on cells T equals the
  /// closed value on cells T (grid) -- so inner maxima are attained at T itself.
  bool monotone = false;
  /// Additive on model-disjoint compacts.
  bool compact_additive = false;
  /// Per-point weights w with sum_{x in K} w(x) <= nu(K) for every compact K
  /// (values may be +inf). Gives a lower bound for cover sums.
  std::optional<std::vector<ExtValue>> minorant;
  /// Set when the function is exactly the restriction of these point weights.
  std::optional<std::vector<Rational>> weights;
};

class SetFunction;

/// One summand coef * base of a linear combination of named base functions.
struct Term {
  Rational coef;
  std::shared_ptr<const struct SetFunctionImpl> base;
};

struct SetFunctionImpl;

/// A total map on opens and closeds of one model, with values in [-inf, inf].
///
/// Values come from a rule and are memoized; copies share the memo. Safe to
/// evaluate from several threads.
class SetFunction {
 public:
  SetFunction() = default;

  static SetFunction from_rule(SpacePtr space, std::string name, Rule rule, Traits traits = {});
  /// Lattice only: explicit values for every open and every closed set.
  static SetFunction from_table(SpacePtr space, std::string name,
                                std::map<std::pair<Flavor, Region>, ExtValue> table,
                                Traits traits = {});
  /// Parses lines "C b c = 1/3", "O a = inf" (lattice). Every open and closed
  /// set must be given exactly once.
  static SetFunction parse(SpacePtr space, std::string_view text, std::string name = "file");
  static SetFunction zero(SpacePtr space);

  bool valid() const { return impl_ != nullptr; }
  const SpacePtr& space() const;
  const std::string& name() const;
  const Traits& traits() const;
  /// Renames without touching values or the memo.
  SetFunction renamed(std::string name) const;

  /// The reference stays valid for the lifetime of the function (memo entries never move).
  const ExtValue& operator()(Flavor f, const Region& r) const;
  /// Same value without storing it in the memo (for large internal searches).
  ExtValue peek(Flavor f, const Region& r) const;
  const ExtValue& open(const Region& r) const { return (*this)(Flavor::open, r); }
  const ExtValue& closed(const Region& r) const { return (*this)(Flavor::closed, r); }

  /// Values on all 2^n regions of an enumerable grid, indexed by the low mask.
  const std::vector<ExtValue>& dense(Flavor f) const;

  /// Linear combination view: this == sum coef_i * base_i. A function that is
  /// not a combination reports itself with coefficient 1.
  std::vector<Term> terms() const;

  friend bool same_function(const SetFunction& a, const SetFunction& b) {
    return a.impl_ == b.impl_;
  }

 private:
  friend SetFunction combine(const Rational&, const SetFunction&, const Rational&, const SetFunction&);
  friend SetFunction scale(const Rational&, const SetFunction&);
  friend SetFunction base_of(const Term& t);
  explicit SetFunction(std::shared_ptr<SetFunctionImpl> impl) : impl_(std::move(impl)) {}
  static SetFunction from_terms(SpacePtr space, std::string name, std::vector<Term> terms,
                                std::vector<std::shared_ptr<const SetFunctionImpl>> guards = {});

  std::shared_ptr<SetFunctionImpl> impl_;
};

/// The base function of a term, as a SetFunction.
SetFunction base_of(const Term& t);
const Traits& base_traits(const Term& t);

/// a*nu1 + b*nu2 with extended arithmetic (0 * inf = 0). Throws UndefinedSum
/// when a value would need inf + (-inf).
SetFunction combine(const Rational& a, const SetFunction& nu1, const Rational& b, const SetFunction& nu2);
SetFunction scale(const Rational& a, const SetFunction& nu);
SetFunction operator+(const SetFunction& a, const SetFunction& b);
SetFunction operator-(const SetFunction& a, const SetFunction& b);
SetFunction operator-(const SetFunction& a);

/// Writes the full open/closed table of a lattice function in the file format.
std::string format_table(const SetFunction& nu);

}  // namespace dtmwb

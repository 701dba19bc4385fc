#include "dtmwb/set_function.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"

namespace dtmwb {

namespace {

struct Key {
  Flavor flavor;
  Region region;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    return k.region.hash() * 31u + static_cast<size_t>(k.flavor == Flavor::open);
  }
};

}  // namespace

struct SetFunctionImpl {
  SpacePtr space;
  std::string name;
  Rule rule;
  Traits traits;
  std::vector<Term> terms;  // empty for base functions
  // Bases whose coefficients cancelled in part: inf there is inf - inf.
  std::vector<std::shared_ptr<const SetFunctionImpl>> guards;

  mutable std::shared_mutex mu;
  mutable std::unordered_map<Key, ExtValue, KeyHash> memo;
  // Models with at most kSmallPoints points memoize in flat arrays indexed by
  // flavour and mask instead; `ready` is set after the value is written.
  static constexpr int kSmallPoints = 16;
  mutable std::once_flag small_once;
  mutable std::unique_ptr<std::atomic<uint8_t>[]> ready;
  mutable std::vector<ExtValue> small;
  mutable std::mutex dense_mu;
  mutable std::vector<ExtValue> dense_open;
  mutable std::vector<ExtValue> dense_closed;
};

SetFunction SetFunction::from_rule(SpacePtr space, std::string name, Rule rule, Traits traits) {
  auto impl = std::make_shared<SetFunctionImpl>();
  impl->space = std::move(space);
  impl->name = std::move(name);
  impl->rule = std::move(rule);
  impl->traits = std::move(traits);
  return SetFunction(std::move(impl));
}

SetFunction SetFunction::from_table(SpacePtr space, std::string name,
                                    std::map<std::pair<Flavor, Region>, ExtValue> table,
                                    Traits traits) {
  if (space->is_grid()) throw Error("explicit tables are only supported on lattices");
  for (const auto& u : space->opens()) {
    if (!table.count({Flavor::open, u})) {
      throw ParseError("table misses open set " + space->format(u));
    }
  }
  for (const auto& c : space->compacts()) {
    if (!table.count({Flavor::closed, c})) {
      throw ParseError("table misses closed set " + space->format(c));
    }
  }
  auto shared = std::make_shared<const std::map<std::pair<Flavor, Region>, ExtValue>>(std::move(table));
  auto sp = space;
  Rule rule = [shared, sp](Flavor f, const Region& r) {
    auto it = shared->find({f, r});
    if (it == shared->end()) {
      throw Error(std::string(to_string(f)) + " set " + sp->format(r) + " is not in the model");
    }
    return it->second;
  };
  return from_rule(std::move(space), std::move(name), std::move(rule), std::move(traits));
}

SetFunction SetFunction::parse(SpacePtr space, std::string_view text, std::string name) {
  if (space->is_grid()) throw ParseError("set-function files need a lattice model");
  const auto& lat = space->lattice();
  std::map<std::pair<Flavor, Region>, ExtValue> table;
  int line_no = 0;
  for (const std::string& raw : detail::split_lines(text)) {
    ++line_no;
    std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where + "expected '='");
    auto lhs = detail::split_ws(line.substr(0, eq));
    if (lhs.empty() || (lhs[0] != "C" && lhs[0] != "O")) {
      throw ParseError(where + "expected flavour C or O");
    }
    Flavor f = lhs[0] == "C" ? Flavor::closed : Flavor::open;
    Region r;
    for (size_t i = 1; i < lhs.size(); ++i) {
      auto idx = lat.index_of(lhs[i]);
      if (!idx) throw ParseError(where + "unknown point '" + lhs[i] + "'");
      if (r.test(*idx)) throw ParseError(where + "point '" + lhs[i] + "' repeated");
      r.set(*idx);
    }
    if (!space->is_region(f, r)) {
      throw ParseError(where + space->format(r) + " is not " +
                       (f == Flavor::open ? "open" : "closed"));
    }
    ExtValue v = ExtValue::parse(line.substr(eq + 1));
    if (!table.emplace(std::make_pair(f, r), v).second) {
      throw ParseError(where + "duplicate entry for " + space->format(r));
    }
  }
  return from_table(std::move(space), std::move(name), std::move(table));
}

SetFunction SetFunction::zero(SpacePtr space) {
  Traits t;
  t.monotone = true;
  t.compact_additive = true;
  t.weights = std::vector<Rational>(space->universe().count(), Rational(0));
  t.minorant = std::vector<ExtValue>(space->universe().count(), ExtValue(0));
  auto f = from_rule(std::move(space), "zero", [](Flavor, const Region&) { return ExtValue(0); },
                     std::move(t));
  return f;
}

const SpacePtr& SetFunction::space() const { return impl_->space; }
const std::string& SetFunction::name() const { return impl_->name; }
const Traits& SetFunction::traits() const { return impl_->traits; }

SetFunction SetFunction::renamed(std::string name) const {
  auto impl = std::make_shared<SetFunctionImpl>();
  impl->space = impl_->space;
  impl->name = std::move(name);
  // Values go through the original, so its memo keeps serving both.
  impl->rule = [src = *this](Flavor f, const Region& r) { return src(f, r); };
  impl->traits = impl_->traits;
  impl->terms = impl_->terms;
  return SetFunction(std::move(impl));
}

const ExtValue& SetFunction::operator()(Flavor f, const Region& r) const {
  SetFunctionImpl& im = *impl_;
  if (im.space->point_count() <= SetFunctionImpl::kSmallPoints) {
    const size_t n = size_t{1} << im.space->point_count();
    std::call_once(im.small_once, [&] {
      im.small.resize(2 * n);
      im.ready = std::make_unique<std::atomic<uint8_t>[]>(2 * n);
    });
    const size_t slot = (f == Flavor::open ? n : 0) + r.low_word();
    if (im.ready[slot].load(std::memory_order_acquire)) return im.small[slot];
    ExtValue v = im.rule(f, r);
    std::unique_lock lock(im.mu);
    if (!im.ready[slot].load(std::memory_order_relaxed)) {
      im.small[slot] = std::move(v);
      im.ready[slot].store(1, std::memory_order_release);
    }
    return im.small[slot];
  }
  Key key{f, r};
  {
    std::shared_lock lock(im.mu);
    auto it = im.memo.find(key);
    if (it != im.memo.end()) return it->second;
  }
  ExtValue v = im.rule(f, r);
  // Concurrent writers compute the same value, so the first insert wins.
  std::unique_lock lock(im.mu);
  return im.memo.emplace(key, std::move(v)).first->second;
}

ExtValue SetFunction::peek(Flavor f, const Region& r) const {
  if (impl_->space->point_count() <= SetFunctionImpl::kSmallPoints) return (*this)(f, r);
  {
    std::shared_lock lock(impl_->mu);
    auto it = impl_->memo.find(Key{f, r});
    if (it != impl_->memo.end()) return it->second;
  }
  return impl_->rule(f, r);
}

const std::vector<ExtValue>& SetFunction::dense(Flavor f) const {
  const Space& s = *impl_->space;
  if (!s.is_grid() || s.grid().cell_count() > 16) {
    throw BudgetExceeded("dense tables need an enumerable grid");
  }
  std::lock_guard lock(impl_->dense_mu);
  auto& table = f == Flavor::open ? impl_->dense_open : impl_->dense_closed;
  if (!table.empty()) return table;
  const uint64_t n = uint64_t{1} << s.grid().cell_count();
  std::vector<ExtValue> out(n);
  if (!impl_->terms.empty()) {
    for (uint64_t m = 0; m < n; ++m) out[m] = ExtValue(0);
    for (const auto& t : impl_->terms) {
      SetFunction base(std::const_pointer_cast<SetFunctionImpl>(t.base));
      const auto& bt = base.dense(f);
      for (uint64_t m = 0; m < n; ++m) out[m] += t.coef * bt[m];
    }
  } else {
    for (uint64_t m = 0; m < n; ++m) out[m] = impl_->rule(f, Region::from_bits(m));
  }
  table = std::move(out);
  return table;
}

std::vector<Term> SetFunction::terms() const {
  if (!impl_->terms.empty()) return impl_->terms;
  return {Term{Rational(1), impl_}};
}

SetFunction SetFunction::from_terms(SpacePtr space, std::string name, std::vector<Term> terms,
                                    std::vector<std::shared_ptr<const SetFunctionImpl>> guards) {
  if (terms.empty() && guards.empty()) return zero(std::move(space)).renamed(std::move(name));
  Traits t;
  bool all_pos = true;
  bool all_mono = true;
  bool all_add = true;
  bool all_minor = true;
  bool all_weights = true;
  for (const auto& term : terms) {
    const Traits& bt = term.base->traits;
    all_pos = all_pos && sgn(term.coef) > 0;
    all_mono = all_mono && bt.monotone;
    all_add = all_add && bt.compact_additive;
    all_minor = all_minor && (bt.minorant || bt.monotone);
    all_weights = all_weights && bt.weights.has_value();
  }
  const int n = space->universe().count();
  t.monotone = all_pos && all_mono;
  t.compact_additive = all_add;
  if (all_pos && all_minor) {
    // A monotone function with value 0 at the empty set is nonnegative, so the
    // zero weights are a valid minorant for it.
    std::vector<ExtValue> w(n, ExtValue(0));
    for (const auto& term : terms) {
      if (!term.base->traits.minorant) continue;
      const auto& bw = *term.base->traits.minorant;
      for (int i = 0; i < n; ++i) w[i] += term.coef * bw[i];
    }
    t.minorant = std::move(w);
  }
  if (all_weights) {
    std::vector<Rational> w(n, Rational(0));
    for (const auto& term : terms) {
      const auto& bw = *term.base->traits.weights;
      for (int i = 0; i < n; ++i) w[i] += term.coef * bw[i];
    }
    t.weights = std::move(w);
  }
  auto shared_terms = terms;
  Rule rule = [shared_terms, guards](Flavor f, const Region& r) {
    for (const auto& g : guards) {
      if (!SetFunction(std::const_pointer_cast<SetFunctionImpl>(g))(f, r).is_finite()) {
        throw UndefinedSum("inf - inf in " + g->name);
      }
    }
    ExtValue sum(0);
    for (const auto& term : shared_terms) {
      SetFunction base(std::const_pointer_cast<SetFunctionImpl>(term.base));
      sum += term.coef * base(f, r);
    }
    return sum;
  };
  auto impl = std::make_shared<SetFunctionImpl>();
  impl->space = std::move(space);
  impl->name = std::move(name);
  impl->rule = std::move(rule);
  impl->traits = std::move(t);
  impl->terms = std::move(terms);
  impl->guards = std::move(guards);
  return SetFunction(std::move(impl));
}

SetFunction base_of(const Term& t) {
  return SetFunction(std::const_pointer_cast<SetFunctionImpl>(t.base));
}

const Traits& base_traits(const Term& t) { return t.base->traits; }

namespace {

std::string coef_prefix(const Rational& a) {
  if (a == 1) return "";
  return to_string(a) + "*";
}

}  // namespace

SetFunction combine(const Rational& a, const SetFunction& nu1, const Rational& b, const SetFunction& nu2) {
  if (nu1.space() != nu2.space()) throw Error("cannot combine functions on different models");
  std::vector<Term> merged;
  std::vector<std::shared_ptr<const SetFunctionImpl>> guards;
  auto guard = [&](std::shared_ptr<const SetFunctionImpl> g) {
    if (std::find(guards.begin(), guards.end(), g) == guards.end()) guards.push_back(std::move(g));
  };
  auto add = [&](const Rational& c, const SetFunction& f) {
    if (sgn(c) == 0) return;
    for (const auto& g : f.impl_->guards) guard(g);
    for (const auto& t : f.terms()) {
      Rational coef = c * t.coef;
      bool found = false;
      for (auto& m : merged) {
        if (m.base == t.base) {
          if (sgn(m.coef) * sgn(coef) < 0) guard(m.base);
          m.coef += coef;
          found = true;
          break;
        }
      }
      if (!found) merged.push_back({coef, t.base});
    }
  };
  add(a, nu1);
  add(b, nu2);
  std::erase_if(merged, [](const Term& t) { return sgn(t.coef) == 0; });
  std::string name;
  if (sgn(b) == 0) {
    name = coef_prefix(a) + nu1.name();
  } else if (sgn(a) == 0) {
    name = coef_prefix(b) + nu2.name();
  } else if (sgn(b) < 0) {
    name = coef_prefix(a) + nu1.name() + "-" + coef_prefix(-b) + nu2.name();
  } else {
    name = coef_prefix(a) + nu1.name() + "+" + coef_prefix(b) + nu2.name();
  }
  return SetFunction::from_terms(nu1.space(), std::move(name), std::move(merged), std::move(guards));
}

SetFunction scale(const Rational& a, const SetFunction& nu) {
  return combine(a, nu, Rational(0), nu);
}

SetFunction operator+(const SetFunction& a, const SetFunction& b) {
  return combine(Rational(1), a, Rational(1), b);
}

SetFunction operator-(const SetFunction& a, const SetFunction& b) {
  return combine(Rational(1), a, Rational(-1), b);
}

SetFunction operator-(const SetFunction& a) { return scale(Rational(-1), a); }

std::string format_table(const SetFunction& nu) {
  const Space& s = *nu.space();
  if (s.is_grid()) throw Error("format_table needs a lattice model");
  const auto& lat = s.lattice();
  std::ostringstream out;
  auto emit = [&](char tag, Flavor f, const Region& r) {
    out << tag;
    r.for_each([&](int i) { out << ' ' << lat.points()[i]; });
    out << " = " << nu(f, r) << '\n';
  };
  for (const auto& u : s.opens()) emit('O', Flavor::open, u);
  for (const auto& c : s.compacts()) emit('C', Flavor::closed, c);
  return out.str();
}

}  // namespace dtmwb

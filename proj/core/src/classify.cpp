#include "dtmwb/classify.hpp"

#include <algorithm>
#include <mutex>

#include "dtmwb/lp.hpp"
#include "dtmwb/sampling.hpp"
#include "grid_tables.hpp"

namespace dtmwb {

const Violation* ClassificationReport::find(const std::string& axiom) const {
  for (const auto& w : witnesses) {
    if (w.axiom == axiom) return &w;
  }
  return nullptr;
}

namespace {

bool dense_grid(const Space& s) { return s.is_grid() && s.grid().cell_count() <= 16; }

ExtValue checked_sum(const ExtValue& a, const ExtValue& b, bool* ok) {
  try {
    return a + b;
  } catch (const UndefinedSum&) {
    *ok = false;
    return ExtValue(0);
  }
}

class InfinityTracker {
 public:
  void see(const ExtValue& v) {
    pos_ = pos_ || v.is_pos_inf();
    neg_ = neg_ || v.is_neg_inf();
  }
  void finish(const std::string& name) const {
    if (pos_ && neg_) throw MixedInfinities(name + " takes both +inf and -inf");
  }

 private:
  bool pos_ = false;
  bool neg_ = false;
};

// Exact atom-weight feasibility on a lattice: w >= 0 with sum over atoms in R
// equal to nu(R) for every open and closed R.
std::optional<std::vector<Rational>> lattice_measure_weights(const SetFunction& nu,
                                                             std::string* why) {
  const Space& s = *nu.space();
  std::vector<Region> atoms = s.atoms();
  LinearProgram lp;
  lp.n = static_cast<int>(atoms.size());
  lp.c.assign(lp.n, Rational(0));
  auto add = [&](Flavor f, const Region& r) -> bool {
    ExtValue v = nu(f, r);
    if (!v.is_finite()) {
      *why = "infinite value " + v.str() + " at " + std::string(to_string(f)) + " " + s.format(r);
      return false;
    }
    std::vector<Rational> a(lp.n, Rational(0));
    for (int i = 0; i < lp.n; ++i) {
      if (atoms[i].subset_of(r)) a[i] = 1;
    }
    lp.add_row(std::move(a), LinearProgram::Sense::eq, v.value());
    return true;
  };
  for (const auto& u : s.opens()) {
    if (!add(Flavor::open, u)) return std::nullopt;
  }
  for (const auto& c : s.compacts()) {
    if (!add(Flavor::closed, c)) return std::nullopt;
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpResult::Status::optimal) {
    *why = "atom-weight system has no nonnegative solution";
    return std::nullopt;
  }
  std::vector<Rational> w(s.universe().count(), Rational(0));
  // Put each atom's weight on its lowest point.
  for (int i = 0; i < lp.n; ++i) w[atoms[i].lowest()] = res.x[i];
  return w;
}

struct Flags {
  bool nonneg = true, empty = true, welldef = true, additive = true, mixed = true;
  bool inner = true, outer = true, inner_lim = true, outer_lim = true, measure = true;
  bool simple = true, compact_finite = true;
};

void add_violation(ClassificationReport& rep, bool& flag, Violation v) {
  if (flag) rep.witnesses.push_back(std::move(v));
  flag = false;
}

std::string show(const Space& s, Flavor f, const Region& r) {
  return std::string(f == Flavor::open ? "O" : "C") + s.format(r);
}

void common_value_checks(const Space& s, Flavor f, const Region& r, const ExtValue& v,
                         ClassificationReport& rep, Flags& fl, InfinityTracker& inf) {
  inf.see(v);
  if (v.sign() < 0) add_violation(rep, fl.nonneg, {"nonnegative", {{f, r}}, show(s, f, r) + " = " + v.str()});
  if (!(v == ExtValue(0) || v == ExtValue(1))) {
    add_violation(rep, fl.simple, {"simple", {{f, r}}, show(s, f, r) + " = " + v.str()});
  }
  if (f == Flavor::closed && !v.is_finite()) {
    add_violation(rep, fl.compact_finite, {"compact-finite", {{f, r}}, show(s, f, r) + " = " + v.str()});
  }
}

void classify_lattice(const SetFunction& nu, ClassificationReport& rep, Flags& fl, InfinityTracker& inf) {
  const Space& s = *nu.space();
  const auto& C = s.compacts();
  const auto& O = s.opens();
  for (const auto& c : C) common_value_checks(s, Flavor::closed, c, nu.closed(c), rep, fl, inf);
  for (const auto& u : O) common_value_checks(s, Flavor::open, u, nu.open(u), rep, fl, inf);
  inf.finish(nu.name());

  for (Flavor f : {Flavor::open, Flavor::closed}) {
    if (!nu(f, Region{}).is_zero()) {
      add_violation(rep, fl.empty, {"empty", {{f, Region{}}}, "value at the empty set is " + nu(f, Region{}).str()});
    }
  }
  for (const auto& u : O) {
    if (s.lattice().is_closed(u) && nu.open(u) != nu.closed(u)) {
      add_violation(rep, fl.welldef, {"well-defined", {{Flavor::open, u}},
                                      "clopen " + s.format(u) + " has open value " + nu.open(u).str() +
                                          " and closed value " + nu.closed(u).str()});
    }
  }
  for (size_t i = 0; i < C.size(); ++i) {
    for (size_t j = i + 1; j < C.size(); ++j) {
      ++rep.checked;
      if (!s.disjoint(C[i], C[j]) || C[i].empty() || C[j].empty()) continue;
      bool ok = true;
      ExtValue sum = checked_sum(nu.closed(C[i]), nu.closed(C[j]), &ok);
      if (!ok || nu.closed(C[i] | C[j]) != sum) {
        add_violation(rep, fl.additive, {"additive-compacts", {{Flavor::closed, C[i]}, {Flavor::closed, C[j]}},
                                         show(s, Flavor::closed, C[i]) + " + " + show(s, Flavor::closed, C[j])});
      }
    }
  }
  // All disjoint pairs from opens and closeds whose union is again open or closed.
  std::vector<std::pair<Flavor, Region>> all;
  for (const auto& u : O) all.push_back({Flavor::open, u});
  for (const auto& c : C) all.push_back({Flavor::closed, c});
  for (size_t i = 0; i < all.size() && fl.mixed; ++i) {
    for (size_t j = i + 1; j < all.size(); ++j) {
      const auto& [fa, a] = all[i];
      const auto& [fb, b] = all[j];
      if (a.intersects(b) || a.empty() || b.empty()) continue;
      Region r = a | b;
      bool ok = true;
      ExtValue sum = checked_sum(nu(fa, a), nu(fb, b), &ok);
      for (Flavor fr : {Flavor::open, Flavor::closed}) {
        if (!s.is_region(fr, r)) continue;
        ++rep.checked;
        if (!ok || nu(fr, r) != sum) {
          add_violation(rep, fl.mixed, {"additive-mixed", {{fa, a}, {fb, b}, {fr, r}},
                                        show(s, fa, a) + " + " + show(s, fb, b) + " vs " + show(s, fr, r)});
        }
      }
    }
  }
  for (const auto& u : O) {
    ExtValue best = ExtValue::neg_inf();
    for (const auto& c : C) {
      if (c.subset_of(u)) best = max(best, nu.closed(c));
    }
    if (nu.open(u) != best) {
      add_violation(rep, fl.inner, {"inner-regular", {{Flavor::open, u}},
                                    show(s, Flavor::open, u) + " = " + nu.open(u).str() + ", inner max " + best.str()});
    }
    Region k = s.kernel(u);
    if (nu.open(u) != nu.closed(k)) {
      add_violation(rep, fl.inner_lim, {"inner-limit", {{Flavor::open, u}},
                                        show(s, Flavor::open, u) + " vs kernel " + s.format(k)});
    }
  }
  for (const auto& c : C) {
    ExtValue best = ExtValue::inf();
    for (const auto& u : O) {
      if (c.subset_of(u)) best = min(best, nu.open(u));
    }
    if (nu.closed(c) != best) {
      add_violation(rep, fl.outer, {"outer-regular", {{Flavor::closed, c}},
                                    show(s, Flavor::closed, c) + " = " + nu.closed(c).str() + ", outer min " + best.str()});
    }
    Region h = s.hull(c);
    if (nu.closed(c) != nu.open(h)) {
      add_violation(rep, fl.outer_lim, {"outer-limit", {{Flavor::closed, c}},
                                        show(s, Flavor::closed, c) + " vs hull " + s.format(h)});
    }
  }
  std::string why;
  auto w = lattice_measure_weights(nu, &why);
  if (w) {
    rep.weights = *w;
  } else {
    add_violation(rep, fl.measure, {"measure", {}, why});
  }
}

void classify_dense_grid(const SetFunction& nu, ClassificationReport& rep, Flags& fl, InfinityTracker& inf) {
  const Space& s = *nu.space();
  const auto& g = s.grid();
  const int n = g.cell_count();
  const uint32_t full = static_cast<uint32_t>((uint64_t{1} << n) - 1);
  const auto& dC = nu.dense(Flavor::closed);
  const auto& dO = nu.dense(Flavor::open);
  const auto& dil = detail::dilation_table(g);
  auto R = [](uint32_t m) { return Region::from_bits(m); };

  for (uint32_t m = 0; m <= full; ++m) {
    common_value_checks(s, Flavor::closed, R(m), dC[m], rep, fl, inf);
    common_value_checks(s, Flavor::open, R(m), dO[m], rep, fl, inf);
  }
  inf.finish(nu.name());
  for (Flavor f : {Flavor::open, Flavor::closed}) {
    const auto& d = f == Flavor::open ? dO : dC;
    if (!d[0].is_zero()) add_violation(rep, fl.empty, {"empty", {{f, Region{}}}, "value at the empty set is " + d[0].str()});
  }
  if (dO[full] != dC[full]) {
    add_violation(rep, fl.welldef, {"well-defined", {{Flavor::open, R(full)}}, "open and closed values of X differ"});
  }

  // Additivity on model-disjoint pairs, same flavour. On the grid no other
  // disjoint pair of regions has a union that is again a region.
  for (uint32_t a = 1; a <= full; ++a) {
    uint32_t rest = full & ~dil[a];
    for (uint32_t b = rest; b; b = (b - 1) & rest) {
      if (b < a) continue;  // each unordered pair once
      ++rep.checked;
      bool ok = true;
      if (fl.additive) {
        ExtValue sum = checked_sum(dC[a], dC[b], &ok);
        if (!ok || dC[a | b] != sum) {
          add_violation(rep, fl.additive, {"additive-compacts", {{Flavor::closed, R(a)}, {Flavor::closed, R(b)}},
                                           show(s, Flavor::closed, R(a)) + " + " + show(s, Flavor::closed, R(b))});
        }
      }
      if (fl.mixed) {
        ok = true;
        ExtValue sum = checked_sum(dO[a], dO[b], &ok);
        if (!ok || dO[a | b] != sum) {
          add_violation(rep, fl.mixed, {"additive-mixed", {{Flavor::open, R(a)}, {Flavor::open, R(b)}, {Flavor::open, R(a | b)}},
                                        show(s, Flavor::open, R(a)) + " + " + show(s, Flavor::open, R(b))});
        }
      }
    }
  }
  std::vector<ExtValue> inner = detail::subset_max(dC, n);
  std::vector<ExtValue> outer = detail::superset_min(dO, n);
  for (uint32_t m = 0; m <= full; ++m) {
    if (dO[m] != inner[m]) {
      add_violation(rep, fl.inner, {"inner-regular", {{Flavor::open, R(m)}},
                                    show(s, Flavor::open, R(m)) + " = " + dO[m].str() + ", inner max " + inner[m].str()});
    }
    if (dC[m] != outer[m]) {
      add_violation(rep, fl.outer, {"outer-regular", {{Flavor::closed, R(m)}},
                                    show(s, Flavor::closed, R(m)) + " = " + dC[m].str() + ", outer min " + outer[m].str()});
    }
    // kernel and hull are the identity on cell sets.
    if (dO[m] != dC[m]) {
      add_violation(rep, fl.inner_lim, {"inner-limit", {{Flavor::open, R(m)}}, "open and closed values differ at " + s.format(R(m))});
      add_violation(rep, fl.outer_lim, {"outer-limit", {{Flavor::closed, R(m)}}, "open and closed values differ at " + s.format(R(m))});
    }
  }
  std::vector<ExtValue> w(n);
  bool weights_ok = true;
  for (int i = 0; i < n; ++i) {
    w[i] = dC[uint32_t{1} << i];
    if (!w[i].is_finite() || w[i].sign() < 0) {
      add_violation(rep, fl.measure, {"measure", {{Flavor::closed, Region::single(i)}},
                                      "cell weight " + w[i].str() + " is not a finite nonnegative number"});
      weights_ok = false;
      break;
    }
  }
  if (weights_ok) {
    std::vector<ExtValue> sum(full + 1);
    sum[0] = ExtValue(0);
    for (uint32_t m = 1; m <= full; ++m) {
      sum[m] = sum[m & (m - 1)] + w[std::countr_zero(m)];
      for (Flavor f : {Flavor::closed, Flavor::open}) {
        const auto& d = f == Flavor::open ? dO : dC;
        if (fl.measure && d[m] != sum[m]) {
          add_violation(rep, fl.measure, {"measure", {{f, R(m)}},
                                          show(s, f, R(m)) + " = " + d[m].str() + " but cell weights sum to " + sum[m].str()});
        }
      }
    }
    if (fl.measure) {
      for (const auto& x : w) rep.weights.push_back(x.value());
    }
  }
}

void classify_sampled_grid(const SetFunction& nu, const ClassifyOptions& opt, ClassificationReport& rep,
                           Flags& fl, InfinityTracker& inf) {
  const Space& s = *nu.space();
  const auto& g = s.grid();
  rep.exhaustive = false;
  const uint64_t seed = derive_seed(opt.seed, "classify", nu.name());
  std::vector<Region> family = compact_family(s, opt.budget, seed, g.marked());
  RegionSampler sampler(s, seed ^ 0x5bd1e995u, g.marked());
  const Region x = s.universe();

  for (const auto& r : family) {
    common_value_checks(s, Flavor::closed, r, nu.closed(r), rep, fl, inf);
    common_value_checks(s, Flavor::open, r, nu.open(r), rep, fl, inf);
  }
  inf.finish(nu.name());
  for (Flavor f : {Flavor::open, Flavor::closed}) {
    if (!nu(f, Region{}).is_zero()) add_violation(rep, fl.empty, {"empty", {{f, Region{}}}, "value at the empty set is " + nu(f, Region{}).str()});
  }
  if (nu.open(x) != nu.closed(x)) {
    add_violation(rep, fl.welldef, {"well-defined", {{Flavor::open, x}}, "open and closed values of X differ"});
  }
  for (const auto& a : family) {
    ++rep.checked;
    if (nu.open(a) != nu.closed(a)) {
      add_violation(rep, fl.inner_lim, {"inner-limit", {{Flavor::open, a}}, "open and closed values differ at " + s.format(a)});
      add_violation(rep, fl.outer_lim, {"outer-limit", {{Flavor::closed, a}}, "open and closed values differ at " + s.format(a)});
    }
    Region rest = x - g.dilate(a);
    if (!a.empty() && !rest.empty()) {
      Region b = sampler.next_within(rest);
      if (!b.empty()) {
        for (Flavor f : {Flavor::closed, Flavor::open}) {
          bool& flag = f == Flavor::closed ? fl.additive : fl.mixed;
          bool ok = true;
          ExtValue sum = checked_sum(nu(f, a), nu(f, b), &ok);
          inf.see(nu(f, a | b));
          if (!ok || nu(f, a | b) != sum) {
            std::vector<std::pair<Flavor, Region>> regs = {{f, a}, {f, b}};
            if (f == Flavor::open) regs.push_back({f, a | b});
            add_violation(rep, flag, {f == Flavor::closed ? "additive-compacts" : "additive-mixed", regs,
                                      show(s, f, a) + " + " + show(s, f, b)});
          }
        }
      }
    }
    // Definite regularity failures: a subset above the open value, or a
    // superset below the closed value.
    Region sub = sampler.next_within(a);
    if (nu.closed(sub) > nu.open(a)) {
      add_violation(rep, fl.inner, {"inner-regular", {{Flavor::open, a}, {Flavor::closed, sub}},
                                    show(s, Flavor::closed, sub) + " exceeds " + show(s, Flavor::open, a)});
    }
    Region sup = a | sampler.next();
    if (nu.open(sup) < nu.closed(a)) {
      add_violation(rep, fl.outer, {"outer-regular", {{Flavor::closed, a}, {Flavor::open, sup}},
                                    show(s, Flavor::open, sup) + " is below " + show(s, Flavor::closed, a)});
    }
  }
  inf.finish(nu.name());

  std::vector<ExtValue> w(g.cell_count());
  bool weights_ok = true;
  for (int i = 0; i < g.cell_count(); ++i) {
    w[i] = nu.closed(Region::single(i));
    if (!w[i].is_finite() || w[i].sign() < 0) {
      add_violation(rep, fl.measure, {"measure", {{Flavor::closed, Region::single(i)}},
                                      "cell weight " + w[i].str() + " is not a finite nonnegative number"});
      weights_ok = false;
      break;
    }
  }
  if (weights_ok) {
    for (const auto& r : family) {
      ExtValue sum(0);
      r.for_each([&](int i) { sum += w[i]; });
      for (Flavor f : {Flavor::closed, Flavor::open}) {
        if (fl.measure && nu(f, r) != sum) {
          add_violation(rep, fl.measure, {"measure", {{f, r}},
                                          show(s, f, r) + " = " + nu(f, r).str() + " but cell weights sum to " + sum.str()});
        }
      }
    }
    if (fl.measure) {
      for (const auto& v : w) rep.weights.push_back(v.value());
    }
  }
}

}  // namespace

ExtValue inner_max(const SetFunction& nu, const Region& u) {
  const Space& s = *nu.space();
  if (!s.is_grid()) {
    ExtValue best = ExtValue::neg_inf();
    for (const auto& c : s.compacts()) {
      if (c.subset_of(u)) best = max(best, nu.closed(c));
    }
    return best;
  }
  if (nu.traits().monotone) return nu.closed(u);
  if (dense_grid(s)) {
    const auto& d = nu.dense(Flavor::closed);
    uint32_t t = static_cast<uint32_t>(u.low_word());
    ExtValue best = d[0];
    for (uint32_t m = t; m; m = (m - 1) & t) best = max(best, d[m]);
    return best;
  }
  if (u.count() > 16) throw BudgetExceeded("inner maximum over " + std::to_string(u.count()) + " cells");
  ExtValue best = ExtValue::neg_inf();
  for_each_subset(u, [&](const Region& r) { best = max(best, nu.closed(r)); });
  return best;
}

ExtValue outer_value(const SetFunction& nu, const Region& a) {
  const Space& s = *nu.space();
  if (!s.is_grid()) {
    ExtValue best = ExtValue::inf();
    for (const auto& u : s.opens()) {
      if (a.subset_of(u)) best = min(best, nu.open(u));
    }
    return best;
  }
  if (nu.traits().monotone) return nu.open(a);
  if (dense_grid(s)) {
    const auto& d = nu.dense(Flavor::open);
    uint32_t full = static_cast<uint32_t>(s.universe().low_word());
    uint32_t base = static_cast<uint32_t>(a.low_word());
    uint32_t free = full & ~base;
    ExtValue best = d[base];
    for (uint32_t m = free; m; m = (m - 1) & free) best = min(best, d[base | m]);
    return best;
  }
  Region free = s.universe() - a;
  if (free.count() > 16) throw BudgetExceeded("outer minimum over " + std::to_string(free.count()) + " free cells");
  ExtValue best = ExtValue::inf();
  for_each_subset(free, [&](const Region& r) { best = min(best, nu.open(a | r)); });
  return best;
}

ExtValue singleton_value(const SetFunction& nu, int x) {
  const Space& s = *nu.space();
  Region p = Region::single(x);
  if (!s.is_grid() && s.lattice().is_closed(p)) return nu.closed(p);
  return outer_value(nu, p);
}

ExtValue norm(const SetFunction& nu) {
  const Space& s = *nu.space();
  if (dense_grid(s) || !s.is_grid()) {
    ExtValue best(0);
    if (s.is_grid()) {
      for (const auto& v : nu.dense(Flavor::closed)) best = max(best, v.abs());
    } else {
      for (const auto& c : s.compacts()) best = max(best, nu.closed(c).abs());
    }
    return best;
  }
  if (nu.traits().monotone) return nu.closed(s.universe()).abs();
  throw BudgetExceeded("norm of " + nu.name() + " on " + s.label());
}

ClassificationReport classify(const SetFunction& nu, const ClassifyOptions& opt) {
  ClassificationReport rep;
  Flags fl;
  InfinityTracker inf;
  const Space& s = *nu.space();
  if (!s.is_grid()) {
    classify_lattice(nu, rep, fl, inf);
  } else if (dense_grid(s)) {
    classify_dense_grid(nu, rep, fl, inf);
  } else {
    classify_sampled_grid(nu, opt, rep, fl, inf);
  }

  rep.is_sdtm = fl.empty && fl.welldef && fl.additive && fl.inner_lim && fl.outer_lim;
  rep.is_stm = rep.is_sdtm && fl.mixed;
  rep.is_dtm = fl.nonneg && fl.empty && fl.welldef && fl.additive && fl.inner && fl.outer;
  rep.is_tm = rep.is_dtm && fl.mixed;
  rep.is_measure_restriction = fl.measure;
  rep.compact_finite = fl.compact_finite;
  rep.simple = fl.simple;

  // Finiteness taxonomy.
  rep.singleton_finite = true;
  rep.locally_finite = true;
  const int npts = s.universe().count();
  for (int x = 0; x < npts; ++x) {
    ExtValue v;
    try {
      v = singleton_value(nu, x);
    } catch (const BudgetExceeded&) {
      v = nu.open(Region::single(x));
      rep.exhaustive = false;
    }
    if (!v.is_finite() && rep.singleton_finite) {
      rep.singleton_finite = false;
      rep.witnesses.push_back({"singleton-finite", {{Flavor::closed, Region::single(x)}},
                               "value at point " + s.point_name(x) + " is " + v.str()});
    }
    bool local = false;
    if (!s.is_grid()) {
      for (const auto& u : s.opens()) {
        if (u.test(x) && nu.open(u).is_finite()) {
          local = true;
          break;
        }
      }
    } else {
      Region p = Region::single(x);
      local = nu.open(p).is_finite() || nu.open(s.grid().dilate(p)).is_finite() ||
              nu.open(s.universe()).is_finite();
    }
    if (!local && rep.locally_finite) {
      rep.locally_finite = false;
      rep.witnesses.push_back({"locally-finite", {{Flavor::closed, Region::single(x)}},
                               "no open set of finite value around " + s.point_name(x)});
    }
  }
  try {
    rep.norm = norm(nu);
  } catch (const BudgetExceeded&) {
    rep.norm_exact = false;
    rep.norm = nu.closed(s.universe()).abs();
  }
  rep.finite = rep.norm.is_finite() && rep.compact_finite;
  if (!rep.finite) {
    rep.witnesses.push_back({"finite", {{Flavor::closed, s.universe()}}, "norm is " + rep.norm.str()});
  }
  rep.is_radon_surrogate = rep.is_measure_restriction && rep.is_dtm && rep.compact_finite;
  return rep;
}

bool recheck(const SetFunction& nu, const Violation& v) {
  const Space& s = *nu.space();
  auto val = [&](size_t i) { return nu(v.regions.at(i).first, v.regions.at(i).second); };
  auto reg = [&](size_t i) { return v.regions.at(i).second; };
  const std::string& a = v.axiom;
  if (a == "nonnegative") return val(0).sign() < 0;
  if (a == "empty") return !val(0).is_zero();
  if (a == "well-defined") return nu.open(reg(0)) != nu.closed(reg(0));
  if (a == "simple") return !(val(0) == ExtValue(0) || val(0) == ExtValue(1));
  if (a == "compact-finite" || a == "finite") return !val(0).is_finite();
  if (a == "additive-compacts" || a == "additive-mixed") {
    Flavor fr = v.regions.size() > 2 ? v.regions[2].first : Flavor::closed;
    Region r = reg(0) | reg(1);
    if (v.regions.size() > 2 && reg(2) != r) return false;
    bool disjoint = v.regions[0].first == v.regions[1].first ? s.disjoint(reg(0), reg(1))
                                                             : !reg(0).intersects(reg(1));
    if (!disjoint) return false;
    try {
      return nu(fr, r) != val(0) + val(1);
    } catch (const UndefinedSum&) {
      return true;
    }
  }
  if (a == "inner-regular") {
    if (v.regions.size() > 1) {
      return s.contained(Flavor::closed, reg(1), Flavor::open, reg(0)) && val(1) > val(0);
    }
    return nu.open(reg(0)) != inner_max(nu, reg(0));
  }
  if (a == "outer-regular") {
    if (v.regions.size() > 1) {
      return s.contained(Flavor::closed, reg(0), Flavor::open, reg(1)) && val(1) < val(0);
    }
    return nu.closed(reg(0)) != outer_value(nu, reg(0));
  }
  if (a == "inner-limit") return nu.open(reg(0)) != nu.closed(s.kernel(reg(0)));
  if (a == "outer-limit") return nu.closed(reg(0)) != nu.open(s.hull(reg(0)));
  if (a == "singleton-finite") return !singleton_value(nu, reg(0).lowest()).is_finite();
  if (a == "locally-finite") {
    int x = reg(0).lowest();
    if (!s.is_grid()) {
      for (const auto& u : s.opens()) {
        if (u.test(x) && nu.open(u).is_finite()) return false;
      }
      return true;
    }
    return !nu.open(reg(0)).is_finite();
  }
  if (a == "measure") {
    if (!s.is_grid()) {
      std::string why;
      return !lattice_measure_weights(nu, &why).has_value();
    }
    if (v.regions.empty()) return false;
    const Region& r = reg(0);
    if (r.count() == 1 && v.regions[0].first == Flavor::closed) {
      ExtValue w = val(0);
      if (!w.is_finite() || w.sign() < 0) return true;
    }
    ExtValue sum(0);
    bool bad = false;
    r.for_each([&](int i) {
      ExtValue w = nu.closed(Region::single(i));
      if (!w.is_finite() || w.sign() < 0) bad = true;
      else sum += w;
    });
    return bad || val(0) != sum;
  }
  return false;
}

MonotonicityReport check_superadditive_monotone(const SetFunction& nu, const ClassifyOptions& opt) {
  MonotonicityReport rep;
  const Space& s = *nu.space();
  auto fail_mono = [&](Flavor fa, const Region& a, Flavor fb, const Region& b) {
    if (!rep.monotone) return;
    rep.monotone = false;
    rep.violation = Violation{"monotone", {{fa, a}, {fb, b}},
                              show(s, fa, a) + " = " + nu(fa, a).str() + " exceeds " + show(s, fb, b) +
                                  " = " + nu(fb, b).str()};
  };
  if (!s.is_grid()) {
    std::vector<std::pair<Flavor, Region>> all;
    for (const auto& u : s.opens()) all.push_back({Flavor::open, u});
    for (const auto& c : s.compacts()) all.push_back({Flavor::closed, c});
    for (const auto& [fa, a] : all) {
      for (const auto& [fb, b] : all) {
        if (a.subset_of(b) && nu(fa, a) > nu(fb, b)) fail_mono(fa, a, fb, b);
      }
    }
  } else if (dense_grid(s)) {
    const auto& g = s.grid();
    const int n = g.cell_count();
    const uint32_t full = (uint32_t{1} << n) - 1;
    const auto& dC = nu.dense(Flavor::closed);
    const auto& dO = nu.dense(Flavor::open);
    const auto& dil = detail::dilation_table(g);
    auto R = [](uint32_t m) { return Region::from_bits(m); };
    // Covering steps suffice by transitivity.
    for (uint32_t m = 0; m <= full && rep.monotone; ++m) {
      for (int i = 0; i < n; ++i) {
        uint32_t up = m | (uint32_t{1} << i);
        if (up == m) continue;
        if (dC[m] > dC[up]) fail_mono(Flavor::closed, R(m), Flavor::closed, R(up));
        if (dO[m] > dO[up]) fail_mono(Flavor::open, R(m), Flavor::open, R(up));
      }
      if (dC[m] > dO[m]) fail_mono(Flavor::closed, R(m), Flavor::open, R(m));
      if (dO[m] > dC[dil[m]]) fail_mono(Flavor::open, R(m), Flavor::closed, R(dil[m]));
    }
  } else {
    rep.exhaustive = false;
    RegionSampler sampler(s, derive_seed(opt.seed, "monotone", nu.name()), s.grid().marked());
    for (size_t t = 0; t < opt.budget && rep.monotone; ++t) {
      Region b = sampler.next();
      Region a = sampler.next_within(b);
      if (nu.closed(a) > nu.closed(b)) fail_mono(Flavor::closed, a, Flavor::closed, b);
      if (nu.open(a) > nu.open(b)) fail_mono(Flavor::open, a, Flavor::open, b);
      if (nu.closed(a) > nu.open(b)) fail_mono(Flavor::closed, a, Flavor::open, b);
    }
  }

  // Superadditivity is always checked on sampled disjoint families.
  rep.exhaustive = false;
  RegionSampler sampler(s, derive_seed(opt.seed, "superadditive", nu.name()),
                        s.is_grid() ? s.grid().marked() : std::vector<Cell>{});
  const size_t rounds = std::min<size_t>(opt.budget, 4000);
  for (size_t t = 0; t < rounds && rep.superadditive; ++t) {
    Flavor hf = t % 2 ? Flavor::open : Flavor::closed;
    Region host = t % 4 < 2 ? s.universe() : sampler.next();
    if (!s.is_grid()) {
      const auto& fam = hf == Flavor::open ? s.opens() : s.compacts();
      std::uniform_int_distribution<size_t> pick(0, fam.size() - 1);
      host = t % 4 < 2 ? s.universe() : fam[pick(sampler.rng())];
    }
    std::vector<Region> pieces;
    Region blocked;
    for (int j = 0; j < 4; ++j) {
      Region room = host - blocked;
      if (room.empty()) break;
      Region p;
      if (s.is_grid()) {
        p = sampler.next_within(room);
      } else {
        std::vector<Region> cands;
        for (const auto& c : s.compacts()) {
          if (!c.empty() && c.subset_of(room)) cands.push_back(c);
        }
        if (cands.empty()) break;
        std::uniform_int_distribution<size_t> pick(0, cands.size() - 1);
        p = cands[pick(sampler.rng())];
      }
      if (p.empty()) continue;
      if (!s.contained(Flavor::closed, p, hf, host)) continue;
      pieces.push_back(p);
      blocked |= s.is_grid() ? s.grid().dilate(p) : p;
    }
    if (pieces.empty()) continue;
    ExtValue sum(0);
    bool ok = true;
    for (const auto& p : pieces) sum = checked_sum(sum, nu.closed(p), &ok);
    if (!ok) continue;
    ExtValue hv = nu(hf, host);
    std::vector<std::pair<Flavor, Region>> regs = {{hf, host}};
    for (const auto& p : pieces) regs.push_back({Flavor::closed, p});
    if (hv < sum) {
      rep.superadditive = false;
      rep.violation = Violation{"superadditive", regs, show(s, hf, host) + " = " + hv.str() + " < " + sum.str()};
    } else if (hv > sum && pieces.size() >= 2 && !rep.strict_witness) {
      rep.strict_witness = Violation{"strict-superadditive", regs, show(s, hf, host) + " = " + hv.str() + " > " + sum.str()};
    }
  }
  return rep;
}

RegularizeResult regularize(const SetFunction& raw, const ClassifyOptions& opt) {
  const SpacePtr& sp = raw.space();
  const Space& s = *sp;
  RegularizeResult res;
  Traits t;
  t.minorant = raw.traits().minorant;
  if (!s.is_grid()) {
    std::map<std::pair<Flavor, Region>, ExtValue> table;
    for (const auto& u : s.opens()) table[{Flavor::open, u}] = inner_max(raw, u);
    for (const auto& c : s.compacts()) {
      ExtValue best = ExtValue::inf();
      for (const auto& u : s.opens()) {
        if (c.subset_of(u)) best = min(best, table[{Flavor::open, u}]);
      }
      table[{Flavor::closed, c}] = best;
      if (best != raw.closed(c)) res.conflicts.push_back(c);
    }
    res.fn = SetFunction::from_table(sp, raw.name(), std::move(table), std::move(t));
    return res;
  }
  t.monotone = true;
  if (raw.traits().monotone) {
    t.compact_additive = raw.traits().compact_additive;
    t.weights = raw.traits().weights;
    SetFunction src = raw;
    res.fn = SetFunction::from_rule(sp, raw.name(), [src](Flavor, const Region& r) { return src.closed(r); },
                                    std::move(t));
    return res;
  }
  if (dense_grid(s)) {
    const int n = s.grid().cell_count();
    auto table = std::make_shared<std::vector<ExtValue>>(detail::subset_max(raw.dense(Flavor::closed), n));
    const auto& dC = raw.dense(Flavor::closed);
    for (uint32_t m = 0; m < table->size(); ++m) {
      if ((*table)[m] != dC[m]) res.conflicts.push_back(Region::from_bits(m));
    }
    if (res.conflicts.empty()) t.compact_additive = raw.traits().compact_additive;
    res.fn = SetFunction::from_rule(sp, raw.name(),
                                    [table](Flavor, const Region& r) { return (*table)[r.low_word()]; },
                                    std::move(t));
    return res;
  }
  SetFunction src = raw;
  res.fn = SetFunction::from_rule(sp, raw.name(), [src](Flavor, const Region& r) { return inner_max(src, r); },
                                  std::move(t));
  res.conflicts_exhaustive = false;
  std::vector<Region> family = compact_family(s, std::min<size_t>(opt.budget, 2000),
                                              derive_seed(opt.seed, "regularize", raw.name()), s.grid().marked());
  for (const auto& r : family) {
    if (r.count() > 16) continue;
    if (res.fn.closed(r) != raw.closed(r)) res.conflicts.push_back(r);
  }
  return res;
}

}  // namespace dtmwb

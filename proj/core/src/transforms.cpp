#include "dtmwb/transforms.hpp"

#include <map>
#include <mutex>

#include "dtmwb/lp.hpp"
#include "dtmwb/sampling.hpp"
#include "grid_tables.hpp"

namespace dtmwb {

namespace {

bool dense_grid(const Space& s) { return s.is_grid() && s.grid().cell_count() <= 16; }

std::vector<Cell> marks_of(const Space& s) { return s.is_grid() ? s.grid().marked() : std::vector<Cell>{}; }

// a <= b + c without throwing on undefined sums (an undefined sum counts as a failure).
bool le_sum(const ExtValue& a, const ExtValue& b, const ExtValue& c) {
  try {
    return a <= b + c;
  } catch (const UndefinedSum&) {
    return false;
  }
}

std::string pair_text(const Space& s, const Region& a, const Region& b) {
  return s.format(a) + " and " + s.format(b);
}

// Memoized per-region values shared by the closures of one derived function.
class ValueCache {
 public:
  template <class F>
  ExtValue get(const Region& r, F&& compute) {
    {
      std::lock_guard lock(mu_);
      auto it = vals_.find(r);
      if (it != vals_.end()) return it->second;
    }
    ExtValue v = compute(r);
    std::lock_guard lock(mu_);
    vals_.emplace(r, v);
    return v;
  }

 private:
  std::mutex mu_;
  std::map<Region, ExtValue> vals_;
};

}  // namespace

EvaluationFamily evaluation_family(const SpacePtr& space, size_t budget, uint64_t seed, std::string_view tag) {
  EvaluationFamily fam;
  if (space->enumerable()) {
    fam.compacts = space->compacts();
    fam.exhaustive = true;
    return fam;
  }
  fam.compacts = compact_family(*space, budget, derive_seed(seed, "family", tag), marks_of(*space), &fam.exhaustive);
  return fam;
}

VariationResult positive_variation(const SetFunction& lambda, const ClassifyOptions& opt) {
  const SpacePtr& sp = lambda.space();
  auto fam = evaluation_family(sp, opt.budget, opt.seed, "plus:" + lambda.name());
  bool pos_inf = false;
  bool neg_inf = false;
  for (const auto& r : fam.compacts) {
    ExtValue v = lambda.peek(Flavor::closed, r);
    pos_inf = pos_inf || v.is_pos_inf();
    neg_inf = neg_inf || v.is_neg_inf();
  }
  if (pos_inf && neg_inf) throw MixedInfinities(lambda.name() + " takes both +inf and -inf");
  RegularizeResult reg = regularize(lambda, opt);
  VariationResult res;
  res.fn = reg.fn.renamed(lambda.name() + "+");
  for (const auto& r : fam.compacts) {
    if (lambda.peek(Flavor::closed, r) > res.fn.closed(r)) res.below_input_failures.push_back(r);
  }
  res.report = classify(res.fn, opt);
  return res;
}

VariationResult negative_variation(const SetFunction& lambda, const ClassifyOptions& opt) {
  return positive_variation(-lambda, opt);
}

SetFunction total_variation(const SetFunction& lambda, const SearchOptions& opt, std::optional<SetFunction> bound) {
  auto solver = std::make_shared<const PackingSolver>(lambda, opt, std::move(bound));
  SpacePtr sp = lambda.space();
  std::string name = "|" + lambda.name() + "|";
  auto cache = std::make_shared<ValueCache>();
  auto open_value = [solver, name, sp, cache](const Region& u) {
    return cache->get(u, [&](const Region& r) {
      PackingCertificate c = solver->solve(r);
      if (!c.optimal) throw SearchBudgetExceeded(name + " on " + sp->format(r), c.total, c.upper);
      return c.total;
    });
  };
  Traits t;
  Rule rule;
  if (sp->is_grid()) {
    // A packing inside cells T is a packing inside every superset of T.
    t.monotone = true;
    t.minorant = std::vector<ExtValue>(sp->universe().count(), ExtValue(0));
    rule = [open_value](Flavor, const Region& r) { return open_value(r); };
  } else {
    rule = [open_value, sp](Flavor f, const Region& r) {
      if (f == Flavor::open) return open_value(r);
      ExtValue best = ExtValue::inf();
      for (const auto& u : sp->opens()) {
        if (r.subset_of(u)) best = min(best, open_value(u));
      }
      return best;
    };
  }
  return SetFunction::from_rule(sp, name, std::move(rule), std::move(t));
}

Check variation_subadditivity(const SetFunction& lambda, const SetFunction& nu, size_t budget, uint64_t seed) {
  const SpacePtr& sp = lambda.space();
  std::vector<Region> hosts;
  bool exhaustive = true;
  if (!sp->is_grid()) {
    hosts = sp->opens();
  } else {
    auto fam = evaluation_family(sp, budget, seed, "tv-sub:" + lambda.name() + "," + nu.name());
    exhaustive = fam.exhaustive;
    hosts = std::move(fam.compacts);
    if (hosts.size() > budget) {
      // Enumerable grids list every region; a seeded subset keeps the packing searches short.
      std::mt19937_64 rng(derive_seed(seed, "tv-sub-pick", lambda.name()));
      std::shuffle(hosts.begin(), hosts.end(), rng);
      hosts.resize(budget);
      exhaustive = false;
    }
  }
  SetFunction a = total_variation(lambda);
  SetFunction b = total_variation(nu);
  SetFunction s = total_variation(lambda + nu);
  SetFunction d = total_variation(lambda - nu);
  uint64_t checked = 0;
  bool bounded = false;
  for (const auto& u : hosts) {
    try {
      ExtValue ra = a.open(u);
      ExtValue rb = b.open(u);
      if (!le_sum(s.open(u), ra, rb)) {
        return make_check("variation-subadditive", false, "|sum| exceeds the bound on " + sp->format(u),
                          exhaustive, checked);
      }
      if (!le_sum(d.open(u), ra, rb)) {
        return make_check("variation-subadditive", false, "|difference| exceeds the bound on " + sp->format(u),
                          exhaustive, checked);
      }
      ++checked;
    } catch (const SearchBudgetExceeded&) {
      bounded = true;
    }
  }
  Check c = make_check("variation-subadditive", true, {}, exhaustive && !bounded, checked);
  if (bounded && checked == 0) c.verdict = Verdict::bound_only;
  return c;
}

SetFunction tilde_function(const SetFunction& nu, const SearchOptions& opt) {
  auto solver = std::make_shared<const TildeSolver>(nu, opt);
  SpacePtr sp = nu.space();
  std::string name = nu.name() + "~";
  auto cache = std::make_shared<ValueCache>();
  auto closed_value = [solver, name, sp, cache](const Region& k) {
    return cache->get(k, [&](const Region& r) {
      CoverCertificate c = solver->solve(r);
      if (!c.optimal) throw SearchBudgetExceeded(name + " on " + sp->format(r), c.lower, c.total);
      return c.total;
    });
  };
  Traits t;
  Rule rule;
  if (sp->is_grid()) {
    // Every cell set is compact here: a cover of T restricts to a cover of
    // any subset, and a cover of two separated sets splits between them.
    t.monotone = true;
    t.compact_additive = true;
    if (const auto& w = nu.traits().minorant) {
      bool nonneg = std::all_of(w->begin(), w->end(), [](const ExtValue& x) { return x.sign() >= 0; });
      if (nonneg) t.minorant = w;
    }
    rule = [closed_value](Flavor, const Region& r) { return closed_value(r); };
  } else {
    rule = [closed_value, sp](Flavor f, const Region& r) {
      if (f == Flavor::closed) return closed_value(r);
      ExtValue best(0);
      for (const auto& c : sp->compacts()) {
        if (c.subset_of(r)) best = max(best, closed_value(c));
      }
      return best;
    };
  }
  return SetFunction::from_rule(sp, name, std::move(rule), std::move(t));
}

namespace {

// Unrestricted cover minimum on a lattice: pieces are arbitrary closed sets.
ExtValue lattice_unrestricted_cover(const SetFunction& nu, const Region& k) {
  const auto& C = nu.space()->compacts();
  std::map<Region, ExtValue> memo;
  std::function<ExtValue(const Region&)> f = [&](const Region& s) -> ExtValue {
    if (s.empty()) return ExtValue(0);
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    const int x = s.lowest();
    ExtValue best = ExtValue::inf();
    for (const auto& c : C) {
      if (!c.test(x)) continue;
      best = min(best, nu.closed(c) + f(s - c));
    }
    memo.emplace(s, best);
    return best;
  };
  return f(k);
}

std::vector<Check> tilde_suite_dense(const SetFunction& nu, const SetFunction& tf) {
  const Space& s = *nu.space();
  const int n = s.grid().cell_count();
  const uint32_t full = (uint32_t{1} << n) - 1;
  const auto& T = tf.dense(Flavor::closed);
  const auto& D = nu.dense(Flavor::closed);
  const auto& dil = detail::dilation_table(s.grid());
  const uint64_t total = uint64_t{full} + 1;
  std::vector<Check> out;
  auto R = [](uint32_t m) { return Region::from_bits(m); };

  out.push_back(make_check("p1", T[0].is_zero(), T[0].is_zero() ? "" : "value " + T[0].str() + " at the empty set",
                           true, 1));

  {
    std::string w;
    for (uint32_t m = 0; m <= full && w.empty(); ++m) {
      if (T[m] > D[m]) w = s.format(R(m)) + ": " + T[m].str() + " > " + D[m].str();
    }
    out.push_back(make_check("p2", w.empty(), w, true, total));
  }
  {
    // One-cell steps cover every nested pair by transitivity.
    std::string w;
    for (uint32_t m = 0; m <= full && w.empty(); ++m) {
      for (int i = 0; i < n; ++i) {
        uint32_t up = m | (uint32_t{1} << i);
        if (T[m] > T[up]) {
          w = pair_text(s, R(m), R(up));
          break;
        }
      }
    }
    out.push_back(make_check("p3", w.empty(), w, true, total * n));
  }
  auto ints = detail::IntTable::build(T);
  {
    // Disjoint pairs suffice: K u C = K u (C \ K) and p3 holds.
    std::string w;
    uint64_t pairs = 0;
    for (uint32_t a = 0; a <= full && w.empty(); ++a) {
      const uint32_t rest = full & ~a;
      for (uint32_t b = rest;; b = (b - 1) & rest) {
        ++pairs;
        bool ok = ints ? ints->v[a | b] <= detail::IntTable::add(ints->v[a], ints->v[b])
                       : le_sum(T[a | b], T[a], T[b]);
        if (!ok) {
          w = pair_text(s, R(a), R(b));
          break;
        }
        if (b == 0) break;
      }
    }
    out.push_back(make_check("p4", w.empty(), w, true, pairs));
  }
  {
    // Intersecting the pieces of any cover with K gives a cover of K by
    // subsets, so the restricted minimum equals the general one as soon as nu
    // is monotone; checked in one-cell steps.
    std::string w;
    for (uint32_t m = 0; m <= full && w.empty(); ++m) {
      for (int i = 0; i < n; ++i) {
        uint32_t up = m | (uint32_t{1} << i);
        if (D[m] > D[up]) {
          w = "nu decreases from " + pair_text(s, R(m), R(up));
          break;
        }
      }
    }
    out.push_back(make_check("p5", w.empty(), w, true, total * n));
  }
  {
    std::string w;
    uint64_t pairs = 0;
    for (uint32_t a = 1; a <= full && w.empty(); ++a) {
      const uint32_t rest = full & ~dil[a];
      for (uint32_t b = rest; b; b = (b - 1) & rest) {
        ++pairs;
        bool ok;
        if (ints) {
          ok = ints->v[a | b] == detail::IntTable::add(ints->v[a], ints->v[b]);
        } else {
          try {
            ok = T[a | b] == T[a] + T[b];
          } catch (const UndefinedSum&) {
            ok = false;
          }
        }
        if (!ok) {
          w = pair_text(s, R(a), R(b));
          break;
        }
      }
    }
    out.push_back(make_check("p6", w.empty(), w, true, pairs));
  }
  {
    bool finite = std::all_of(D.begin(), D.end(), [](const ExtValue& v) { return v.is_finite(); });
    std::string w;
    if (finite) {
      for (uint32_t m = 0; m <= full && w.empty(); ++m) {
        if (!T[m].is_finite()) w = s.format(R(m)) + " has value " + T[m].str();
      }
      out.push_back(make_check("p7", w.empty(), w, true, total));
    } else {
      out.push_back(skipped_check("p7", "nu is not compact-finite"));
    }
  }
  return out;
}

}  // namespace

std::vector<Check> tilde_properties_suite(const SetFunction& nu, size_t budget, uint64_t seed,
                                          const SearchOptions& search) {
  SetFunction tf = tilde_function(nu, search);
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  if (dense_grid(s)) return tilde_suite_dense(nu, tf);

  std::vector<Check> out;
  auto fam = evaluation_family(sp, budget, seed, "tilde:" + nu.name());
  const auto& F = fam.compacts;
  const bool lattice = !s.is_grid();
  RegionSampler sampler(s, derive_seed(seed, "tilde-pairs", nu.name()), marks_of(s));

  ExtValue e = tf.closed(Region{});
  out.push_back(make_check("p1", e.is_zero(), e.is_zero() ? "" : "value " + e.str() + " at the empty set", true, 1));

  {
    std::string w;
    for (const auto& k : F) {
      if (tf.closed(k) > nu.closed(k)) {
        w = s.format(k);
        break;
      }
    }
    out.push_back(make_check("p2", w.empty(), w, fam.exhaustive, F.size()));
  }

  // Pair checks: every pair on a lattice, sampled pairs on a large grid.
  auto for_pairs = [&](auto&& pick, auto&& test) -> std::pair<std::string, uint64_t> {
    uint64_t count = 0;
    if (lattice) {
      for (const auto& a : F) {
        for (const auto& b : F) {
          ++count;
          if (!test(a, b)) return {pair_text(s, a, b), count};
        }
      }
      return {"", count};
    }
    for (size_t i = 0; i < budget; ++i) {
      auto [a, b] = pick();
      ++count;
      if (!test(a, b)) return {pair_text(s, a, b), count};
    }
    return {"", count};
  };

  {
    auto [w, cnt] = for_pairs(
        [&] {
          Region c = sampler.next();
          return std::make_pair(sampler.next_within(c), c);
        },
        [&](const Region& a, const Region& b) { return !a.subset_of(b) || tf.closed(a) <= tf.closed(b); });
    out.push_back(make_check("p3", w.empty(), w, lattice, cnt));
  }
  {
    auto [w, cnt] = for_pairs([&] { return std::make_pair(sampler.next(), sampler.next()); },
                              [&](const Region& a, const Region& b) {
                                return le_sum(tf.closed(a | b), tf.closed(a), tf.closed(b));
                              });
    out.push_back(make_check("p4", w.empty(), w, lattice, cnt));
  }
  if (lattice) {
    std::string w;
    for (const auto& k : F) {
      ExtValue general = lattice_unrestricted_cover(nu, k);
      if (general != tf.closed(k)) {
        w = s.format(k) + ": " + general.str() + " vs " + tf.closed(k).str();
        break;
      }
    }
    out.push_back(make_check("p5", w.empty(), w, true, F.size()));
  } else {
    // Same reduction as on small grids: nu(P n K) <= nu(P) for sampled P, K.
    auto [w, cnt] = for_pairs([&] { return std::make_pair(sampler.next(), sampler.next()); },
                              [&](const Region& p, const Region& k) { return nu.peek(Flavor::closed, p & k) <= nu.peek(Flavor::closed, p); });
    out.push_back(make_check("p5", w.empty(), w, false, cnt));
  }
  {
    auto [w, cnt] = for_pairs(
        [&] {
          Region a = sampler.next();
          Region rest = s.universe() - s.grid().dilate(a);
          return std::make_pair(a, sampler.next_within(rest));
        },
        [&](const Region& a, const Region& b) {
          if (!s.disjoint(a, b)) return true;
          try {
            return tf.closed(a | b) == tf.closed(a) + tf.closed(b);
          } catch (const UndefinedSum&) {
            return false;
          }
        });
    out.push_back(make_check("p6", w.empty(), w, lattice, cnt));
  }
  {
    bool finite = std::all_of(F.begin(), F.end(), [&](const Region& k) { return nu.closed(k).is_finite(); });
    if (finite) {
      std::string w;
      for (const auto& k : F) {
        if (!tf.closed(k).is_finite()) {
          w = s.format(k);
          break;
        }
      }
      out.push_back(make_check("p7", w.empty(), w, fam.exhaustive, F.size()));
    } else {
      out.push_back(skipped_check("p7", "nu is not compact-finite"));
    }
  }
  return out;
}

RadonPart radon_part(const SetFunction& nu, const SearchOptions& search, size_t budget, uint64_t seed) {
  RadonPart out;
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  out.tilde = tilde_function(nu, search);
  ClassifyOptions co;
  co.budget = budget;
  co.seed = seed;
  VariationResult pv = positive_variation(out.tilde, co);
  out.m = pv.fn.renamed("m[" + nu.name() + "]");
  RadonDiagnostics& d = out.diagnostics;
  d.report = pv.report;
  d.measure_restriction = pv.report.is_measure_restriction;

  auto fam = evaluation_family(sp, budget, seed, "radon:" + nu.name());
  std::vector<Region> opens = s.is_grid() ? fam.compacts : s.opens();
  {
    std::string w;
    for (const auto& k : fam.compacts) {
      if (out.m.closed(k) > nu.closed(k)) {
        w = "closed " + s.format(k);
        break;
      }
    }
    for (const auto& u : opens) {
      if (!w.empty()) break;
      if (out.m.open(u) > nu.open(u)) w = "open " + s.format(u);
    }
    d.below_nu = make_check("m-below-nu", w.empty(), w, fam.exhaustive, fam.compacts.size() + opens.size());
  }
  {
    std::string w;
    uint64_t cnt = 0;
    if (!s.is_grid()) {
      for (const auto& u : opens) {
        for (const auto& v : opens) {
          ++cnt;
          if (!le_sum(out.m.open(u | v), out.m.open(u), out.m.open(v))) {
            w = pair_text(s, u, v);
            break;
          }
        }
        if (!w.empty()) break;
      }
    } else {
      std::mt19937_64 rng(derive_seed(seed, "radon-pairs", nu.name()));
      std::uniform_int_distribution<size_t> pick(0, opens.size() - 1);
      for (size_t i = 0; i < budget; ++i) {
        const Region& u = opens[pick(rng)];
        const Region& v = opens[pick(rng)];
        ++cnt;
        if (!le_sum(out.m.open(u | v), out.m.open(u), out.m.open(v))) {
          w = pair_text(s, u, v);
          break;
        }
      }
    }
    d.open_subadditive = make_check("m-open-subadditive", w.empty(), w, !s.is_grid(), cnt);
  }
  {
    bool finite = std::all_of(fam.compacts.begin(), fam.compacts.end(),
                              [&](const Region& k) { return nu.closed(k).is_finite(); });
    if (!finite) {
      d.compact_finite = skipped_check("m-compact-finite", "nu is not compact-finite");
    } else {
      std::string w;
      for (const auto& k : fam.compacts) {
        if (!out.m.closed(k).is_finite()) {
          w = s.format(k);
          break;
        }
      }
      d.compact_finite = make_check("m-compact-finite", w.empty(), w, fam.exhaustive, fam.compacts.size());
    }
  }
  return out;
}

namespace {

struct Piece {
  Region r;
  ExtValue cost;
};

// Minimum total cost of pieces whose union contains `target`.
ExtValue cover_min(const Region& target, const std::vector<Piece>& pieces, std::vector<Region>& chosen) {
  std::map<Region, std::pair<ExtValue, int>> memo;
  std::function<ExtValue(const Region&)> f = [&](const Region& s) -> ExtValue {
    if (s.empty()) return ExtValue(0);
    auto it = memo.find(s);
    if (it != memo.end()) return it->second.first;
    const int x = s.lowest();
    ExtValue best = ExtValue::inf();
    int arg = -1;
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (!pieces[i].r.test(x)) continue;
      ExtValue v = pieces[i].cost + f(s - pieces[i].r);
      if (arg < 0 || v < best) {
        best = v;
        arg = static_cast<int>(i);
      }
    }
    memo[s] = {best, arg};
    return best;
  };
  ExtValue total = f(target);
  chosen.clear();
  for (Region s = target; !s.empty();) {
    int i = memo.at(s).second;
    if (i < 0) break;
    chosen.push_back(pieces[i].r);
    s = s - pieces[i].r;
  }
  return total;
}

}  // namespace

CoverFormulas open_cover_formulas(const SetFunction& nu, const Region& u, const SearchOptions& search) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  if (!nu.open(u).is_finite()) throw InfiniteValue(nu.name() + " is infinite on " + s.format(u));
  CoverFormulas out;
  out.covers.resize(4);
  if (!s.is_grid()) {
    std::vector<Piece> mixed, closed, open, inside;
    for (const auto& c : s.compacts()) {
      mixed.push_back({c, nu.closed(c)});
      closed.push_back({c, nu.closed(c)});
    }
    for (const auto& o : s.opens()) {
      mixed.push_back({o, nu.open(o)});
      open.push_back({o, nu.open(o)});
      if (o.subset_of(u)) inside.push_back({o, nu.open(o)});
    }
    out.values[0] = cover_min(u, mixed, out.covers[0]);
    out.values[1] = cover_min(u, closed, out.covers[1]);
    out.values[2] = cover_min(u, open, out.covers[2]);
    out.values[3] = cover_min(u, inside, out.covers[3]);
  } else {
    // Cell sets carry both flavours; pieces may be cut down to subsets of U
    // because nu is monotone (checked by the solver).
    SetFunction nu_open = SetFunction::from_rule(
        sp, nu.name() + "[open]", [nu](Flavor, const Region& r) { return nu.open(r); }, nu.traits());
    SetFunction nu_min = SetFunction::from_rule(
        sp, nu.name() + "[min]", [nu](Flavor, const Region& r) { return min(nu.open(r), nu.closed(r)); },
        nu.traits());
    auto run = [&](const SetFunction& f, int slot) {
      CoverCertificate c = TildeSolver(f, search).solve(u);
      if (!c.optimal) throw SearchBudgetExceeded("cover formula on " + s.format(u), c.lower, c.total);
      out.values[slot] = c.total;
      out.covers[slot] = c.pieces;
    };
    run(nu_min, 0);
    run(nu, 1);
    run(nu_open, 2);
    run(nu_open, 3);
  }
  out.m = tilde_function(nu, search).open(u);
  out.agree = std::all_of(out.values.begin(), out.values.end(), [&](const ExtValue& v) { return v == out.m; });
  return out;
}

FinitenessReport finiteness_equivalences(const SetFunction& nu, const SearchOptions& search) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  FinitenessReport rep;
  rep.singleton_finite = true;
  for (int x = 0; x < s.point_count(); ++x) {
    if (!singleton_value(nu, x).is_finite()) {
      rep.singleton_finite = false;
      rep.witness = "singleton value at " + s.point_name(x) + " is " + singleton_value(nu, x).str();
      break;
    }
  }
  SetFunction tf = tilde_function(nu, search);
  SetFunction m = regularize(tf).fn;
  auto fam = evaluation_family(sp, 500, search.seed, "finiteness:" + nu.name());
  rep.tilde_compact_finite = true;
  rep.m_compact_finite = true;
  for (const auto& k : fam.compacts) {
    if (rep.tilde_compact_finite && !tf.closed(k).is_finite()) {
      rep.tilde_compact_finite = false;
      if (rep.witness.empty()) rep.witness = "tilde infinite on " + s.format(k);
    }
    if (rep.m_compact_finite && !m.closed(k).is_finite()) rep.m_compact_finite = false;
  }
  rep.equivalent = rep.singleton_finite == rep.tilde_compact_finite && rep.tilde_compact_finite == rep.m_compact_finite;
  return rep;
}

MaximalityReport maximality_check(const SetFunction& nu, const SetFunction& m, size_t budget, uint64_t seed,
                                  std::vector<Region> targets) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  MaximalityReport rep;
  rep.exact = !s.is_grid();
  std::vector<Region> vars;
  std::vector<Region> constraints;
  if (rep.exact) {
    vars = s.atoms();
    constraints = s.compacts();
    if (targets.empty()) targets = s.compacts();
  } else {
    for (int i = 0; i < s.point_count(); ++i) vars.push_back(Region::single(i));
    constraints = compact_family(s, budget, derive_seed(seed, "maximality", nu.name()), marks_of(s));
    if (targets.empty()) targets = {s.universe()};
  }
  LinearProgram base;
  base.n = static_cast<int>(vars.size());
  for (const auto& c : constraints) {
    ExtValue v = nu.closed(c);
    if (!v.is_finite()) continue;
    std::vector<Rational> a(vars.size(), Rational(0));
    bool any = false;
    for (size_t j = 0; j < vars.size(); ++j) {
      if (vars[j].subset_of(c)) {
        a[j] = 1;
        any = true;
      }
    }
    if (any) base.add_row(std::move(a), LinearProgram::Sense::le, v.value());
  }
  for (const auto& k : targets) {
    LinearProgram lp = base;
    lp.c.assign(vars.size(), Rational(0));
    for (size_t j = 0; j < vars.size(); ++j) {
      if (vars[j].subset_of(k)) lp.c[j] = 1;
    }
    LpResult r = solve_lp(lp);
    MaximalityRow row;
    row.k = k;
    row.optimum = r.status == LpResult::Status::unbounded ? ExtValue::inf() : ExtValue(r.value);
    row.m = m.closed(k);
    row.ok = rep.exact ? row.optimum == row.m : row.optimum >= row.m;
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace dtmwb

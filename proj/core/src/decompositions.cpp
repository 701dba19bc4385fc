#include "dtmwb/decompositions.hpp"

#include <random>

#include "dtmwb/sampling.hpp"
#include "dtmwb/transforms.hpp"

namespace dtmwb {

namespace {

EvaluationFamily family(const SpacePtr& sp, const DecomposeOptions& opt, std::string_view tag) {
  return evaluation_family(sp, opt.budget, opt.seed, tag);
}

// Opens paired with a compact family: every open on a lattice, the same cell
// sets on a grid.
std::vector<Region> opens_for(const Space& s, const EvaluationFamily& fam) {
  return s.is_grid() ? fam.compacts : s.opens();
}

ClassifyOptions classify_opts(const DecomposeOptions& opt) {
  ClassifyOptions c;
  c.budget = opt.budget;
  c.seed = opt.seed;
  return c;
}

// Empty when a == b (or b undefined) on the visited regions; else a witness.
std::string compare(const SetFunction& a, const SetFunction& b, const Space& s, const EvaluationFamily& fam,
                    bool less_equal) {
  auto test = [&](Flavor f, const Region& r) -> std::string {
    ExtValue x;
    ExtValue y;
    try {
      x = a(f, r);
      y = b(f, r);
    } catch (const UndefinedSum&) {
      return {};
    } catch (const UndefinedSubtraction&) {
      return {};
    }
    bool ok = less_equal ? x <= y : x == y;
    if (ok) return {};
    return std::string(to_string(f)) + " " + s.format(r) + ": " + x.str() + (less_equal ? " > " : " != ") + y.str();
  };
  for (const auto& k : fam.compacts) {
    if (auto w = test(Flavor::closed, k); !w.empty()) return w;
  }
  for (const auto& u : opens_for(s, fam)) {
    if (auto w = test(Flavor::open, u); !w.empty()) return w;
  }
  return {};
}

bool finite_on(const SetFunction& f, const EvaluationFamily& fam) {
  for (const auto& k : fam.compacts) {
    if (!f.closed(k).is_finite()) return false;
  }
  return true;
}

SubtractResult subtract_impl(const SetFunction& nu, const SetFunction& mu, const DecomposeOptions& opt,
                             bool with_report) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  auto fam = family(sp, opt, "subtract:" + nu.name() + "," + mu.name());
  for (const auto& k : fam.compacts) {
    ExtValue a = nu.closed(k);
    ExtValue b = mu.closed(k);
    if (a.is_pos_inf() && b.is_pos_inf()) {
      throw UndefinedSubtraction(nu.name() + " and " + mu.name() + " are both infinite on " + s.format(k));
    }
    if (b > a) {
      throw OrderViolated(mu.name() + " exceeds " + nu.name() + " on " + s.format(k) + ": " + b.str() + " > " +
                          a.str());
    }
  }
  SetFunction raw = nu - mu;
  SubtractResult res;
  const std::string name = nu.name() + "-" + mu.name();
  if (s.enumerable() || raw.traits().monotone) {
    RegularizeResult reg = regularize(raw, classify_opts(opt));
    res.lambda = reg.fn.renamed(name);
    res.conflicts = std::move(reg.conflicts);
  } else {
    // Large grid: the regularized difference agrees with nu - mu on compacts
    // exactly when nu - mu is monotone there, which is rechecked on a sample
    // of one-cell steps.
    Traits t;
    t.monotone = true;
    res.lambda = SetFunction::from_rule(
        sp, name, [raw](Flavor, const Region& r) { return raw.closed(r); }, std::move(t));
    std::mt19937_64 rng(derive_seed(opt.seed, "subtract-steps", name));
    for (const auto& k : fam.compacts) {
      if (k.empty()) continue;
      auto cells = k.indices();
      int x = cells[std::uniform_int_distribution<size_t>(0, cells.size() - 1)(rng)];
      if (raw.closed(k - Region::single(x)) > raw.closed(k)) res.conflicts.push_back(k);
    }
  }
  {
    std::string w;
    for (const auto& k : fam.compacts) {
      if (res.lambda.closed(k) != nu.closed(k) - mu.closed(k)) {
        w = s.format(k);
        break;
      }
    }
    res.consistency = make_check("difference-on-compacts", w.empty(), w, fam.exhaustive, fam.compacts.size());
  }
  {
    SetFunction sum = mu + res.lambda;
    std::string w = compare(nu, sum, s, fam, false);
    res.reconstruction = make_check("reconstruction", w.empty(), w, fam.exhaustive, fam.compacts.size());
  }
  if (with_report) res.report = classify(res.lambda, classify_opts(opt));
  return res;
}

bool all_zero(const SetFunction& f, const Space& s, const EvaluationFamily& fam, std::string* witness) {
  SetFunction z = SetFunction::zero(f.space());
  std::string w = compare(f, z, s, fam, false);
  if (witness) *witness = w;
  return w.empty();
}

Check uniqueness_within_family(const SetFunction& nu, const RadonPart& rp, const DecomposeOptions& opt) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  auto fam = family(sp, opt, "uniqueness:" + nu.name());
  std::vector<SetFunction> candidates;
  candidates.push_back(SetFunction::zero(sp));
  const auto& w = rp.diagnostics.report.weights;
  if (!s.is_grid() && rp.diagnostics.measure_restriction && !w.empty()) {
    // Atom weights in {0, w/2, w}, placed on the first point of each atom.
    auto atoms = s.atoms();
    std::vector<int> first;
    for (const auto& a : atoms) first.push_back(a.lowest());
    std::vector<Rational> atom_w(atoms.size(), Rational(0));
    for (size_t i = 0; i < atoms.size(); ++i) atom_w[i] = w.at(first[i]);
    size_t combos = 1;
    for (size_t i = 0; i < atoms.size() && combos <= 729; ++i) combos *= 3;
    if (combos <= 729) {
      for (size_t code = 0; code < combos; ++code) {
        std::vector<Rational> pts(s.point_count(), Rational(0));
        size_t c = code;
        for (size_t i = 0; i < atoms.size(); ++i, c /= 3) {
          pts[first[i]] = (c % 3 == 0) ? Rational(0) : (c % 3 == 1 ? atom_w[i] / 2 : atom_w[i]);
        }
        candidates.push_back(point_weights(sp, std::move(pts), "candidate#" + std::to_string(code)));
      }
    }
  } else {
    candidates.push_back(scale(Rational(1, 2), rp.m));
  }
  uint64_t tried = 0;
  for (const auto& l : candidates) {
    if (compare(l, rp.m, s, fam, false).empty()) continue;
    if (!compare(l, nu, s, fam, true).empty()) continue;
    ++tried;
    try {
      SubtractResult sub = subtract_impl(nu, l, opt, false);
      if (!sub.conflicts.empty()) continue;
      TildeSolver solver(sub.lambda, opt.search);
      CoverCertificate c = solver.solve(s.universe());
      if (c.total.is_zero()) {
        return make_check("uniqueness-within-family", false,
                          "alternative Radon part " + l.name() + " leaves a proper remainder", false, tried);
      }
    } catch (const OrderViolated&) {
    } catch (const HypothesisViolated&) {
    }
  }
  return make_check("uniqueness-within-family", true, {}, false, tried);
}

}  // namespace

const Check* Decomposition::find(std::string_view statement) const {
  for (const auto& c : certificates) {
    if (c.statement == statement) return &c;
  }
  return nullptr;
}

SubtractResult subtract_dtm(const SetFunction& nu, const SetFunction& mu, const DecomposeOptions& opt) {
  return subtract_impl(nu, mu, opt, true);
}

ProperVerdict is_proper(const SetFunction& nu, const DecomposeOptions& opt) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  ProperVerdict v;
  v.route = "cover infimum of " + nu.name();
  TildeSolver solver(nu, opt.search);
  CoverCertificate cx = simplify_cover(nu, solver.solve(s.universe()));
  if (cx.total.is_zero()) {
    v.proper = true;
  } else if (cx.lower.sign() > 0) {
    v.proper = false;
    v.witness = "every cover of X costs at least " + cx.lower.str();
  } else {
    throw SearchBudgetExceeded("properness of " + nu.name(), cx.lower, cx.total);
  }
  v.certificates.push_back(cx);
  auto fam = family(sp, opt, "proper:" + nu.name());
  v.exhaustive = fam.exhaustive;
  for (const auto& k : fam.compacts) {
    CoverCertificate c = solver.solve(k);
    ++v.compacts_checked;
    if (v.proper && !c.total.is_zero()) {
      // Cannot happen for a monotone cover infimum; reported if it does.
      v.proper = false;
      v.witness = "no zero cover found for " + s.format(k);
      v.certificates.push_back(c);
      break;
    }
    if (v.proper && v.certificates.size() < opt.keep_certificates && !k.empty()) {
      v.certificates.push_back(simplify_cover(nu, std::move(c)));
    }
  }
  if (finite_on(nu, fam) && nu.open(s.universe()).is_finite()) {
    CoverFormulas f = open_cover_formulas(nu, s.universe(), opt.search);
    v.open_cover_form = f.values[2].is_zero();
  }
  return v;
}

ProperVerdict is_proper(const SignedPresentation& mu, const DecomposeOptions& opt) {
  const SpacePtr& sp = mu.pos.space();
  const Space& s = *sp;
  // |mu| <= pos + neg, so a zero cover of X under pos + neg is one under |mu|.
  SetFunction bound = mu.pos + mu.neg;
  TildeSolver solver(bound, opt.search);
  CoverCertificate cx = simplify_cover(bound, solver.solve(s.universe()));
  if (cx.total.is_zero()) {
    ProperVerdict v;
    v.proper = true;
    v.route = "zero cover of X under " + bound.name();
    v.certificates.push_back(cx);
    auto fam = family(sp, opt, "proper-signed:" + mu.name());
    v.exhaustive = fam.exhaustive;
    for (const auto& k : fam.compacts) {
      CoverCertificate c = solver.solve(k);
      ++v.compacts_checked;
      if (!c.total.is_zero()) {
        v.proper = false;
        v.witness = "no zero cover found for " + s.format(k);
        break;
      }
      if (v.certificates.size() < opt.keep_certificates && !k.empty()) {
        v.certificates.push_back(simplify_cover(bound, std::move(c)));
      }
    }
    return v;
  }
  if (!s.enumerable()) {
    throw SearchBudgetExceeded("properness of " + mu.name() + " (total variation on a large grid)", ExtValue(0),
                               cx.total);
  }
  SetFunction tv = total_variation(mu.value(), opt.search, bound);
  ProperVerdict v = is_proper(tv, opt);
  v.route = "cover infimum of " + tv.name();
  return v;
}

namespace {

// Radon part and remainder with the cheap certificates only.
Decomposition split_parts(const SetFunction& nu, const DecomposeOptions& opt, RadonPart* keep = nullptr) {
  const SpacePtr& sp = nu.space();
  Decomposition d;
  d.input = nu.name();
  RadonPart rp = radon_part(nu, opt.search, opt.budget, opt.seed);
  d.radon = rp.m;
  Check below = rp.diagnostics.below_nu;
  below.statement = "radon-below-input";
  d.certificates.push_back(below);
  SubtractResult sub = subtract_impl(nu, rp.m, opt, false);
  d.proper = sub.lambda.renamed(nu.name() + "'");
  Check cons = sub.consistency;
  cons.statement = "proper-part-consistency";
  d.certificates.push_back(cons);
  d.certificates.push_back(sub.reconstruction);
  if (!sub.conflicts.empty()) {
    d.certificates.push_back(make_check("proper-part-regular", false,
                                        "regularization changed " + sp->format(sub.conflicts.front()), false));
  }
  if (keep) *keep = std::move(rp);
  return d;
}

// Signed version: parts of pos and neg, their differences, and reconstruction.
Decomposition split_signed(const SignedPresentation& mu, const DecomposeOptions& opt) {
  const SpacePtr& sp = mu.pos.space();
  Decomposition dp = split_parts(mu.pos, opt);
  Decomposition dn = split_parts(mu.neg, opt);
  Decomposition d;
  d.input = mu.name();
  d.presentation = mu;
  d.radon = (dp.radon - dn.radon).renamed("m[" + mu.name() + "]");
  d.proper = (dp.proper - dn.proper).renamed("(" + mu.name() + ")'");
  for (const auto& [tag, part] : {std::pair{"pos:", &dp}, std::pair{"neg:", &dn}}) {
    for (const auto& c : part->certificates) {
      Check copy = c;
      copy.statement = tag + c.statement;
      d.certificates.push_back(std::move(copy));
    }
  }
  auto fam = family(sp, opt, "signed:" + mu.name());
  std::string w = compare(mu.value(), d.radon + d.proper, *sp, fam, false);
  d.certificates.push_back(make_check("reconstruction", w.empty(), w, fam.exhaustive, fam.compacts.size()));
  return d;
}

}  // namespace

Decomposition decompose_proper(const SetFunction& nu, const DecomposeOptions& opt) {
  const SpacePtr& sp = nu.space();
  RadonPart rp;
  Decomposition d = split_parts(nu, opt, &rp);
  ProperVerdict pv = is_proper(d.proper, opt);
  d.certificates.push_back(make_check("proper-part-proper", pv.proper, pv.witness, pv.exhaustive,
                                      pv.compacts_checked));
  d.proper_verdict = std::move(pv);
  auto fam = family(sp, opt, "finite:" + nu.name());
  if (finite_on(nu, fam)) {
    d.uniqueness_route = "finite input: maximal Radon part, alternatives refuted within a candidate family";
    d.certificates.push_back(uniqueness_within_family(nu, rp, opt));
  } else {
    d.uniqueness_route = "singleton-finite input: uniqueness from maximality of the Radon part";
    d.certificates.push_back(skipped_check("uniqueness-within-family", "input is not finite"));
  }
  return d;
}

JordanResult jordan_parts(const SetFunction& mu, const DecomposeOptions& opt) {
  const SpacePtr& sp = mu.space();
  const Space& s = *sp;
  auto fam = family(sp, opt, "jordan:" + mu.name());
  for (const auto& k : fam.compacts) {
    if (!mu.closed(k).is_finite()) throw NormInfinite(mu.name() + " is infinite on " + s.format(k));
  }
  ClassifyOptions co = classify_opts(opt);
  JordanResult j{SignedPresentation{regularize(mu, co).fn.renamed("(" + mu.name() + ")+"),
                                    regularize(-mu, co).fn.renamed("(" + mu.name() + ")-")},
                 {}};
  std::string w;
  for (const auto& k : fam.compacts) {
    ExtValue back = j.parts.pos.closed(k) - j.parts.neg.closed(k);
    if (back != mu.closed(k)) {
      w = s.format(k) + ": " + j.parts.pos.closed(k).str() + " - " + j.parts.neg.closed(k).str() +
          " != " + mu.closed(k).str();
      break;
    }
  }
  j.reconstruction = make_check("jordan-reconstruction", w.empty(), w, fam.exhaustive, fam.compacts.size());
  return j;
}

Decomposition decompose_signed(const SignedPresentation& mu, const DecomposeOptions& opt) {
  const SpacePtr& sp = mu.pos.space();
  const Space& s = *sp;
  Decomposition dp = decompose_proper(mu.pos, opt);
  Decomposition dn = decompose_proper(mu.neg, opt);
  Decomposition d;
  d.input = mu.name();
  d.presentation = mu;
  d.radon = (dp.radon - dn.radon).renamed("m[" + mu.name() + "]");
  d.proper = (dp.proper - dn.proper).renamed("(" + mu.name() + ")'");
  for (const auto& [tag, part] : {std::pair{"pos:", &dp}, std::pair{"neg:", &dn}}) {
    for (const auto& c : part->certificates) {
      Check copy = c;
      copy.statement = tag + c.statement;
      d.certificates.push_back(std::move(copy));
    }
  }
  auto fam = family(sp, opt, "signed:" + mu.name());
  SetFunction value = mu.value();
  {
    std::string w = compare(value, d.radon + d.proper, s, fam, false);
    d.certificates.push_back(make_check("reconstruction", w.empty(), w, fam.exhaustive, fam.compacts.size()));
  }
  const bool finite = finite_on(mu.pos, fam) && finite_on(mu.neg, fam);
  if (!finite) {
    d.uniqueness_route = "one part infinite: each part decomposed on its own";
    d.certificates.push_back(skipped_check("finite-norms", "a part is infinite"));
    return d;
  }
  d.uniqueness_route = "both parts finite: a signed Radon measure that is proper vanishes";
  {
    bool ok = finite_on(d.radon, fam) && finite_on(d.proper, fam);
    d.certificates.push_back(make_check("finite-norms", ok, ok ? "" : "a part is infinite", fam.exhaustive,
                                        fam.compacts.size()));
  }
  if (s.enumerable()) {
    // A second presentation (the Jordan parts) must give the same decomposition.
    JordanResult j = jordan_parts(value, opt);
    d.certificates.push_back(j.reconstruction);
    std::optional<SignedPresentation> second;
    if (j.reconstruction.passed()) {
      second = j.parts;
    } else {
      // mu <= mu+ on compacts, so (mu+, mu+ - mu) is the next candidate; it
      // counts only if the remainder is a DTM and reproduces mu exactly.
      SetFunction rest = regularize(j.parts.pos - value, classify_opts(opt)).fn.renamed("(" + mu.name() + ")+-mu");
      SignedPresentation alt{j.parts.pos, rest};
      if (classify(rest, classify_opts(opt)).is_dtm && compare(value, alt.value(), s, fam, false).empty()) {
        second = alt;
      }
    }
    if (second) {
      Decomposition dp2 = split_parts(second->pos, opt);
      Decomposition dn2 = split_parts(second->neg, opt);
      std::string w = compare(d.radon, dp2.radon - dn2.radon, s, fam, false);
      if (w.empty()) w = compare(d.proper, dp2.proper - dn2.proper, s, fam, false);
      d.certificates.push_back(make_check("uniqueness-second-presentation", w.empty(),
                                          w.empty() ? "via " + second->name() : w, fam.exhaustive,
                                          fam.compacts.size()));
    } else {
      d.certificates.push_back(skipped_check("uniqueness-second-presentation",
                                             "no second presentation by DTMs reproduces the input"));
    }
    ClassificationReport in = classify(value, classify_opts(opt));
    if (in.is_stm) {
      ClassificationReport out = classify(d.proper, classify_opts(opt));
      d.certificates.push_back(make_check("proper-part-stm", out.is_stm,
                                          out.is_stm || out.witnesses.empty() ? "" : out.witnesses.front().axiom,
                                          out.exhaustive, out.checked));
    } else {
      d.certificates.push_back(skipped_check("proper-part-stm", "input is not a signed topological measure"));
    }
  } else {
    d.certificates.push_back(skipped_check("uniqueness-second-presentation", "model is not enumerable"));
  }
  return d;
}

std::vector<Check> sum_proper_check(const SetFunction& nu, const SetFunction& mu, const DecomposeOptions& opt) {
  std::vector<Check> out;
  auto verdict = [&](const std::string& id, auto&& run) {
    try {
      ProperVerdict v = run();
      out.push_back(make_check(id, v.proper, v.witness, v.exhaustive, v.compacts_checked));
    } catch (const SearchBudgetExceeded& e) {
      out.push_back(Check{id, Verdict::bound_only, e.what(), false, 0});
    }
  };
  verdict("sum-proper", [&] { return is_proper(nu + mu, opt); });
  for (const Rational& a : {Rational(1, 2), Rational(2)}) {
    verdict("scaled-proper:" + to_string(a), [&] { return is_proper(scale(a, nu), opt); });
  }
  auto fam = family(nu.space(), opt, "sum-proper:" + nu.name());
  if (finite_on(nu, fam) && finite_on(mu, fam)) {
    verdict("difference-proper", [&] { return is_proper(SignedPresentation{nu, mu}, opt); });
  } else {
    out.push_back(skipped_check("difference-proper", "an input is infinite"));
  }
  return out;
}

StmDifference subtract_stm(const SetFunction& nu, const SetFunction& mu, const DecomposeOptions& opt) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  auto fam = family(sp, opt, "stm:" + nu.name() + "," + mu.name());
  bool ordered = true;
  for (const auto& k : fam.compacts) {
    ExtValue a = nu.closed(k);
    ExtValue b = mu.closed(k);
    if ((a.is_pos_inf() && b.is_pos_inf()) || (a.is_neg_inf() && b.is_neg_inf())) {
      throw UndefinedSubtraction(nu.name() + " - " + mu.name() + " is undefined on " + s.format(k));
    }
    ordered = ordered && b <= a;
  }
  StmDifference r;
  r.lambda = nu - mu;
  r.report = classify(r.lambda, classify_opts(opt));
  auto why = [&](const char* axiom) {
    const Violation* v = r.report.find(axiom);
    return v ? v->axiom + " " + v->detail : std::string();
  };
  r.stm = make_check("difference-stm", r.report.is_stm, r.report.is_stm ? "" : "not a signed topological measure",
                     r.report.exhaustive, r.report.checked);
  if (ordered) {
    r.tm = make_check("difference-tm", r.report.is_tm, r.report.is_tm ? "" : why("nonnegative"),
                      r.report.exhaustive, r.report.checked);
  } else {
    r.tm = skipped_check("difference-tm", "mu <= nu fails on a visited compact");
  }
  return r;
}

std::vector<Check> order_preservation_suite(const SetFunction& mu, const SetFunction& nu,
                                            const DecomposeOptions& opt) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  std::vector<Check> out;
  auto fam = family(sp, opt, "order:" + mu.name() + "," + nu.name());
  std::string below;
  for (const auto& k : fam.compacts) {
    if (mu.closed(k) > nu.closed(k)) {
      below = s.format(k);
      break;
    }
  }
  const char* ids[] = {"radon-order", "proper-order", "tm-below-finite-radon-is-measure",
                       "signed-radon-iff-variation-radon", "dominated-variation-is-radon"};
  if (!below.empty()) {
    for (const char* id : ids) out.push_back(skipped_check(id, "mu <= nu fails on " + below));
    return out;
  }
  Decomposition dm = split_parts(mu, opt);
  Decomposition dn = split_parts(nu, opt);
  {
    std::string w = compare(dm.radon, dn.radon, s, fam, true);
    out.push_back(make_check("radon-order", w.empty(), w, fam.exhaustive, fam.compacts.size()));
  }
  const bool nu_finite = finite_on(nu, fam);
  if (nu_finite) {
    std::string w = compare(dm.proper, dn.proper, s, fam, true);
    out.push_back(make_check("proper-order", w.empty(), w, fam.exhaustive, fam.compacts.size()));
  } else {
    out.push_back(skipped_check("proper-order", "nu is not finite"));
  }
  ClassificationReport rm = classify(mu, classify_opts(opt));
  ClassificationReport rn = classify(nu, classify_opts(opt));
  if (rm.is_tm && rn.is_measure_restriction && nu_finite) {
    out.push_back(make_check("tm-below-finite-radon-is-measure", rm.is_measure_restriction,
                             rm.is_measure_restriction ? "" : "mu is not a measure restriction", rm.exhaustive,
                             rm.checked));
  } else {
    out.push_back(skipped_check("tm-below-finite-radon-is-measure", "needs a TM below a finite Radon measure"));
  }
  if (!s.enumerable()) {
    out.push_back(skipped_check("signed-radon-iff-variation-radon", "total variation needs an enumerable model"));
    out.push_back(skipped_check("dominated-variation-is-radon", "total variation needs an enumerable model"));
    return out;
  }
  SetFunction tv = total_variation(mu, opt.search);
  ClassificationReport rtv = classify(tv, classify_opts(opt));
  if (rm.is_stm && rm.singleton_finite) {
    bool lhs = rm.is_measure_restriction && rm.norm.is_finite();
    bool rhs = rtv.is_measure_restriction && rtv.finite;
    out.push_back(make_check("signed-radon-iff-variation-radon", lhs == rhs,
                             lhs == rhs ? "" : "mu and |mu| disagree on being Radon", rtv.exhaustive, rtv.checked));
  } else {
    out.push_back(skipped_check("signed-radon-iff-variation-radon", "mu is not a singleton-finite STM"));
  }
  bool dominated = rn.is_measure_restriction && rm.is_stm && rm.singleton_finite;
  for (const auto& k : fam.compacts) {
    if (!dominated) break;
    if (mu.closed(k).abs() > nu.closed(k)) dominated = false;
  }
  if (dominated) {
    out.push_back(make_check("dominated-variation-is-radon", rtv.is_measure_restriction,
                             rtv.is_measure_restriction ? "" : "|mu| is not a measure restriction", rtv.exhaustive,
                             rtv.checked));
  } else {
    out.push_back(skipped_check("dominated-variation-is-radon", "needs |mu| <= nu with nu Radon"));
  }
  return out;
}

namespace {

// Pairs split from bands of rows (or columns): the left and right parts of a
// band overlap in one column, so a connection across the cut shows up as a
// modularity defect.
std::vector<std::pair<Region, Region>> band_pairs(const DyadicGrid& g) {
  std::vector<std::pair<Region, Region>> out;
  const int n = g.side();
  for (int r0 = 0; r0 < n; ++r0) {
    for (int r1 = r0; r1 < n; ++r1) {
      for (int c = 1; c + 1 < n; ++c) {
        out.emplace_back(g.rectangle(r0, 0, r1, c), g.rectangle(r0, c, r1, n - 1));
        out.emplace_back(g.rectangle(0, r0, c, r1), g.rectangle(c, r0, n - 1, r1));
      }
    }
  }
  return out;
}

}  // namespace

ModularityReport modularity_radon_check(const SignedPresentation& mu, const DecomposeOptions& opt) {
  const SpacePtr& sp = mu.pos.space();
  const Space& s = *sp;
  ModularityReport rep;
  SetFunction v = mu.value();
  auto test = [&](const Region& k, const Region& c) {
    ++rep.pairs_checked;
    try {
      ExtValue lhs = v.closed(k | c) + v.closed(k & c);
      ExtValue rhs = v.closed(k) + v.closed(c);
      if (lhs == rhs) return true;
      rep.witness = "K=" + s.format(k) + " C=" + s.format(c) + ": values " + v.closed(k).str() + ", " +
                    v.closed(c).str() + ", union " + v.closed(k | c).str() + ", intersection " +
                    v.closed(k & c).str();
    } catch (const UndefinedSum&) {
      return true;
    }
    rep.violation = std::make_pair(k, c);
    rep.modular = false;
    return false;
  };
  if (!s.is_grid()) {
    const auto& C = s.compacts();
    for (size_t i = 0; i < C.size() && rep.modular; ++i) {
      for (size_t j = i + 1; j < C.size() && rep.modular; ++j) test(C[i], C[j]);
    }
  } else {
    rep.exhaustive = false;
    for (const auto& [k, c] : band_pairs(s.grid())) {
      if (!test(k, c)) break;
    }
    RegionSampler sampler(s, derive_seed(opt.seed, "modularity", mu.name()), s.grid().marked());
    for (size_t i = 0; i < opt.budget && rep.modular; ++i) test(sampler.next(), sampler.next());
  }
  Decomposition d = split_signed(mu, opt);
  auto fam = family(sp, opt, "modularity:" + mu.name());
  rep.proper_part_zero = all_zero(d.proper, s, fam, nullptr);
  // With a zero proper part mu is the difference of the two Radon parts.
  rep.signed_radon = rep.proper_part_zero && all_passed(d.certificates);
  rep.equivalence = rep.modular == rep.proper_part_zero;
  try {
    ProperVerdict pv = is_proper(mu, opt);
    if (pv.proper && rep.modular) {
      std::string w;
      bool zero = all_zero(v, s, fam, &w);
      rep.modular_proper_is_zero = make_check("modular-proper-is-zero", zero, w, fam.exhaustive, fam.compacts.size());
    }
  } catch (const SearchBudgetExceeded&) {
  }
  return rep;
}

std::vector<Check> structure_lemmas_suite(const SetFunction& nu, const DecomposeOptions& opt) {
  const SpacePtr& sp = nu.space();
  const Space& s = *sp;
  std::vector<Check> out;
  auto fam = family(sp, opt, "structure:" + nu.name());
  const Region X = s.universe();

  if (!finite_on(nu, fam)) {
    out.push_back(skipped_check("convex-split", "nu is not finite"));
  } else {
    Decomposition d = split_parts(nu, opt);
    ExtValue mx = d.radon.closed(X);
    ExtValue px = d.proper.closed(X);
    ExtValue nx = nu.closed(X);
    if (mx.sign() > 0 && px.sign() > 0) {
      Rational a = mx.value() / nx.value();
      Rational b = px.value() / nx.value();
      SetFunction nu1 = scale(nx.value() / mx.value(), d.radon);
      SetFunction nu2 = scale(nx.value() / px.value(), d.proper);
      SetFunction back = combine(a, nu1, b, nu2);
      std::string w = compare(back, nu, s, fam, false);
      if (a + b != 1) w = "a + b = " + to_string(a + b);
      out.push_back(make_check("convex-split", w.empty(), w.empty() ? "a=" + to_string(a) + " b=" + to_string(b) : w,
                               fam.exhaustive, fam.compacts.size()));
    } else {
      out.push_back(skipped_check("convex-split", "nu is already Radon or proper"));
    }
  }

  {
    bool simple = true;
    for (const auto& k : fam.compacts) {
      ExtValue x = nu.closed(k);
      if (!(x.is_zero() || x == ExtValue(1))) simple = false;
    }
    for (const auto& u : opens_for(s, fam)) {
      ExtValue x = nu.open(u);
      if (!(x.is_zero() || x == ExtValue(1))) simple = false;
    }
    int at = -1;
    for (int x = 0; simple && x < s.point_count() && at < 0; ++x) {
      Region one = Region::single(x);
      if (s.is_region(Flavor::closed, one) && nu.closed(one) == ExtValue(1)) at = x;
    }
    if (!simple || at < 0) {
      out.push_back(skipped_check("point-mass", simple ? "no closed singleton of value 1" : "nu is not simple"));
    } else {
      SetFunction delta;
      if (s.is_grid()) {
        std::vector<Rational> w(s.point_count(), Rational(0));
        w[at] = 1;
        delta = lebesgue_cells(sp, std::move(w), "delta");
      } else {
        delta = point_mass(sp, at);
      }
      std::string w = compare(nu, delta, s, fam, false);
      out.push_back(make_check("point-mass", w.empty(), w.empty() ? "point " + s.point_name(at) : w,
                               fam.exhaustive, fam.compacts.size()));
    }
  }

  {
    // Finitely many values always hold on these models.
    bool a;
    {
      CoverCertificate c = TildeSolver(nu, opt.search).solve(X);
      if (!c.total.is_zero() && !(c.lower.sign() > 0)) {
        out.push_back(Check{"finite-values-properness", Verdict::bound_only, "cover bounds do not meet", false, 0});
        return out;
      }
      a = c.total.is_zero();
    }
    bool b = true;
    bool c = true;
    std::string w;
    for (int x = 0; x < s.point_count(); ++x) {
      Region one = Region::single(x);
      if (!outer_value(nu, one).is_zero()) {
        b = false;
        if (w.empty()) w = "no zero open around " + s.point_name(x);
      }
      if (!singleton_value(nu, x).is_zero()) {
        c = false;
        if (w.empty()) w = "singleton value at " + s.point_name(x) + " is " + singleton_value(nu, x).str();
      }
    }
    bool ok = a == b && b == c;
    std::string text = std::string("(a)=") + (a ? "true" : "false") + " (b)=" + (b ? "true" : "false") +
                       " (c)=" + (c ? "true" : "false");
    out.push_back(make_check("finite-values-properness", ok, ok ? text : text + "; " + w, true,
                             static_cast<uint64_t>(s.point_count())));
  }
  return out;
}

}  // namespace dtmwb

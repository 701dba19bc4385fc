#include "dtmwb/cover.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <mutex>

#include "dtmwb/classify.hpp"
#include "dtmwb/sampling.hpp"
#include "grid_tables.hpp"

namespace dtmwb {

namespace {

bool dense_grid(const Space& s) { return s.is_grid() && s.grid().cell_count() <= 16; }

std::vector<Region> unpack(const Space& s, const std::vector<uint32_t>& masks) {
  std::vector<Region> out;
  for (auto m : masks) out.push_back(Region::from_bits(m));
  std::sort(out.begin(), out.end());
  (void)s;
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw HypothesisViolated(what);
}

// Monotone, additive on disjoint compacts and zero at the empty set: the
// cover-infimum hypotheses. Declared traits settle it; otherwise checked.
void check_hypotheses(const SetFunction& nu, const SearchOptions& opt) {
  const Space& s = *nu.space();
  require(nu.closed(Region{}).is_zero(), nu.name() + ": value at the empty set is not 0");
  const Traits& t = nu.traits();
  if (t.monotone && t.compact_additive) return;
  if (!s.is_grid()) {
    const auto& C = s.compacts();
    for (const auto& a : C) {
      for (const auto& b : C) {
        if (!t.monotone && a.subset_of(b) && nu.closed(a) > nu.closed(b)) {
          throw HypothesisViolated(nu.name() + " is not monotone: " + s.format(a) + " vs " + s.format(b));
        }
        if (!t.compact_additive && !a.intersects(b) && !a.empty() && !b.empty()) {
          ExtValue sum;
          try {
            sum = nu.closed(a) + nu.closed(b);
          } catch (const UndefinedSum&) {
            throw HypothesisViolated(nu.name() + " is not additive on " + s.format(a) + ", " + s.format(b));
          }
          if (nu.closed(a | b) != sum) {
            throw HypothesisViolated(nu.name() + " is not additive on " + s.format(a) + ", " + s.format(b));
          }
        }
      }
    }
    return;
  }
  if (dense_grid(s)) {
    const auto& d = nu.dense(Flavor::closed);
    const int n = s.grid().cell_count();
    const uint32_t full = (uint32_t{1} << n) - 1;
    const auto& dil = detail::dilation_table(s.grid());
    for (uint32_t m = 0; m <= full; ++m) {
      if (!t.monotone) {
        for (int i = 0; i < n; ++i) {
          uint32_t up = m | (uint32_t{1} << i);
          if (up != m && d[m] > d[up]) {
            throw HypothesisViolated(nu.name() + " is not monotone at " + s.format(Region::from_bits(m)));
          }
        }
      }
      if (!t.compact_additive && m) {
        uint32_t rest = full & ~dil[m];
        for (uint32_t b = rest; b; b = (b - 1) & rest) {
          if (b < m) continue;
          bool ok = true;
          ExtValue sum;
          try {
            sum = d[m] + d[b];
          } catch (const UndefinedSum&) {
            ok = false;
          }
          if (!ok || d[m | b] != sum) {
            throw HypothesisViolated(nu.name() + " is not additive on " + s.format(Region::from_bits(m)) +
                                     ", " + s.format(Region::from_bits(b)));
          }
        }
      }
    }
    return;
  }
  RegionSampler sampler(s, derive_seed(opt.seed, "hypotheses", nu.name()), s.grid().marked());
  for (int i = 0; i < 1000; ++i) {
    Region b = sampler.next();
    Region a = sampler.next_within(b);
    if (!t.monotone && nu.closed(a) > nu.closed(b)) {
      throw HypothesisViolated(nu.name() + " is not monotone: " + s.format(a) + " vs " + s.format(b));
    }
    if (!t.compact_additive) {
      Region c = sampler.next_within(s.universe() - s.grid().dilate(a));
      if (nu.closed(a | c) != nu.closed(a) + nu.closed(c)) {
        throw HypothesisViolated(nu.name() + " is not additive on " + s.format(a) + ", " + s.format(c));
      }
    }
  }
}

// Best guillotine cover of K: split bounding rectangles recursively and cover
// each part by its intersection with K.
struct Guillotine {
  const SetFunction& nu;
  const DyadicGrid& g;
  Region k;
  std::map<std::array<int, 4>, std::pair<ExtValue, int>> memo;  // split code

  ExtValue cost(int r0, int c0, int r1, int c1) {
    std::array<int, 4> key{r0, c0, r1, c1};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second.first;
    Region part = k & g.rectangle(r0, c0, r1, c1);
    ExtValue best = part.empty() ? ExtValue(0) : nu.peek(Flavor::closed, part);
    int how = 0;
    if (!part.empty() && !best.is_zero()) {
      for (int r = r0; r < r1; ++r) {
        ExtValue c = cost(r0, c0, r, c1) + cost(r + 1, c0, r1, c1);
        if (c < best) {
          best = c;
          how = 1 + (r - r0);
        }
      }
      for (int c = c0; c < c1; ++c) {
        ExtValue v = cost(r0, c0, r1, c) + cost(r0, c + 1, r1, c1);
        if (v < best) {
          best = v;
          how = -(1 + (c - c0));
        }
      }
    }
    memo[key] = {best, how};
    return best;
  }

  void pieces(int r0, int c0, int r1, int c1, std::vector<Region>& out) {
    cost(r0, c0, r1, c1);
    int how = memo[{r0, c0, r1, c1}].second;
    if (how == 0) {
      Region part = k & g.rectangle(r0, c0, r1, c1);
      if (!part.empty()) out.push_back(part);
    } else if (how > 0) {
      int r = r0 + how - 1;
      pieces(r0, c0, r, c1, out);
      pieces(r + 1, c0, r1, c1, out);
    } else {
      int c = c0 - how - 1;
      pieces(r0, c0, r1, c, out);
      pieces(r0, c + 1, r1, c1, out);
    }
  }
};

ExtValue sum_values(const SetFunction& nu, const std::vector<Region>& pieces) {
  ExtValue total(0);
  for (const auto& p : pieces) total += nu.peek(Flavor::closed, p);
  return total;
}

}  // namespace

// ------------------------------------------------------------------ tilde

struct TildeSolver::State {
  SetFunction nu;
  SearchOptions opt;
  // Dense grids: optimal partition table.
  std::vector<ExtValue> table;
  std::vector<uint32_t> choice;
  // Large grids: a good cover of X, reused by intersection.
  std::vector<Region> xcover;
};

TildeSolver::TildeSolver(SetFunction nu, SearchOptions opt) : st_(std::make_unique<State>()) {
  st_->nu = std::move(nu);
  st_->opt = opt;
  check_hypotheses(st_->nu, opt);
  const Space& s = *st_->nu.space();
  if (dense_grid(s)) {
    // f(S) = min over T with lowbit(S) in T of nu(T) + f(S \ T). Partitions
    // suffice because nu is monotone and every cell subset is compact.
    const int n = s.grid().cell_count();
    const uint32_t full = (uint32_t{1} << n) - 1;
    const auto& d = st_->nu.dense(Flavor::closed);
    st_->choice.assign(full + 1, 0);
    if (auto it = detail::IntTable::build(d)) {
      std::vector<int64_t> f(full + 1, 0);
      for (uint32_t S = 1; S <= full; ++S) {
        uint32_t p = S & (~S + 1);
        uint32_t rest = S ^ p;
        int64_t best = detail::IntTable::kInf + 1;
        uint32_t arg = S;
        for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
          uint32_t T = p | sub;
          int64_t c = detail::IntTable::add(it->v[T], f[S ^ T]);
          if (c < best) {
            best = c;
            arg = T;
          }
          if (sub == 0) break;
        }
        f[S] = std::min(best, detail::IntTable::kInf);
        st_->choice[S] = arg;
      }
      st_->table.resize(full + 1);
      for (uint32_t S = 0; S <= full; ++S) st_->table[S] = it->decode(f[S]);
    } else {
      std::vector<ExtValue> f(full + 1, ExtValue(0));
      for (uint32_t S = 1; S <= full; ++S) {
        uint32_t p = S & (~S + 1);
        uint32_t rest = S ^ p;
        ExtValue best = ExtValue::inf();
        uint32_t arg = S;
        bool have = false;
        for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
          uint32_t T = p | sub;
          ExtValue c = d[T] + f[S ^ T];
          if (!have || c < best) {
            best = c;
            arg = T;
            have = true;
          }
          if (sub == 0) break;
        }
        f[S] = best;
        st_->choice[S] = arg;
      }
      st_->table = std::move(f);
    }
  } else if (s.is_grid()) {
    const auto& g = s.grid();
    Guillotine gl{st_->nu, g, s.universe(), {}};
    gl.pieces(0, 0, g.side() - 1, g.side() - 1, st_->xcover);
  }
}

TildeSolver::~TildeSolver() = default;

const SetFunction& TildeSolver::function() const { return st_->nu; }

namespace {

// Exact cover search on a lattice over closed pieces inside K.
CoverCertificate lattice_cover(const SetFunction& nu, const Region& k, uint64_t budget) {
  const Space& s = *nu.space();
  std::vector<Region> pieces;
  std::vector<ExtValue> cost;
  for (const auto& c : s.compacts()) {
    if (!c.empty() && c.subset_of(k)) {
      pieces.push_back(c);
      cost.push_back(nu.closed(c));
    }
  }
  // Dominance: drop a piece when a larger piece costs no more.
  std::vector<bool> keep(pieces.size(), true);
  for (size_t i = 0; i < pieces.size(); ++i) {
    for (size_t j = 0; j < pieces.size() && keep[i]; ++j) {
      if (i != j && pieces[i].subset_of(pieces[j]) && pieces[i] != pieces[j] && cost[j] <= cost[i]) {
        keep[i] = false;
      }
    }
  }
  std::map<Region, std::pair<ExtValue, int>> memo;
  uint64_t nodes = 0;
  std::function<ExtValue(const Region&)> f = [&](const Region& u) -> ExtValue {
    if (u.empty()) return ExtValue(0);
    auto it = memo.find(u);
    if (it != memo.end()) return it->second.first;
    if (++nodes > budget) throw BudgetExceeded("lattice cover search");
    int p = u.lowest();
    ExtValue best = ExtValue::inf();
    int arg = -1;
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (!keep[i] || !pieces[i].test(p)) continue;
      ExtValue c = cost[i] + f(u - pieces[i]);
      if (arg < 0 || c < best) {
        best = c;
        arg = static_cast<int>(i);
      }
    }
    memo[u] = {best, arg};
    return best;
  };
  CoverCertificate cert;
  cert.target = k;
  cert.total = f(k);
  cert.lower = cert.total;
  cert.optimal = true;
  Region u = k;
  while (!u.empty()) {
    int arg = memo.at(u).second;
    if (arg < 0) break;  // k not coverable (cannot happen: k itself is a piece)
    cert.pieces.push_back(pieces[arg]);
    u -= pieces[arg];
  }
  return cert;
}

// Exact partition search over the cells of one component (at most 16 cells).
ExtValue component_exact(const SetFunction& nu, const Region& comp, std::vector<Region>& out,
                         uint64_t budget) {
  std::vector<int> idx = comp.indices();
  const int n = static_cast<int>(idx.size());
  const uint32_t full = (uint32_t{1} << n) - 1;
  if ((uint64_t{1} << n) * (uint64_t{1} << n) / 4 > budget * 4) throw BudgetExceeded("component search");
  auto to_region = [&](uint32_t m) {
    Region r;
    for (int j = 0; j < n; ++j) {
      if ((m >> j) & 1u) r.set(idx[j]);
    }
    return r;
  };
  std::vector<ExtValue> val(full + 1);
  for (uint32_t m = 0; m <= full; ++m) val[m] = m ? nu.peek(Flavor::closed, to_region(m)) : ExtValue(0);
  std::vector<ExtValue> f(full + 1, ExtValue(0));
  std::vector<uint32_t> choice(full + 1, 0);
  for (uint32_t S = 1; S <= full; ++S) {
    uint32_t p = S & (~S + 1);
    uint32_t rest = S ^ p;
    bool have = false;
    for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
      uint32_t T = p | sub;
      ExtValue c = val[T] + f[S ^ T];
      if (!have || c < f[S]) {
        f[S] = c;
        choice[S] = T;
        have = true;
      }
      if (sub == 0) break;
    }
  }
  for (uint32_t S = full; S; S ^= choice[S]) out.push_back(to_region(choice[S]));
  return f[full];
}

ExtValue minorant_sum(const SetFunction& nu, const Region& k) {
  ExtValue lo(0);
  if (const auto& w = nu.traits().minorant) {
    k.for_each([&](int i) { lo += (*w)[i]; });
  }
  return lo;
}

}  // namespace

CoverCertificate TildeSolver::solve(const Region& k) const {
  const SetFunction& nu = st_->nu;
  const Space& s = *nu.space();
  CoverCertificate cert;
  cert.target = k;
  if (k.empty()) {
    cert.total = ExtValue(0);
    cert.lower = ExtValue(0);
    cert.optimal = true;
    return cert;
  }
  if (!s.is_grid()) {
    try {
      return lattice_cover(nu, k, st_->opt.budget);
    } catch (const BudgetExceeded&) {
      cert.pieces = {k};
      cert.total = nu.closed(k);
      cert.lower = ExtValue(0);
      return cert;
    }
  }
  if (!st_->table.empty()) {
    uint32_t S = static_cast<uint32_t>(k.low_word());
    cert.total = st_->table[S];
    cert.lower = cert.total;
    cert.optimal = true;
    std::vector<uint32_t> parts;
    for (uint32_t m = S; m; m ^= st_->choice[m]) parts.push_back(st_->choice[m]);
    cert.pieces = unpack(s, parts);
    return cert;
  }

  // Large grid: bound pair first, exact component search only if needed.
  const ExtValue lower = minorant_sum(nu, k);
  cert.lower = lower;
  cert.pieces = {k};
  cert.total = nu.closed(k);
  auto consider = [&](std::vector<Region> pieces) {
    ExtValue t = sum_values(nu, pieces);
    if (t < cert.total) {
      cert.total = t;
      std::sort(pieces.begin(), pieces.end());
      cert.pieces = std::move(pieces);
    }
  };
  if (cert.total > lower) {
    std::vector<Region> cut;
    for (const auto& p : st_->xcover) {
      Region q = p & k;
      if (!q.empty()) cut.push_back(q);
    }
    consider(std::move(cut));
  }
  if (cert.total > lower) {
    const auto& g = s.grid();
    Guillotine gl{nu, g, k, {}};
    std::vector<Region> pieces;
    gl.pieces(0, 0, g.side() - 1, g.side() - 1, pieces);
    consider(std::move(pieces));
  }
  if (cert.total == lower) {
    cert.optimal = true;
    return cert;
  }
  // Partition pieces can be taken inside single 8-components of K, because
  // nu is additive on the (pairwise separated) parts of a piece.
  std::vector<Region> comps = s.grid().components8(k);
  for (const auto& c : comps) {
    if (c.count() > 16) return cert;
  }
  try {
    std::vector<Region> pieces;
    ExtValue total(0);
    for (const auto& c : comps) total += component_exact(nu, c, pieces, st_->opt.budget);
    std::sort(pieces.begin(), pieces.end());
    cert.total = total;
    cert.lower = total;
    cert.pieces = std::move(pieces);
    cert.optimal = true;
  } catch (const BudgetExceeded&) {
  }
  return cert;
}

CoverCertificate tilde(const SetFunction& nu, const Region& k, const SearchOptions& opt) {
  TildeSolver solver(nu, opt);
  return solver.solve(k);
}

CoverCertificate simplify_cover(const SetFunction& nu, CoverCertificate cert) {
  const Space& s = *nu.space();
  if (!s.is_grid()) return cert;
  const auto& g = s.grid();
  auto& p = cert.pieces;
  for (bool merged = true; merged;) {
    merged = false;
    for (size_t i = 0; i < p.size() && !merged; ++i) {
      for (size_t j = i + 1; j < p.size() && !merged; ++j) {
        if (!g.adjacent_or_overlapping(p[i], p[j])) continue;
        Region u = p[i] | p[j];
        if (nu.peek(Flavor::closed, u) <= nu.peek(Flavor::closed, p[i]) + nu.peek(Flavor::closed, p[j])) {
          p[i] = u;
          p.erase(p.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }
  std::sort(p.begin(), p.end());
  cert.total = sum_values(nu, p);
  return cert;
}

bool validate_cover(const SetFunction& nu, const CoverCertificate& c, std::string* why,
                    const SearchOptions& opt) {
  const Space& s = *nu.space();
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  Region u;
  ExtValue total(0);
  for (const auto& p : c.pieces) {
    if (!s.is_region(Flavor::closed, p)) return fail("piece " + s.format(p) + " is not compact");
    if (!p.subset_of(c.target)) return fail("piece " + s.format(p) + " leaves the target");
    u |= p;
    total += nu.closed(p);
  }
  if (!c.target.subset_of(u)) return fail("pieces do not cover the target");
  if (total != c.total) return fail("stated total " + c.total.str() + " but pieces sum to " + total.str());
  if (c.optimal) {
    CoverCertificate again = tilde(nu, c.target, opt);
    if (!again.optimal) return fail("optimality could not be re-established within budget");
    if (again.total != c.total) return fail("a cover of total " + again.total.str() + " exists");
  }
  return true;
}

// ------------------------------------------------------------------ packing

struct PackingSolver::State {
  SetFunction lambda;
  SearchOptions opt;
  std::optional<SetFunction> bound;
  std::vector<ExtValue> table;
  std::vector<uint32_t> choice;  // 0 = skip lowest cell
};

namespace {

// +1 when every term is a positive multiple of a monotone additive base, -1
// when every term is a negative one, 0 otherwise.
int signed_dtm_sign(const SetFunction& f) {
  int sign = 0;
  for (const auto& t : f.terms()) {
    if (!base_traits(t).monotone || !base_traits(t).compact_additive) return 0;
    int s = sgn(t.coef) > 0 ? 1 : -1;
    if (sign != 0 && s != sign) return 0;
    sign = s;
  }
  return sign == 0 ? 1 : sign;
}

}  // namespace

PackingSolver::PackingSolver(SetFunction lambda, SearchOptions opt, std::optional<SetFunction> bound)
    : st_(std::make_unique<State>()) {
  st_->lambda = std::move(lambda);
  st_->opt = opt;
  st_->bound = std::move(bound);
  const Space& s = *st_->lambda.space();
  if (!dense_grid(s)) return;
  // P[T] = max(P[T \ p], max over S with p in S of |lambda(S)| + P[T \ dilate S]).
  const int n = s.grid().cell_count();
  const uint32_t full = (uint32_t{1} << n) - 1;
  const auto& d = st_->lambda.dense(Flavor::closed);
  std::vector<ExtValue> absd(full + 1);
  for (uint32_t m = 0; m <= full; ++m) absd[m] = d[m].abs();
  const auto& dil = detail::dilation_table(s.grid());
  st_->choice.assign(full + 1, 0);
  if (auto it = detail::IntTable::build(absd)) {
    std::vector<int64_t> P(full + 1, 0);
    for (uint32_t T = 1; T <= full; ++T) {
      uint32_t p = T & (~T + 1);
      uint32_t rest = T ^ p;
      int64_t best = P[rest];
      uint32_t arg = 0;
      for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
        uint32_t S = p | sub;
        int64_t c = detail::IntTable::add(it->v[S], P[T & ~dil[S]]);
        if (c > best) {
          best = c;
          arg = S;
        }
        if (sub == 0) break;
      }
      P[T] = best;
      st_->choice[T] = arg;
    }
    st_->table.resize(full + 1);
    for (uint32_t T = 0; T <= full; ++T) st_->table[T] = it->decode(P[T]);
  } else {
    std::vector<ExtValue> P(full + 1, ExtValue(0));
    for (uint32_t T = 1; T <= full; ++T) {
      uint32_t p = T & (~T + 1);
      uint32_t rest = T ^ p;
      ExtValue best = P[rest];
      uint32_t arg = 0;
      for (uint32_t sub = rest;; sub = (sub - 1) & rest) {
        uint32_t S = p | sub;
        ExtValue c = absd[S] + P[T & ~dil[S]];
        if (c > best) {
          best = c;
          arg = S;
        }
        if (sub == 0) break;
      }
      P[T] = best;
      st_->choice[T] = arg;
    }
    st_->table = std::move(P);
  }
}

PackingSolver::~PackingSolver() = default;

PackingCertificate PackingSolver::solve(const Region& u) const {
  const SetFunction& lam = st_->lambda;
  const Space& s = *lam.space();
  PackingCertificate cert;
  cert.host = u;
  if (!s.is_grid()) {
    // Disjoint closed pieces inside the kernel of U: branch on the lowest
    // available point (skip it, or take a piece through it).
    Region k = s.kernel(u);
    std::vector<Region> pieces;
    std::vector<ExtValue> val;
    for (const auto& c : s.compacts()) {
      if (!c.empty() && c.subset_of(k)) {
        pieces.push_back(c);
        val.push_back(lam.closed(c).abs());
      }
    }
    std::map<Region, std::pair<ExtValue, int>> memo;
    std::function<ExtValue(const Region&)> f = [&](const Region& avail) -> ExtValue {
      if (avail.empty()) return ExtValue(0);
      auto it = memo.find(avail);
      if (it != memo.end()) return it->second.first;
      int p = avail.lowest();
      Region without = avail;
      without.reset(p);
      ExtValue best = f(without);
      int arg = -1;
      for (size_t i = 0; i < pieces.size(); ++i) {
        if (!pieces[i].test(p) || !pieces[i].subset_of(avail)) continue;
        ExtValue c = val[i] + f(avail - pieces[i]);
        if (c > best) {
          best = c;
          arg = static_cast<int>(i);
        }
      }
      memo[avail] = {best, arg};
      return best;
    };
    cert.total = f(k);
    cert.upper = cert.total;
    cert.optimal = true;
    Region avail = k;
    while (!avail.empty()) {
      int arg = memo.at(avail).second;
      if (arg < 0) {
        avail.reset(avail.lowest());
      } else {
        cert.pieces.push_back(pieces[arg]);
        avail -= pieces[arg];
      }
    }
    return cert;
  }
  if (!st_->table.empty()) {
    uint32_t T = static_cast<uint32_t>(u.low_word());
    cert.total = st_->table[T];
    cert.upper = cert.total;
    cert.optimal = true;
    const auto& dil = detail::dilation_table(s.grid());
    std::vector<uint32_t> parts;
    while (T) {
      uint32_t S = st_->choice[T];
      if (S == 0) {
        T &= T - 1;
      } else {
        parts.push_back(S);
        T &= ~dil[S];
      }
    }
    cert.pieces = unpack(s, parts);
    return cert;
  }
  // Large grids. A (negated) monotone function additive on disjoint compacts
  // packs best as a single piece: the pieces sum to the value of their union.
  int sign = signed_dtm_sign(lam);
  if (sign != 0) {
    cert.pieces = {u};
    cert.total = lam.closed(u).abs();
    cert.upper = cert.total;
    cert.optimal = true;
    return cert;
  }
  std::vector<Region> comps = s.grid().components8(u);
  ExtValue split(0);
  for (const auto& c : comps) split += lam.closed(c).abs();
  ExtValue whole = lam.closed(u).abs();
  if (split > whole) {
    cert.pieces = comps;
    cert.total = split;
  } else {
    cert.pieces = {u};
    cert.total = whole;
  }
  cert.upper = st_->bound ? st_->bound->closed(u) : ExtValue::inf();
  cert.optimal = cert.upper == cert.total;
  return cert;
}

bool validate_packing(const SetFunction& lambda, const PackingCertificate& p, std::string* why,
                      const SearchOptions& opt) {
  const Space& s = *lambda.space();
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  ExtValue total(0);
  for (size_t i = 0; i < p.pieces.size(); ++i) {
    if (!s.is_region(Flavor::closed, p.pieces[i])) return fail("piece is not compact");
    if (!s.contained(Flavor::closed, p.pieces[i], Flavor::open, p.host)) return fail("piece leaves the host");
    for (size_t j = i + 1; j < p.pieces.size(); ++j) {
      if (!s.disjoint(p.pieces[i], p.pieces[j])) return fail("pieces are not disjoint");
    }
    total += lambda.closed(p.pieces[i]).abs();
  }
  if (total != p.total) return fail("stated total " + p.total.str() + " but pieces sum to " + total.str());
  if (p.optimal) {
    PackingSolver solver(lambda, opt);
    PackingCertificate again = solver.solve(p.host);
    if (!again.optimal) return fail("optimality could not be re-established within budget");
    if (again.total != p.total) return fail("a packing of total " + again.total.str() + " exists");
  }
  return true;
}

}  // namespace dtmwb

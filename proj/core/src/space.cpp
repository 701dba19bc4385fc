#include "dtmwb/space.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dtmwb/ext_value.hpp"
#include "text_util.hpp"

namespace dtmwb {

std::string_view to_string(Flavor f) { return f == Flavor::open ? "open" : "closed"; }

// ---------------------------------------------------------------- lattice

FiniteLattice::FiniteLattice(std::vector<std::string> points, std::vector<Region> opens)
    : points_(std::move(points)), opens_(std::move(opens)) {
  if (points_.empty()) throw ParseError("lattice has no points");
  if (points_.size() > static_cast<size_t>(Region::kCapacity)) {
    throw ParseError("lattice has more than 256 points");
  }
  std::set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p).second) throw ParseError("duplicate point '" + p + "'");
  }
  universe_ = Region::first(size());
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  for (const auto& u : opens_) {
    if (!u.subset_of(universe_)) throw ParseError("open set mentions an unknown point");
    closeds_.push_back(universe_ - u);
  }
  std::sort(closeds_.begin(), closeds_.end());
}

FiniteLattice FiniteLattice::parse(std::string_view text) {
  std::vector<std::string> points;
  std::vector<std::vector<std::string>> open_lines;
  bool have_points = false;
  int line_no = 0;
  for (const std::string& raw : detail::split_lines(text)) {
    ++line_no;
    std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'points:' or 'open:'");
    }
    std::string key = detail::trim(line.substr(0, colon));
    std::vector<std::string> items = detail::split_ws(line.substr(colon + 1));
    if (key == "points") {
      if (have_points) throw ParseError("line " + std::to_string(line_no) + ": second 'points:' line");
      points = std::move(items);
      have_points = true;
    } else if (key == "open") {
      open_lines.push_back(std::move(items));
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_points) throw ParseError("missing 'points:' line");
  std::map<std::string, int> index;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!index.emplace(points[i], static_cast<int>(i)).second) {
      throw ParseError("duplicate point '" + points[i] + "'");
    }
  }
  std::vector<Region> opens;
  std::set<Region> seen;
  for (const auto& items : open_lines) {
    Region r;
    for (const auto& name : items) {
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("unknown point '" + name + "'");
      if (r.test(it->second)) throw ParseError("point '" + name + "' repeated in an open set");
      r.set(it->second);
    }
    if (!seen.insert(r).second) throw ParseError("duplicate open set");
    opens.push_back(r);
  }
  return FiniteLattice(std::move(points), std::move(opens));
}

std::optional<int> FiniteLattice::index_of(std::string_view name) const {
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool FiniteLattice::is_open(const Region& r) const {
  return std::binary_search(opens_.begin(), opens_.end(), r);
}

bool FiniteLattice::is_closed(const Region& r) const {
  return std::binary_search(closeds_.begin(), closeds_.end(), r);
}

Region FiniteLattice::kernel(const Region& u) const {
  Region k;
  for (const auto& c : closeds_) {
    if (c.subset_of(u)) k |= c;
  }
  return k;
}

Region FiniteLattice::hull(const Region& a) const {
  Region h = universe_;
  for (const auto& u : opens_) {
    if (a.subset_of(u)) h &= u;
  }
  return h;
}

Region FiniteLattice::closure(const Region& a) const {
  Region h = universe_;
  for (const auto& c : closeds_) {
    if (a.subset_of(c)) h &= c;
  }
  return h;
}

std::vector<Region> FiniteLattice::atoms() const {
  std::map<std::vector<bool>, Region> classes;
  for (int p = 0; p < size(); ++p) {
    std::vector<bool> sig;
    sig.reserve(opens_.size());
    for (const auto& u : opens_) sig.push_back(u.test(p));
    classes[sig].set(p);
  }
  std::vector<Region> out;
  for (auto& [sig, r] : classes) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

std::string FiniteLattice::format(const Region& r) const {
  std::string out = "{";
  bool first = true;
  r.for_each([&](int i) {
    if (!first) out += ",";
    out += i < size() ? points_[i] : "?" + std::to_string(i);
    first = false;
  });
  return out + "}";
}

// ---------------------------------------------------------------- grid

DyadicGrid::DyadicGrid(int k, std::vector<Cell> marked) : k_(k), marked_(std::move(marked)) {
  if (k < 1 || k > kMaxResolution) {
    throw ParseError("grid resolution must be between 1 and " + std::to_string(kMaxResolution));
  }
  side_ = 1 << k;
  universe_ = Region::first(cell_count());
  nbhd8_.resize(cell_count());
  nbhd4_.resize(cell_count());
  for (int i = 0; i < cell_count(); ++i) {
    Cell c = cell(i);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        Cell n{c.row + dr, c.col + dc};
        if (!in_bounds(n)) continue;
        nbhd8_[i].set(index(n));
        if (dr == 0 || dc == 0) nbhd4_[i].set(index(n));
      }
    }
  }
  for (const Cell& m : marked_) {
    if (!in_bounds(m)) throw BadMarkedCells("marked cell " + format(m) + " outside the grid");
  }
}

DyadicGrid DyadicGrid::parse(std::string_view text) {
  std::optional<int> k;
  std::vector<Cell> marked;
  for (const std::string& raw : detail::split_lines(text)) {
    std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.starts_with("grid")) {
      std::string rest = detail::trim(line.substr(4));
      if (!rest.starts_with("k=")) throw ParseError("expected 'grid k=<int>'");
      k = detail::parse_int(rest.substr(2));
    } else if (line.starts_with("marked:")) {
      marked = detail::parse_cells(line.substr(7));
    } else {
      throw ParseError("unexpected grid line '" + line + "'");
    }
  }
  if (!k) throw ParseError("missing 'grid k=' line");
  return DyadicGrid(*k, std::move(marked));
}

Region DyadicGrid::dilate(const Region& s) const {
  Region out;
  s.for_each([&](int i) { out |= nbhd8_[i]; });
  return out;
}

Region DyadicGrid::erode(const Region& s) const {
  Region out;
  s.for_each([&](int i) {
    if (nbhd8_[i].subset_of(s)) out.set(i);
  });
  return out;
}

bool DyadicGrid::adjacent_or_overlapping(const Region& a, const Region& b) const {
  return dilate(a).intersects(b);
}

std::vector<Region> DyadicGrid::components(const Region& s, bool eight) const {
  const auto& nb = eight ? nbhd8_ : nbhd4_;
  std::vector<Region> out;
  Region rest = s;
  while (!rest.empty()) {
    Region comp = Region::single(rest.lowest());
    Region frontier = comp;
    while (!frontier.empty()) {
      Region grown;
      frontier.for_each([&](int i) { grown |= nb[i]; });
      grown &= rest;
      frontier = grown - comp;
      comp |= grown;
    }
    out.push_back(comp);
    rest -= comp;
  }
  return out;
}

std::vector<Region> DyadicGrid::components8(const Region& s) const { return components(s, true); }
std::vector<Region> DyadicGrid::components4(const Region& s) const { return components(s, false); }

Region DyadicGrid::rectangle(int r0, int c0, int r1, int c1) const {
  Region out;
  for (int r = std::max(r0, 0); r <= std::min(r1, side_ - 1); ++r) {
    for (int c = std::max(c0, 0); c <= std::min(c1, side_ - 1); ++c) out.set(index(r, c));
  }
  return out;
}

std::string DyadicGrid::format(Cell c) const {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

std::string DyadicGrid::format(const Region& r) const {
  std::string out = "{";
  bool first = true;
  r.for_each([&](int i) {
    if (!first) out += ",";
    out += format(cell(i));
    first = false;
  });
  return out + "}";
}

// ---------------------------------------------------------------- space

Space::Space(FiniteLattice lattice, std::string label)
    : model_(std::move(lattice)), label_(std::move(label)) {
  const auto& l = std::get<FiniteLattice>(model_);
  universe_ = l.universe();
  compacts_ = l.closeds();
  opens_ = l.opens();
}

Space::Space(DyadicGrid grid) : model_(std::move(grid)) {
  const auto& g = std::get<DyadicGrid>(model_);
  label_ = "grid:" + std::to_string(g.resolution());
  universe_ = g.universe();
  if (g.cell_count() <= 16) {
    const uint64_t n = uint64_t{1} << g.cell_count();
    compacts_.reserve(n);
    for (uint64_t m = 0; m < n; ++m) compacts_.push_back(Region::from_bits(m));
    std::sort(compacts_.begin(), compacts_.end());
    opens_ = compacts_;
  }
}

bool Space::is_region(Flavor f, const Region& r) const {
  if (is_grid()) return r.subset_of(universe_);
  return f == Flavor::open ? lattice().is_open(r) : lattice().is_closed(r);
}

bool Space::contained(Flavor inner_f, const Region& inner, Flavor outer_f, const Region& outer) const {
  if (!is_grid()) return inner.subset_of(outer);
  // A thin neighbourhood reaches into every neighbouring cell, so an open
  // region sits inside a compact only when the compact covers its dilation.
  if (inner_f == Flavor::open && outer_f == Flavor::closed) {
    return grid().dilate(inner).subset_of(outer);
  }
  return inner.subset_of(outer);
}

bool Space::disjoint(const Region& a, const Region& b) const {
  if (!is_grid()) return !a.intersects(b);
  return !grid().adjacent_or_overlapping(a, b);
}

Region Space::kernel(const Region& open) const {
  return is_grid() ? open : lattice().kernel(open);
}

Region Space::hull(const Region& closed) const {
  return is_grid() ? closed : lattice().hull(closed);
}

Region Space::closure(const Region& open) const {
  // On the grid the closure of a thin neighbourhood of T lies inside every
  // open region whose cells contain T, so K_T plays its role.
  return is_grid() ? open : lattice().closure(open);
}

Region Space::open_hull_of_points(const Region& a) const {
  return is_grid() ? a : lattice().hull(a);
}

Region Space::open_complement(const Region& closed) const {
  return is_grid() ? universe_ - grid().dilate(closed) : universe_ - closed;
}

Region Space::closed_complement(const Region& open) const {
  return is_grid() ? universe_ - grid().dilate(open) : universe_ - open;
}

bool Space::is_clopen(const Region& r) const {
  if (is_grid()) return r.empty() || r == universe_;
  return lattice().is_open(r) && lattice().is_closed(r);
}

bool Space::enumerable() const { return !is_grid() || grid().cell_count() <= 16; }

const std::vector<Region>& Space::compacts() const {
  if (!enumerable()) throw BudgetExceeded("compacts of " + label_ + " are not enumerable");
  return compacts_;
}

const std::vector<Region>& Space::opens() const {
  if (!enumerable()) throw BudgetExceeded("opens of " + label_ + " are not enumerable");
  return opens_;
}

std::vector<Region> Space::atoms() const {
  if (!is_grid()) return lattice().atoms();
  std::vector<Region> out;
  for (int i = 0; i < grid().cell_count(); ++i) out.push_back(Region::single(i));
  return out;
}

std::string Space::format(const Region& r) const {
  return is_grid() ? grid().format(r) : lattice().format(r);
}

std::string Space::point_name(int i) const {
  return is_grid() ? grid().format(grid().cell(i)) : lattice().points().at(i);
}

SpacePtr make_lattice_space(FiniteLattice lattice, std::string label) {
  return std::make_shared<const Space>(std::move(lattice), std::move(label));
}

SpacePtr make_grid_space(int k, std::vector<Cell> marked) {
  return std::make_shared<const Space>(DyadicGrid(k, std::move(marked)));
}

// ---------------------------------------------------------------- validation

ValidationReport validate_lattice(const FiniteLattice& l) {
  ValidationReport rep;
  const auto& opens = l.opens();
  const Region x = l.universe();
  if (!l.is_open(Region{})) throw MalformedLattice("the empty set is not listed as open");
  if (!l.is_open(x)) throw MalformedLattice("X is not listed as open");
  for (const auto& u : opens) {
    for (const auto& v : opens) {
      if (!l.is_open(u | v)) {
        throw MalformedLattice("union " + l.format(u) + " | " + l.format(v) + " is not open");
      }
      if (!l.is_open(u & v)) {
        throw MalformedLattice("intersection " + l.format(u) + " & " + l.format(v) + " is not open");
      }
    }
  }
  rep.lattice_closed = true;

  for (const auto& u : opens) {
    if (!u.empty() && u != x && l.is_closed(u)) {
      rep.connected = false;
      rep.counterexamples.push_back("clopen " + l.format(u));
      break;
    }
  }

  const auto& closeds = l.closeds();
  for (size_t i = 0; i < closeds.size() && rep.normal; ++i) {
    for (size_t j = i + 1; j < closeds.size(); ++j) {
      ++rep.checked;
      const Region& f = closeds[i];
      const Region& g = closeds[j];
      if (f.intersects(g)) continue;
      if (l.hull(f).intersects(l.hull(g))) {
        rep.normal = false;
        rep.counterexamples.push_back("not normal: closeds " + l.format(f) + ", " + l.format(g) +
                                      " have no disjoint open supersets");
        break;
      }
    }
  }

  // A compact C inside U u V splits as (C & kernel U) u (C & kernel V); it is
  // enough to test the largest such C, which is kernel(U u V).
  for (size_t i = 0; i < opens.size() && rep.splitting; ++i) {
    for (size_t j = i; j < opens.size(); ++j) {
      ++rep.checked;
      const Region& u = opens[i];
      const Region& v = opens[j];
      Region c = l.kernel(u | v);
      if (!c.subset_of(l.kernel(u) | l.kernel(v))) {
        rep.splitting = false;
        rep.counterexamples.push_back("splitting fails: C=" + l.format(c) + " U=" + l.format(u) +
                                      " V=" + l.format(v));
        break;
      }
    }
  }

  for (const auto& u : opens) {
    ++rep.checked;
    Region k = l.kernel(u);
    Region v = l.hull(k);
    if (!l.closure(v).subset_of(u)) {
      rep.interpolating = false;
      rep.counterexamples.push_back("interpolation fails: K=" + l.format(k) + " U=" + l.format(u));
      break;
    }
  }
  return rep;
}

namespace {

bool grid_split_ok(const Space& s, const Region& c, const Region& u, const Region& v) {
  if (!s.contained(Flavor::closed, c, Flavor::open, u | v)) return true;
  Region c1 = c & s.kernel(u);
  Region c2 = c & s.kernel(v);
  return (c1 | c2) == c && s.contained(Flavor::closed, c1, Flavor::open, u) &&
         s.contained(Flavor::closed, c2, Flavor::open, v);
}

bool grid_interp_ok(const Space& s, const Region& k, const Region& u) {
  if (!s.contained(Flavor::closed, k, Flavor::open, u)) return true;
  Region v = s.hull(k);
  return s.contained(Flavor::closed, k, Flavor::open, v) &&
         s.contained(Flavor::closed, s.closure(v), Flavor::open, u);
}

}  // namespace

ValidationReport grid_axiom_check(const DyadicGrid& g, uint64_t budget, uint64_t seed) {
  ValidationReport rep;
  Space s(g);
  const int n = g.cell_count();
  if (g.resolution() <= 2) {
    // The kernel and containment tests only look one cell away, so whether a
    // cell can be split off depends on the triple restricted to its 3x3
    // window. Enumerating every window configuration covers all triples.
    for (int i = 0; i < n && rep.splitting; ++i) {
      std::vector<int> w = g.closed_neighbourhood(i).indices();
      const uint32_t cfgs = 1u << (2 * w.size());
      for (uint32_t m = 0; m < cfgs; ++m) {
        Region u;
        Region v;
        for (size_t j = 0; j < w.size(); ++j) {
          if ((m >> (2 * j)) & 1u) u.set(w[j]);
          if ((m >> (2 * j + 1)) & 1u) v.set(w[j]);
        }
        ++rep.checked;
        if (!grid_split_ok(s, Region::single(i), u, v)) {
          rep.splitting = false;
          rep.counterexamples.push_back("splitting fails at cell " + g.format(g.cell(i)) +
                                        " U=" + g.format(u) + " V=" + g.format(v));
          break;
        }
      }
    }
    const uint64_t all = uint64_t{1} << n;
    for (uint64_t m = 0; m < all && rep.interpolating; ++m) {
      Region u = Region::from_bits(m);
      ++rep.checked;
      if (!grid_interp_ok(s, s.kernel(u), u)) {
        rep.interpolating = false;
        rep.counterexamples.push_back("interpolation fails at U=" + g.format(u));
      }
    }
    return rep;
  }

  rep.exhaustive = false;
  std::mt19937_64 rng(seed);
  auto random_region = [&](double p) {
    std::bernoulli_distribution coin(p);
    Region r;
    for (int i = 0; i < n; ++i) {
      if (coin(rng)) r.set(i);
    }
    return r;
  };
  const double densities[] = {0.2, 0.5, 0.8};
  for (uint64_t t = 0; t < budget; ++t) {
    double p = densities[t % 3];
    Region u = random_region(p);
    Region v = random_region(p);
    Region c = random_region(p) & (u | v);
    ++rep.checked;
    if (rep.splitting && !grid_split_ok(s, c, u, v)) {
      rep.splitting = false;
      rep.counterexamples.push_back("splitting fails: C=" + g.format(c) + " U=" + g.format(u) +
                                    " V=" + g.format(v));
    }
    if (rep.interpolating && !grid_interp_ok(s, c, u)) {
      rep.interpolating = false;
      rep.counterexamples.push_back("interpolation fails: K=" + g.format(c) + " U=" + g.format(u));
    }
    Region f = random_region(p);
    Region h = random_region(p) - g.dilate(f);
    if (rep.normal && s.disjoint(f, h) && !s.disjoint(s.hull(f), s.hull(h))) {
      rep.normal = false;
      rep.counterexamples.push_back("not normal: " + g.format(f) + ", " + g.format(h));
    }
  }
  return rep;
}

ValidationReport validate_space(const Space& space, uint64_t budget, uint64_t seed) {
  if (space.is_grid()) return grid_axiom_check(space.grid(), budget, seed);
  return validate_lattice(space.lattice());
}

}  // namespace dtmwb

#include "dtmwb/instances.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtmwb/classify.hpp"
#include "text_util.hpp"

namespace dtmwb {

SetFunction SignedPresentation::value() const {
  SetFunction p = pos;
  SetFunction n = neg;
  return pos - neg;
}

namespace {

const DyadicGrid& need_grid(const SpacePtr& s, const std::string& what) {
  if (!s->is_grid()) throw ParseError(what + " needs a grid model");
  return s->grid();
}

std::string cells_name(const std::vector<Cell>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(cells[i].row) + "," + std::to_string(cells[i].col) + ")";
  }
  return out;
}

bool adjacent(Cell a, Cell b) { return std::abs(a.row - b.row) <= 1 && std::abs(a.col - b.col) <= 1; }

}  // namespace

SetFunction lebesgue_cells(SpacePtr grid, std::vector<Rational> weights, std::string name) {
  const auto& g = need_grid(grid, "lebesgue");
  if (static_cast<int>(weights.size()) != g.cell_count()) {
    throw ParseError("lebesgue needs " + std::to_string(g.cell_count()) + " weights");
  }
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw NegativeWeight("negative cell weight " + to_string(w));
  }
  Traits t;
  t.monotone = true;
  t.compact_additive = true;
  t.weights = weights;
  t.minorant = std::vector<ExtValue>(weights.begin(), weights.end());
  auto w = std::make_shared<const std::vector<Rational>>(std::move(weights));
  Rule rule = [w](Flavor, const Region& r) {
    Rational sum = 0;
    r.for_each([&](int i) { sum += (*w)[i]; });
    return ExtValue(sum);
  };
  return SetFunction::from_rule(std::move(grid), std::move(name), std::move(rule), std::move(t));
}

SetFunction lebesgue(SpacePtr grid, const Rational& total) {
  const auto& g = need_grid(grid, "lebesgue");
  Rational each = total / g.cell_count();
  std::string name = total == 1 ? "lebesgue" : "lebesgue:uniform " + to_string(each);
  return lebesgue_cells(std::move(grid), std::vector<Rational>(g.cell_count(), each), name);
}

std::array<Cell, 3> default_aarnes_marks(int k, int which) {
  if (k < 2) throw BadMarkedCells("no room for three separated marked cells at k=" + std::to_string(k));
  if (which == 1) {
    if (k != 4) throw BadMarkedCells("the second default triple exists only at k=4");
    return {Cell{5, 9}, Cell{9, 13}, Cell{13, 10}};
  }
  if (k == 2) return {Cell{0, 0}, Cell{0, 3}, Cell{3, 1}};
  const int s = (1 << k) / 8;
  return {Cell{s, s}, Cell{s, 6 * s}, Cell{6 * s, 3 * s}};
}

SetFunction aarnes_qm(SpacePtr grid, std::array<Cell, 3> marks) {
  const auto& g = need_grid(grid, "aarnes");
  for (int i = 0; i < 3; ++i) {
    const Cell& m = marks[i];
    if (!g.in_bounds(m)) throw BadMarkedCells("marked cell " + g.format(m) + " is outside the grid");
    if (g.resolution() >= 3 &&
        (m.row == 0 || m.col == 0 || m.row == g.side() - 1 || m.col == g.side() - 1)) {
      throw BadMarkedCells("marked cell " + g.format(m) + " lies on the outer ring");
    }
    for (int j = 0; j < i; ++j) {
      if (adjacent(m, marks[j])) {
        throw BadMarkedCells("marked cells " + g.format(m) + " and " + g.format(marks[j]) + " touch");
      }
    }
  }
  std::array<int, 3> idx{};
  for (int i = 0; i < 3; ++i) idx[i] = g.index(marks[i]);
  SpacePtr sp = grid;
  Rule rule = [sp, idx](Flavor, const Region& r) {
    const auto& gg = sp->grid();
    Region done;
    for (int i = 0; i < 3; ++i) {
      if (!r.test(idx[i]) || done.test(idx[i])) continue;
      // 8-component of this mark inside r.
      Region comp = Region::single(idx[i]);
      Region frontier = comp;
      while (!frontier.empty()) {
        Region grown = gg.dilate(frontier) & r;
        frontier = grown - comp;
        comp |= grown;
      }
      int count = 0;
      for (int j = 0; j < 3; ++j) count += comp.test(idx[j]) ? 1 : 0;
      if (count >= 2) return ExtValue(1);
      done |= comp;
    }
    return ExtValue(0);
  };
  Traits t;
  t.monotone = true;
  t.compact_additive = true;
  std::vector<Cell> v(marks.begin(), marks.end());
  return SetFunction::from_rule(std::move(grid), "aarnes:" + cells_name(v), std::move(rule), std::move(t));
}

SetFunction infinity_dtm(SpacePtr grid, Cell marked) {
  const auto& g = need_grid(grid, "infdtm");
  if (!g.in_bounds(marked)) throw BadMarkedCells("marked cell " + g.format(marked) + " is outside the grid");
  const int x = g.index(marked);
  Traits t;
  t.monotone = true;
  t.compact_additive = true;
  std::vector<ExtValue> w(g.cell_count(), ExtValue(0));
  w[x] = ExtValue::inf();
  t.minorant = std::move(w);
  Rule rule = [x](Flavor, const Region& r) { return r.test(x) ? ExtValue::inf() : ExtValue(0); };
  return SetFunction::from_rule(std::move(grid), "infdtm:" + cells_name({marked}), std::move(rule), std::move(t));
}

SetFunction point_weights(SpacePtr lattice, std::vector<Rational> weights, std::string name) {
  if (lattice->is_grid()) throw ParseError("point weights need a lattice model");
  weights.resize(lattice->universe().count());
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw NegativeWeight("negative point weight " + to_string(w));
  }
  Traits t;
  t.monotone = true;
  t.compact_additive = true;
  t.weights = weights;
  t.minorant = std::vector<ExtValue>(weights.begin(), weights.end());
  auto w = std::make_shared<const std::vector<Rational>>(std::move(weights));
  Rule rule = [w](Flavor, const Region& r) {
    Rational sum = 0;
    r.for_each([&](int i) { sum += (*w)[i]; });
    return ExtValue(sum);
  };
  return SetFunction::from_rule(std::move(lattice), std::move(name), std::move(rule), std::move(t));
}

SetFunction point_mass(SpacePtr lattice, int x) {
  std::vector<Rational> w(lattice->universe().count(), Rational(0));
  w.at(x) = 1;
  std::string name = "pointmass:" + lattice->point_name(x);
  return point_weights(std::move(lattice), std::move(w), std::move(name));
}

namespace {

// Splits at `sep` outside parentheses.
std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == sep && depth == 0) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.emplace_back(s.substr(start));
  return out;
}

Instance from_fn(SetFunction f) {
  Instance in;
  in.name = f.name();
  in.fn = std::move(f);
  return in;
}

}  // namespace

Instance make_instance(const SpacePtr& space, std::string_view spec_in) {
  std::string spec = detail::trim(spec_in);
  if (spec.empty()) throw ParseError("empty instance name");
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : detail::trim(spec.substr(colon + 1));

  if (spec == "zero") return from_fn(SetFunction::zero(space));

  if (head == "signed") {
    auto parts = split_top(arg, '-');
    if (parts.size() < 2) throw ParseError("signed:NAME-NAME needs a '-'");
    // The first top-level '-' separates the two parts.
    std::string rest;
    for (size_t i = 1; i < parts.size(); ++i) rest += (i > 1 ? "-" : "") + parts[i];
    Instance p = make_instance(space, parts[0]);
    Instance n = make_instance(space, rest);
    Instance in;
    in.presentation = SignedPresentation{p.fn, n.fn};
    in.fn = in.presentation->value();
    in.name = spec;
    return in;
  }
  if (head == "mix") {
    std::optional<SetFunction> acc;
    for (const auto& term : split_top(arg, '+')) {
      std::string t = detail::trim(term);
      Rational coef = 1;
      auto star = t.find('*');
      if (star != std::string::npos && t.find('(') > star) {
        coef = parse_rational(t.substr(0, star));
        t = detail::trim(t.substr(star + 1));
      }
      SetFunction f = make_instance(space, t).fn;
      acc = acc ? combine(Rational(1), *acc, coef, f) : scale(coef, f);
    }
    if (!acc) throw ParseError("mix needs terms");
    return from_fn(acc->renamed(spec));
  }
  if (head == "lebesgue") {
    const auto& g = need_grid(space, "lebesgue");
    if (arg.empty()) return from_fn(lebesgue(space));
    if (arg.starts_with("uniform")) {
      Rational w = parse_rational(arg.substr(7));
      return from_fn(lebesgue_cells(space, std::vector<Rational>(g.cell_count(), w), spec));
    }
    std::vector<Rational> w;
    for (const auto& x : detail::split(arg, ',')) w.push_back(parse_rational(x));
    return from_fn(lebesgue_cells(space, std::move(w), spec));
  }
  if (head == "aarnes" || head == "aarnes2") {
    const auto& g = need_grid(space, "aarnes");
    std::array<Cell, 3> marks{};
    if (arg.empty()) {
      marks = default_aarnes_marks(g.resolution(), head == "aarnes2" ? 1 : 0);
    } else {
      auto cells = detail::parse_cells(arg);
      if (cells.size() != 3) throw BadMarkedCells("aarnes needs exactly three marked cells");
      std::copy(cells.begin(), cells.end(), marks.begin());
    }
    return from_fn(aarnes_qm(space, marks));
  }
  if (head == "infdtm") {
    const auto& g = need_grid(space, "infdtm");
    Cell c{g.side() / 2, g.side() / 2};
    if (!arg.empty()) {
      auto cells = detail::parse_cells(arg);
      if (cells.size() != 1) throw BadMarkedCells("infdtm needs one marked cell");
      c = cells[0];
    }
    return from_fn(infinity_dtm(space, c));
  }
  if (head == "atoms" || head == "pointmass") {
    if (space->is_grid()) throw ParseError(head + " needs a lattice model");
    const auto& lat = space->lattice();
    if (head == "pointmass") {
      auto x = lat.index_of(arg);
      if (!x) throw ParseError("unknown point '" + arg + "'");
      return from_fn(point_mass(space, *x));
    }
    std::vector<Rational> w(lat.size(), Rational(0));
    for (const auto& item : detail::split(arg, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("atoms entries look like p=w");
      auto x = lat.index_of(detail::trim(item.substr(0, eq)));
      if (!x) throw ParseError("unknown point in '" + item + "'");
      w[*x] = parse_rational(item.substr(eq + 1));
    }
    return from_fn(point_weights(space, std::move(w), spec));
  }
  if (!space->is_grid() && std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_fn(SetFunction::parse(space, buf.str(), std::filesystem::path(spec).filename().string()));
  }
  throw ParseError("unknown instance '" + spec + "'");
}

std::vector<EnumeratedDtm> enumerate_dtms(const SpacePtr& lattice, const std::vector<Rational>& grid,
                                          size_t max_closeds, uint64_t budget) {
  if (lattice->is_grid()) throw Error("enumerate_dtms needs a lattice model");
  std::vector<EnumeratedDtm> out;
  if (grid.empty()) return out;
  const auto& closeds = lattice->compacts();
  if (closeds.size() > max_closeds) {
    throw BudgetExceeded(std::to_string(closeds.size()) + " closed sets exceed the enumeration limit");
  }
  // The empty set is pinned to 0; every other closed set ranges over the grid.
  std::vector<Region> free;
  for (const auto& c : closeds) {
    if (!c.empty()) free.push_back(c);
  }
  double total = 1;
  for (size_t i = 0; i < free.size(); ++i) total *= static_cast<double>(grid.size());
  if (total > static_cast<double>(budget)) throw BudgetExceeded("value tables exceed the enumeration budget");
  std::vector<size_t> digit(free.size(), 0);
  int serial = 0;
  for (;;) {
    std::map<Region, ExtValue> raw_vals;
    raw_vals[Region{}] = ExtValue(0);
    for (size_t i = 0; i < free.size(); ++i) raw_vals[free[i]] = ExtValue(grid[digit[i]]);
    auto shared = std::make_shared<std::map<Region, ExtValue>>(std::move(raw_vals));
    SetFunction raw = SetFunction::from_rule(lattice, "table", [shared](Flavor f, const Region& r) {
      if (f == Flavor::closed) return shared->at(r);
      return ExtValue(0);  // open values are replaced by regularization
    });
    RegularizeResult reg = regularize(raw);
    if (reg.conflicts.empty()) {
      ClassificationReport rep = classify(reg.fn);
      if (rep.is_dtm) {
        std::ostringstream name;
        name << "enum#" << serial << "[";
        for (size_t i = 0; i < free.size(); ++i) {
          name << (i ? " " : "") << lattice->format(free[i]) << "=" << to_string(grid[digit[i]]);
        }
        name << "]";
        out.push_back({reg.fn.renamed(name.str()), rep.is_measure_restriction, rep.is_tm});
      }
    }
    ++serial;
    size_t i = 0;
    while (i < digit.size() && ++digit[i] == grid.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return out;
}

}  // namespace dtmwb

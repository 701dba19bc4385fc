#include "dtmwb/sampling.hpp"

#include <algorithm>
#include <set>

#include "text_util.hpp"

namespace dtmwb {

uint64_t derive_seed(uint64_t seed, std::string_view a, std::string_view b) {
  uint64_t h = detail::fnv1a(a, 0xcbf29ce484222325ull ^ (seed * 0x9e3779b97f4a7c15ull));
  h = detail::fnv1a("/", h);
  return detail::fnv1a(b, h);
}

RegionSampler::RegionSampler(const Space& space, uint64_t seed, std::vector<Cell> marks)
    : space_(space), rng_(seed), marks_(std::move(marks)) {}

Region RegionSampler::density(double p) {
  std::bernoulli_distribution coin(p);
  Region r;
  space_.universe().for_each([&](int i) {
    if (coin(rng_)) r.set(i);
  });
  return r;
}

Region RegionSampler::rectangle() {
  const auto& g = space_.grid();
  std::uniform_int_distribution<int> d(0, g.side() - 1);
  int r0 = d(rng_), r1 = d(rng_), c0 = d(rng_), c1 = d(rng_);
  return g.rectangle(std::min(r0, r1), std::min(c0, c1), std::max(r0, r1), std::max(c0, c1));
}

Region RegionSampler::blob() {
  const auto& g = space_.grid();
  std::uniform_int_distribution<int> start(0, g.cell_count() - 1);
  std::uniform_int_distribution<int> size(1, g.cell_count());
  Region r = Region::single(start(rng_));
  int target = size(rng_);
  while (r.count() < target) {
    Region frontier = g.dilate(r) - r;
    if (frontier.empty()) break;
    auto idx = frontier.indices();
    std::uniform_int_distribution<size_t> pick(0, idx.size() - 1);
    r.set(idx[pick(rng_)]);
  }
  return r;
}

Region RegionSampler::path() {
  const auto& g = space_.grid();
  if (marks_.size() < 2) return blob();
  std::uniform_int_distribution<size_t> pick(0, marks_.size() - 1);
  Cell a = marks_[pick(rng_)];
  Cell b = marks_[pick(rng_)];
  Region r = Region::single(g.index(a));
  std::bernoulli_distribution coin(0.5);
  // Monotone staircase from a to b, with random row/column order.
  while (a != b) {
    bool move_row = a.row != b.row && (a.col == b.col || coin(rng_));
    if (move_row) a.row += a.row < b.row ? 1 : -1;
    else a.col += a.col < b.col ? 1 : -1;
    r.set(g.index(a));
  }
  if (coin(rng_)) r |= density(0.2);
  return r;
}

Region RegionSampler::next() {
  const uint64_t kind = draws_++ % 6;
  if (!space_.is_grid()) {
    const auto& all = space_.compacts();
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    return all[pick(rng_)];
  }
  switch (kind) {
    case 0: return density(0.2);
    case 1: return density(0.5);
    case 2: return density(0.8);
    case 3: return rectangle();
    case 4: return blob();
    default: return path();
  }
}

Region RegionSampler::next_within(const Region& host) {
  if (!space_.is_grid()) {
    std::vector<Region> sub;
    for (const auto& c : space_.compacts()) {
      if (c.subset_of(host)) sub.push_back(c);
    }
    std::uniform_int_distribution<size_t> pick(0, sub.size() - 1);
    return sub[pick(rng_)];
  }
  return next() & host;
}

std::vector<Region> compact_family(const Space& space, size_t budget, uint64_t seed,
                                   const std::vector<Cell>& marks, bool* exhaustive) {
  if (space.enumerable() && space.compacts().size() <= budget) {
    if (exhaustive) *exhaustive = true;
    return space.compacts();
  }
  if (exhaustive) *exhaustive = false;
  std::set<Region> seen;
  std::vector<Region> out;
  auto add = [&](const Region& r) {
    if (seen.insert(r).second) out.push_back(r);
  };
  add(Region{});
  add(space.universe());
  for (const auto& a : space.atoms()) {
    Region c = space.is_grid() ? a : space.lattice().closure(a);
    add(c);
  }
  RegionSampler sampler(space, seed, marks);
  // Bounded retries: small models may have fewer distinct compacts than asked.
  size_t attempts = 0;
  while (out.size() < budget && attempts < budget * 20) {
    add(sampler.next());
    ++attempts;
  }
  return out;
}

}  // namespace dtmwb

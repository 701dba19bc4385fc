#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dtmwb/region.hpp"
#include "dtmwb/space.hpp"

namespace dtmwb {

/// Seed for one (suite, instance) task, independent of scheduling.
uint64_t derive_seed(uint64_t seed, std::string_view a, std::string_view b = {});

/// Random compact regions: density subsets, rectangles, connected blobs and
/// paths between marked cells on the grid; uniform picks on a lattice.
class RegionSampler {
 public:
  RegionSampler(const Space& space, uint64_t seed, std::vector<Cell> marks = {});

  Region next();
  /// A random compact contained in `host` (grid: cell subset).
  Region next_within(const Region& host);
  std::mt19937_64& rng() { return rng_; }

 private:
  Region density(double p);
  Region rectangle();
  Region blob();
  Region path();

  const Space& space_;
  std::mt19937_64 rng_;
  std::vector<Cell> marks_;
  uint64_t draws_ = 0;
};

/// The compacts a suite should visit: every compact when the model lists at
/// most `budget` of them, otherwise `budget` distinct samples that always
/// include the empty set, X and all singletons. `exhaustive` reports which.
std::vector<Region> compact_family(const Space& space, size_t budget, uint64_t seed,
                                   const std::vector<Cell>& marks, bool* exhaustive = nullptr);

}  // namespace dtmwb

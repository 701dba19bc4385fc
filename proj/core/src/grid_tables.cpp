#include "grid_tables.hpp"

#include <array>
#include <bit>
#include <mutex>

namespace dtmwb::detail {

const std::vector<uint32_t>& dilation_table(const DyadicGrid& g) {
  static std::array<std::once_flag, 3> once;
  static std::array<std::vector<uint32_t>, 3> tables;
  const int k = g.resolution();
  if (k > 2) throw BudgetExceeded("dilation tables exist only for k <= 2");
  std::call_once(once[k], [&] {
    const int n = g.cell_count();
    std::vector<uint32_t> nb(n);
    for (int i = 0; i < n; ++i) nb[i] = static_cast<uint32_t>(g.closed_neighbourhood(i).low_word());
    auto& t = tables[k];
    t.assign(size_t{1} << n, 0);
    for (uint32_t m = 1; m < t.size(); ++m) t[m] = t[m & (m - 1)] | nb[std::countr_zero(m)];
  });
  return tables[k];
}

std::vector<ExtValue> subset_max(const std::vector<ExtValue>& f, int n) {
  std::vector<ExtValue> out = f;
  for (int i = 0; i < n; ++i) {
    const uint32_t bit = uint32_t{1} << i;
    for (uint32_t m = 0; m < out.size(); ++m) {
      if ((m & bit) && out[m] < out[m ^ bit]) out[m] = out[m ^ bit];
    }
  }
  return out;
}

std::vector<ExtValue> superset_min(const std::vector<ExtValue>& f, int n) {
  std::vector<ExtValue> out = f;
  for (int i = 0; i < n; ++i) {
    const uint32_t bit = uint32_t{1} << i;
    for (uint32_t m = 0; m < out.size(); ++m) {
      if (!(m & bit) && out[m | bit] < out[m]) out[m] = out[m | bit];
    }
  }
  return out;
}

}  // namespace dtmwb::detail

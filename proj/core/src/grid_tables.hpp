#pragma once

// Dense helpers for grids with at most 16 cells.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "dtmwb/ext_value.hpp"
#include "dtmwb/space.hpp"

namespace dtmwb::detail {

/// dil[m] = cells of the dilation of the low mask m; shared per resolution.
const std::vector<uint32_t>& dilation_table(const DyadicGrid& g);

/// out[m] = max over submasks of f.
std::vector<ExtValue> subset_max(const std::vector<ExtValue>& f, int n);
/// out[m] = min over supermasks of f.
std::vector<ExtValue> superset_min(const std::vector<ExtValue>& f, int n);

// Nonnegative extended values scaled to a common denominator, for the
// subset dynamic programs at k <= 2. +inf becomes kInf and sums saturate.
struct IntTable {
  static constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  std::vector<int64_t> v;
  mpz_class den = 1;

  static int64_t add(int64_t a, int64_t b) { return (a >= kInf || b >= kInf) ? kInf : a + b; }

  ExtValue decode(int64_t x) const {
    if (x >= kInf) return ExtValue::inf();
    return ExtValue(Rational(mpz_class(static_cast<long>(x)), den));
  }

  static std::optional<IntTable> build(const std::vector<ExtValue>& vals) {
    IntTable t;
    for (const auto& x : vals) {
      if (x.sign() < 0 || x.is_neg_inf()) return std::nullopt;
      if (x.is_finite()) mpz_lcm(t.den.get_mpz_t(), t.den.get_mpz_t(), x.value().get_den_mpz_t());
    }
    const mpz_class limit = mpz_class(1) << 44;
    t.v.resize(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) {
      if (vals[i].is_pos_inf()) {
        t.v[i] = kInf;
        continue;
      }
      mpz_class num = vals[i].value().get_num() * (t.den / vals[i].value().get_den());
      if (num > limit) return std::nullopt;
      t.v[i] = num.get_si();
    }
    return t;
  }
};

}  // namespace dtmwb::detail

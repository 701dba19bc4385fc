#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dtmwb {

/// A subset of at most 256 points (lattice points or grid cells), as a bitmask.
class Region {
 public:
  static constexpr int kCapacity = 256;

  constexpr Region() = default;

  static Region single(int i) {
    Region r;
    r.set(i);
    return r;
  }
  /// Bits [0, n).
  static Region first(int n);
  static Region from_bits(uint64_t low) {
    Region r;
    r.w_[0] = low;
    return r;
  }
  /// Parses the hex form produced by hex().
  static Region from_hex(std::string_view text);

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  bool empty() const { return (w_[0] | w_[1] | w_[2] | w_[3]) == 0; }
  int count() const {
    return std::popcount(w_[0]) + std::popcount(w_[1]) + std::popcount(w_[2]) +
           std::popcount(w_[3]);
  }
  /// Index of the lowest set bit, or -1.
  int lowest() const;
  bool subset_of(const Region& o) const {
    for (int i = 0; i < 4; ++i) {
      if (w_[i] & ~o.w_[i]) return false;
    }
    return true;
  }
  bool intersects(const Region& o) const {
    for (int i = 0; i < 4; ++i) {
      if (w_[i] & o.w_[i]) return true;
    }
    return false;
  }

  Region operator|(const Region& o) const {
    Region r;
    for (int i = 0; i < 4; ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }
  Region operator&(const Region& o) const {
    Region r;
    for (int i = 0; i < 4; ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  /// Set difference.
  Region operator-(const Region& o) const {
    Region r;
    for (int i = 0; i < 4; ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
  }
  Region& operator|=(const Region& o) { return *this = *this | o; }
  Region& operator&=(const Region& o) { return *this = *this & o; }
  Region& operator-=(const Region& o) { return *this = *this - o; }

  friend bool operator==(const Region&, const Region&) = default;
  /// Total order for deterministic tie-breaking: the lowest index where the two
  /// differ decides, and the set holding it sorts first.
  friend std::strong_ordering operator<=>(const Region& a, const Region& b);

  std::vector<int> indices() const;
  uint64_t low_word() const { return w_[0]; }
  std::string hex() const;
  size_t hash() const;

  template <typename F>
  void for_each(F&& f) const {
    for (int wi = 0; wi < 4; ++wi) {
      uint64_t w = w_[wi];
      while (w) {
        int b = std::countr_zero(w);
        f(wi * 64 + b);
        w &= w - 1;
      }
    }
  }

 private:
  std::array<uint64_t, 4> w_{};
};

struct RegionHash {
  size_t operator()(const Region& r) const { return r.hash(); }
};

/// Calls f(sub) for every subset of `r` (including empty and r), in a fixed order.
/// Only usable for regions with at most 30 points.
void for_each_subset(const Region& r, const std::function<void(const Region&)>& f);

}  // namespace dtmwb

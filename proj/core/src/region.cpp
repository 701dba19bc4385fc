#include "dtmwb/region.hpp"

#include <stdexcept>

#include "dtmwb/ext_value.hpp"

namespace dtmwb {

Region Region::first(int n) {
  Region r;
  for (int i = 0; i < n; ++i) r.set(i);
  return r;
}

int Region::lowest() const {
  for (int i = 0; i < 4; ++i) {
    if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
  }
  return -1;
}

std::strong_ordering operator<=>(const Region& a, const Region& b) {
  // Compare the sorted index lists lexicographically: the first differing
  // index decides, a set that holds it sorts first.
  Region diff;
  for (int i = 0; i < 4; ++i) diff.w_[i] = a.w_[i] ^ b.w_[i];
  int d = diff.lowest();
  if (d < 0) return std::strong_ordering::equal;
  return a.test(d) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::vector<int> Region::indices() const {
  std::vector<int> out;
  for_each([&](int i) { out.push_back(i); });
  return out;
}

std::string Region::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  bool started = false;
  for (int wi = 3; wi >= 0; --wi) {
    for (int nib = 15; nib >= 0; --nib) {
      int v = static_cast<int>((w_[wi] >> (nib * 4)) & 0xf);
      if (v || started) {
        out.push_back(kDigits[v]);
        started = true;
      }
    }
  }
  if (!started) out = "0";
  return "0x" + out;
}

Region Region::from_hex(std::string_view text) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.empty() || text.size() > 64) throw ParseError("bad region hex");
  Region r;
  int bit = 0;
  for (auto it = text.rbegin(); it != text.rend(); ++it, bit += 4) {
    char c = *it;
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw ParseError("bad region hex digit");
    r.w_[bit >> 6] |= static_cast<uint64_t>(v) << (bit & 63);
  }
  return r;
}

size_t Region::hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint64_t w : w_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<size_t>(h);
}

void for_each_subset(const Region& r, const std::function<void(const Region&)>& f) {
  std::vector<int> idx = r.indices();
  if (idx.size() > 30) throw BudgetExceeded("subset enumeration over more than 30 points");
  const uint64_t n = uint64_t{1} << idx.size();
  for (uint64_t m = 0; m < n; ++m) {
    Region s;
    for (size_t j = 0; j < idx.size(); ++j) {
      if ((m >> j) & 1u) s.set(idx[j]);
    }
    f(s);
  }
}

}  // namespace dtmwb

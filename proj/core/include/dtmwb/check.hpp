#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dtmwb {

enum class Verdict { pass, fail, skipped, bound_only };

std::string_view to_string(Verdict v);

/// One verified statement: a verdict, and for failures a witness that can be re-checked.
struct Check {
  std::string statement;
  Verdict verdict = Verdict::pass;
  std::string witness;
  bool exhaustive = true;
  uint64_t checked = 0;

  bool passed() const { return verdict == Verdict::pass; }
};

inline Check make_check(std::string statement, bool ok, std::string witness = {}, bool exhaustive = true,
                        uint64_t checked = 0) {
  return Check{std::move(statement), ok ? Verdict::pass : Verdict::fail, std::move(witness), exhaustive, checked};
}

inline Check skipped_check(std::string statement, std::string reason) {
  return Check{std::move(statement), Verdict::skipped, std::move(reason), true, 0};
}

/// True when no check failed (skipped and bound-only rows do not count as failures).
inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) return false;
  }
  return true;
}

}  // namespace dtmwb

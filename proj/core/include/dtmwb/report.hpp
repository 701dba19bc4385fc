#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dtmwb/check.hpp"

namespace dtmwb {

struct ReportRow {
  std::string suite;
  std::string statement;
  std::string instance;
  Verdict verdict = Verdict::pass;
  std::string witness;
  double wall_ms = 0;
};

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

/// Header plus one line per row; the wall-time column only with `timing`.
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows, bool timing = false);
std::string to_csv(const std::vector<ReportRow>& rows, bool timing = false);

/// 1 if any row failed, else 3 if any row is bound-only, else 0.
int exit_code(const std::vector<ReportRow>& rows);

}  // namespace dtmwb

#include "dtmwb/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace dtmwb {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::skipped:
      return "skipped";
    case Verdict::bound_only:
      return "bound-only";
  }
  return "?";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows, bool timing) {
  out << "suite,statement,instance,verdict,witness";
  if (timing) out << ",wall_ms";
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.suite) << ',' << csv_field(r.statement) << ',' << csv_field(r.instance) << ','
        << to_string(r.verdict) << ',' << csv_field(r.witness);
    if (timing) out << ',' << std::fixed << std::setprecision(1) << r.wall_ms;
    out << '\n';
  }
}

std::string to_csv(const std::vector<ReportRow>& rows, bool timing) {
  std::ostringstream s;
  write_csv(s, rows, timing);
  return s.str();
}

int exit_code(const std::vector<ReportRow>& rows) {
  bool bound = false;
  for (const auto& r : rows) {
    if (r.verdict == Verdict::fail) return 1;
    bound = bound || r.verdict == Verdict::bound_only;
  }
  return bound ? 3 : 0;
}

}  // namespace dtmwb

#include "dtmwb/certificate_io.hpp"

#include <ostream>
#include <sstream>

#include "text_util.hpp"

namespace dtmwb {

void write_certificate(std::ostream& out, const StoredCertificate& c) {
  std::visit(
      [&](const auto& cert) {
        using T = std::decay_t<decltype(cert)>;
        constexpr bool cover = std::is_same_v<T, CoverCertificate>;
        out << (cover ? "cover" : "packing") << '\n';
        out << "model " << c.model << '\n';
        out << "function " << c.function << '\n';
        if constexpr (cover) {
          out << "target " << cert.target.hex() << '\n';
          out << "total " << cert.total << '\n';
          out << "bound " << cert.lower << '\n';
        } else {
          out << "host " << cert.host.hex() << '\n';
          out << "total " << cert.total << '\n';
          out << "bound " << cert.upper << '\n';
        }
        out << "optimal " << (cert.optimal ? 1 : 0) << '\n';
        for (const auto& p : cert.pieces) out << "piece " << p.hex() << '\n';
        out << "end\n";
      },
      c.cert);
}

std::string format_certificate(const StoredCertificate& c) {
  std::ostringstream s;
  write_certificate(s, c);
  return s.str();
}

std::vector<StoredCertificate> parse_certificates(std::string_view text) {
  std::vector<StoredCertificate> out;
  bool open = false;
  bool cover = true;
  StoredCertificate cur;
  CoverCertificate cc;
  PackingCertificate pc;
  int line_no = 0;
  for (const std::string& raw : detail::split_lines(text)) {
    ++line_no;
    std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto where = "certificate line " + std::to_string(line_no) + ": ";
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string val = sp == std::string::npos ? "" : detail::trim(line.substr(sp + 1));
    if (!open) {
      if (key != "cover" && key != "packing") throw ParseError(where + "expected 'cover' or 'packing'");
      open = true;
      cover = key == "cover";
      cur = {};
      cc = {};
      pc = {};
      continue;
    }
    if (key == "model") {
      cur.model = val;
    } else if (key == "function") {
      cur.function = val;
    } else if (key == "target" && cover) {
      cc.target = Region::from_hex(val);
    } else if (key == "host" && !cover) {
      pc.host = Region::from_hex(val);
    } else if (key == "total") {
      (cover ? cc.total : pc.total) = ExtValue::parse(val);
    } else if (key == "bound") {
      (cover ? cc.lower : pc.upper) = ExtValue::parse(val);
    } else if (key == "optimal") {
      (cover ? cc.optimal : pc.optimal) = val == "1";
    } else if (key == "piece") {
      (cover ? cc.pieces : pc.pieces).push_back(Region::from_hex(val));
    } else if (key == "end") {
      if (cover) {
        cur.cert = cc;
      } else {
        cur.cert = pc;
      }
      out.push_back(cur);
      open = false;
    } else {
      throw ParseError(where + "unexpected '" + key + "'");
    }
  }
  if (open) throw ParseError("certificate block without 'end'");
  return out;
}

}  // namespace dtmwb

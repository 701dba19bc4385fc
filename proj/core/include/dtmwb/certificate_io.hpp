#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dtmwb/cover.hpp"

namespace dtmwb {

/// A certificate together with the model label and function name it was made for.
struct StoredCertificate {
  std::string model;
  std::string function;
  std::variant<CoverCertificate, PackingCertificate> cert;
};

/// Text blocks:
///   cover | packing
///   model <label>
///   function <name>
///   target|host <hex mask>
///   total <value>
///   bound <value>      (lower bound for covers, upper bound for packings)
///   optimal 0|1
///   piece <hex mask>   (repeated)
///   end
void write_certificate(std::ostream& out, const StoredCertificate& c);
std::string format_certificate(const StoredCertificate& c);
std::vector<StoredCertificate> parse_certificates(std::string_view text);

}  // namespace dtmwb

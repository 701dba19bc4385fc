#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "dtmwb/space.hpp"

namespace testing_helpers {

inline std::string slurp(const std::string& name) {
  std::ifstream in(std::string(DTMWB_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dtmwb::SpacePtr l3() {
  return dtmwb::make_lattice_space(dtmwb::FiniteLattice::parse(slurp("L3.lattice")), "L3");
}

inline dtmwb::Region pts(const dtmwb::SpacePtr& sp, std::initializer_list<const char*> names) {
  dtmwb::Region r;
  for (const char* n : names) r.set(*sp->lattice().index_of(n));
  return r;
}

}  // namespace testing_helpers

#pragma once

#include <vector>

#include "dtmwb/ext_value.hpp"

namespace dtmwb {

/// maximize c.x subject to the rows and x >= 0, over the rationals.
struct LinearProgram {
  enum class Sense { le, eq, ge };
  struct Row {
    std::vector<Rational> a;
    Sense sense = Sense::le;
    Rational b;
  };

  int n = 0;
  std::vector<Rational> c;
  std::vector<Row> rows;

  void add_row(std::vector<Rational> a, Sense s, Rational b) {
    rows.push_back({std::move(a), s, std::move(b)});
  }
};

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Two-phase dense simplex with Bland's rule; exact, so it always terminates.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace dtmwb

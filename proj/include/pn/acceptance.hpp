#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pn/params.hpp"

namespace pn {

/// One measured quantity. `gated` checks decide pass/fail of their criterion;
/// the others are reported for information.
struct Check {
  int criterion;
  std::string name;
  std::string expected;
  double actual;
  double tolerance;
  bool pass;
  bool gated = true;
};

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  double seconds;
};

struct AcceptanceReport {
  std::vector<Check> checks;
  std::vector<CriterionResult> criteria;
  bool pass() const;
};

struct AcceptanceOptions {
  PhysParams params = PhysParams::desk();
  double L_over_zeta = 200.0;
  std::size_t N = 4096;
  std::uint64_t seed = 20240607;
  std::vector<int> only;  // empty: all criteria
};

AcceptanceReport run_acceptance(const AcceptanceOptions& opts);

}  // namespace pn

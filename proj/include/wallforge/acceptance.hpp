#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wallforge::acceptance {

struct Options {
  /// Base resolution; the per-criterion resolutions scale from it so the
  /// degraded-mode behavior stays observable.
  int cells_per_unit = 200;
  /// Debug mutation hook: flips the L0 potential sign in every assembly
  /// performed by the suite (stability criteria must then fail).
  bool mutate_l0_sign = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Run every acceptance criterion at its pinned tolerance.
std::vector<CriterionResult> run_all(const Options& opts = {});

/// One line per criterion plus a summary; returns 0 iff all passed.
int print_results(const std::vector<CriterionResult>& results,
                  std::ostream& os);

}  // namespace wallforge::acceptance

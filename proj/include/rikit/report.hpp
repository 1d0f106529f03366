#ifndef RIKIT_REPORT_HPP
#define RIKIT_REPORT_HPP

#include <optional>
#include <string>

#include "rikit/domain.hpp"

namespace rikit {

// Probe grid for condition checkers: all carrier breakpoints plus a log-
// spaced grid over [min, max] intersected with the domain.
struct GridConfig {
  double min = 1e-6;
  double max = 1e6;
  int points = 512;

  // RIKIT_GRID_POINTS overrides the default point count.
  static GridConfig from_env();
};

// Outcome of a weight-condition check. `holds` is decided analytically from
// the exact outer-piece expressions; the constant is the probe supremum
// together with the analytic end limits, hence a lower bound for the true
// best constant.
struct ConditionReport {
  std::string condition;
  bool holds = false;
  ExtReal constant;
  bool constant_is_lower_bound = true;
  std::optional<double> witness_t;
  std::string method = "closed_form_tail";  // or "grid" when degraded
  GridConfig grid;
  std::optional<Divergence> divergence;
  std::string notes;
};

}  // namespace rikit

#endif  // RIKIT_REPORT_HPP

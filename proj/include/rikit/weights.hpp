#ifndef RIKIT_WEIGHTS_HPP
#define RIKIT_WEIGHTS_HPP

#include <functional>
#include <vector>

#include "rikit/fundamental.hpp"
#include "rikit/power_piecewise.hpp"
#include "rikit/report.hpp"

namespace rikit {

// An a.e. positive weight on [0, inf) with locally finite cumulative W and
// infinite total mass, validated by tail-exponent analysis.
class Weight {
  PowerPiecewise w_;
  PowerPiecewise W_;

public:
  explicit Weight(PowerPiecewise w);

  // c * x^beta
  static Weight power(double c, double beta);

  const PowerPiecewise& w() const { return w_; }
  const PowerPiecewise& cumulative() const { return W_; }
  double W(double t) const { return W_.eval(t); }
};

// Shared machinery: a condition reduced to sup_t N(t)/D(t) with exact probe
// evaluation and analytic limits at the interval ends.
struct RatioAnalysis {
  std::function<ExtReal(double)> ratio;
  ExtReal limit_zero;      // analytic limit of the ratio at 0+
  ExtReal limit_infinity;  // at the far end (ignored on finite domains)
  std::optional<Divergence> divergence;  // the defining integral diverges outright
  std::vector<double> breakpoints;
};

std::vector<double> make_probes(const std::vector<double>& breakpoints,
                                const GridConfig& grid, const IntervalDomain& dom);

ConditionReport decide_ratio_condition(const std::string& name, const RatioAnalysis& an,
                                       const GridConfig& grid, const IntervalDomain& dom);

// Hardy-inequality condition for nonincreasing functions on Lambda(w, q):
// integral_t^inf w(x) x^{-q} dx <= B t^{-q} integral_0^t w.
ConditionReport check_am_q(const Weight& w, double q, const GridConfig& grid = {});

// q = infinity variant for nondecreasing weights:
// (w(t)/t) integral_0^t dx/w(x) <= C.
ConditionReport check_a1(const Weight& w, const GridConfig& grid = {});

// integral_t^inf w / phi^q <= B phi(t)^{-q} integral_0^t w.
ConditionReport check_cond22(const Weight& w, double q, const FundamentalFunction& phi,
                             const GridConfig& grid = {});

// integral_0^t d(phi)/w <= C phi(t)/w(t), w nondecreasing.
ConditionReport check_cond23(const Weight& w, const FundamentalFunction& phi,
                             const GridConfig& grid = {});

// check_cond24 needs the norm engine; it is declared in spaces.hpp.

}  // namespace rikit

#endif  // RIKIT_WEIGHTS_HPP

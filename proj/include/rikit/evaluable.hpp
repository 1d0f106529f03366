#ifndef RIKIT_EVALUABLE_HPP
#define RIKIT_EVALUABLE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "rikit/power_piecewise.hpp"
#include "rikit/step_function.hpp"

namespace rikit {

// Pointwise-evaluable function with declared monotonicity flags. Exact
// carriers (step, power-log piecewise, real powers and ratios of those) keep
// closed-form integration available; the generic carrier degrades to
// quadrature. Immutable after construction.
struct EvalFlags {
  bool nonincreasing = false;
  bool nonnegative = false;
};

class Evaluable {
public:
  using Flags = EvalFlags;

  struct PowOf {
    PowerPiecewise base;  // expected nonnegative
    double r;
  };
  struct RatioOf {
    PowerPiecewise num;
    PowerPiecewise den;
  };
  struct Generic {
    std::function<double(double)> fn;
    IntervalDomain dom = IntervalDomain::half_line();
    std::vector<double> hints;              // split points for quadrature
    Flags flags;
    std::optional<PLExpr> outer;            // exact expression beyond outer_from
    double outer_from = kInf;
    std::optional<double> support_end;
  };

  /* implicit */ Evaluable(StepFunction f);
  /* implicit */ Evaluable(PowerPiecewise f);
  static Evaluable pow_of(PowerPiecewise base, double r, Flags flags = Flags{});
  static Evaluable ratio_of(PowerPiecewise num, PowerPiecewise den, Flags flags = Flags{});
  static Evaluable generic(Generic g);

  const IntervalDomain& domain() const;
  double eval(double x) const;
  Flags flags() const;
  // finite split points useful for integration
  std::vector<double> hints() const;
  // exact expression valid on [outer_from, domain end), when known
  std::optional<std::pair<double, PLExpr>> outer_expr() const;
  // asymptotic descriptor at the far end, when known (exact outer dominates)
  std::optional<Dominant> outer_dominant() const;
  std::optional<double> support_end() const;

  const StepFunction* as_step() const;
  const PowerPiecewise* as_power() const;
  const PowOf* as_pow_of() const;
  const RatioOf* as_ratio() const;
  const Generic* as_generic() const;

private:
  Evaluable() = default;
  struct Payload;
  std::shared_ptr<const Payload> p_;
  Flags flags_;
};

// x -> f(x/s), monotonicity preserved; exact on exact carriers.
Evaluable dilate(const Evaluable& f, double s);

// f * chi_[0,t), exact on exact carriers.
Evaluable restrict_to(const Evaluable& f, double t);

// Exact closed form on exact carriers, tanh-sinh quadrature otherwise.
// Improper upper endpoints use the exact outer expression when available and
// divergence is signalled, never approximated.
ExtReal integrate(const Evaluable& g, double a, double b);

}  // namespace rikit

#endif  // RIKIT_EVALUABLE_HPP

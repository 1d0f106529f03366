#ifndef RIKIT_POWER_PIECEWISE_HPP
#define RIKIT_POWER_PIECEWISE_HPP

#include <optional>
#include <vector>

#include "rikit/power_log.hpp"
#include "rikit/step_function.hpp"

namespace rikit {

struct PLPiece {
  double from = 0.0;
  double to = kInf;
  PLExpr expr;
};

// Piecewise finite sums c * x^alpha * ln^k x on a partition of the domain.
// Carrier for weights, fundamental functions, Hardy transforms and every
// closed-form integral in the library.
class PowerPiecewise {
  IntervalDomain dom_;
  std::vector<PLPiece> pieces_;

public:
  PowerPiecewise(IntervalDomain dom, std::vector<PLPiece> pieces);

  static PowerPiecewise constant(IntervalDomain dom, double c);
  static PowerPiecewise single(IntervalDomain dom, PLExpr e);
  // c x^alpha over the whole domain
  static PowerPiecewise power(IntervalDomain dom, double c, double alpha);
  static PowerPiecewise from_step(const StepFunction& f);

  const IntervalDomain& domain() const { return dom_; }
  const std::vector<PLPiece>& pieces() const { return pieces_; }
  // interior breakpoints plus the finite endpoints
  std::vector<double> breakpoints() const;

  double eval(double x) const;
  const PLExpr& piece_at(double x) const;

  ExtReal limit_zero() const;
  ExtReal limit_infinity() const;
  std::optional<PLTerm> dominant_zero() const;
  std::optional<PLTerm> dominant_infinity() const;

  ExtReal integral(double a, double b) const;
  // t -> integral over [0, t], exact including piece constants; throws on a
  // divergent head
  PowerPiecewise cumulative() const;

  PowerPiecewise derivative() const;
  PowerPiecewise scaled(double c) const;
  PowerPiecewise added(const PowerPiecewise& o) const;
  PowerPiecewise multiplied(const PowerPiecewise& o) const;
  std::optional<PowerPiecewise> reciprocal() const;   // single pure-power pieces only
  std::optional<PowerPiecewise> pow_real(double r) const;
  PowerPiecewise dilated(double s) const;             // x -> f(x/s)
  PowerPiecewise restricted(double t) const;          // f * chi_[0,t)

  // derivative sign analysis at probe resolution + dominant ends
  bool check_nonnegative(int probes_per_piece = 33) const;
  // +1 nondecreasing, -1 nonincreasing, 2 constant, 0 neither
  int monotonicity(int probes_per_piece = 33) const;

  // sup over [a, b] with exact derivative-based refinement of interior
  // critical points; b may be inf (dominant limit)
  ExtReal sup_on(double a, double b) const;
};

// sup of expr over [a, b] inside one piece (ends may be improper)
ExtReal expr_sup_on(const PLExpr& e, double a, double b);

// interior zeros of the derivative of e on (a, b), bisection-refined from a
// sign scan of the exact derivative
std::vector<double> expr_critical_points(const PLExpr& e, double a, double b);

// t -> (1/t) integral_0^t f, exact; applied to a nonincreasing f this is the
// Hardy transform f**
PowerPiecewise averaged_cumulative(const PowerPiecewise& f);

}  // namespace rikit

#endif  // RIKIT_POWER_PIECEWISE_HPP

#ifndef RIKIT_STEP_FUNCTION_HPP
#define RIKIT_STEP_FUNCTION_HPP

#include <utility>
#include <vector>

#include "rikit/domain.hpp"

namespace rikit {

// Finitely many constant pieces on [0, l] or [0, inf). Canonical form:
// strictly increasing breakpoints starting at 0 and ending at the domain end,
// adjacent equal values merged, and a piece of infinite measure only with
// value 0.
class StepFunction {
  IntervalDomain dom_;
  std::vector<double> breaks_;  // size n+1, breaks_[0] == 0
  std::vector<double> values_;  // size n, value on [breaks_[i], breaks_[i+1])

  void canonicalize();

public:
  StepFunction(IntervalDomain dom, std::vector<double> breaks, std::vector<double> values);

  static StepFunction zero(IntervalDomain dom);
  // value * chi_[0, b)
  static StepFunction indicator(IntervalDomain dom, double b, double value = 1.0);

  const IntervalDomain& domain() const { return dom_; }
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }

  double eval(double x) const;

  bool is_zero() const;
  bool is_nonincreasing() const;
  bool is_nonnegative() const;
  double sup_abs() const;
  // m{ |f| > lambda }, exact
  double measure_above(double lambda) const;
  // last point after which f vanishes (finite for canonical integrable tails)
  double support_end() const;

  ExtReal integral(double a, double b) const;
  ExtReal abs_integral(double a, double b) const;

  StepFunction scaled(double c) const;
  StepFunction abs() const;
  // value-wise |v|^p (values must be >= 0 unless p is a positive integer)
  StepFunction abs_pow(double p) const;
  // f * chi_[0, t)
  StepFunction restricted(double t) const;
  // x -> f(x / s); on finite domains restricted / extended by zero
  StepFunction dilated(double s) const;
};

// Nonincreasing, right-continuous rearrangement of |f|, equimeasurable with
// |f|; exact on the step carrier.
StepFunction rearrange(const StepFunction& f);

// The truncation pair: first = f clipped to [-s, s], second = f - first.
std::pair<StepFunction, StepFunction> truncate(const StepFunction& f, double s);

}  // namespace rikit

#endif  // RIKIT_STEP_FUNCTION_HPP

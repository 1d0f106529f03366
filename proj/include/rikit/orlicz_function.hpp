#ifndef RIKIT_ORLICZ_FUNCTION_HPP
#define RIKIT_ORLICZ_FUNCTION_HPP

#include "rikit/power_piecewise.hpp"
#include "rikit/step_function.hpp"

namespace rikit {

// Simonenko-type growth exponents of an Orlicz function: inf / sup of
// r(t) = t phi'(t) / phi(t) over [T, inf) and globally, plus the tail limit.
struct SimonenkoIndices {
  double T = 0.0;
  double p_T = 1.0, q_T = 1.0;
  double p_0 = 1.0, q_0 = 1.0;
  double p_liminf = 1.0, q_limsup = 1.0;
};

// Convex nondecreasing phi with phi(0) = 0 and phi(inf) = inf, carried as a
// power-log piecewise function on [0, inf). The right derivative and the
// Delta_2 exponent (global sup of t phi'/phi, exact for this family) are
// derived on construction.
class OrliczFunction {
  PowerPiecewise phi_;
  PowerPiecewise phi_prime_;
  double delta2_q_ = 1.0;

public:
  explicit OrliczFunction(PowerPiecewise phi);

  // t^p
  static OrliczFunction power(double p);

  const PowerPiecewise& pp() const { return phi_; }
  const PowerPiecewise& prime() const { return phi_prime_; }
  double delta2_q() const { return delta2_q_; }
  double eval(double t) const { return t <= 0.0 ? 0.0 : phi_.eval(t); }

  // dominant exponents of phi at 0+ and infinity
  double exponent_zero() const;
  double exponent_infinity() const;
};

SimonenkoIndices simonenko(const OrliczFunction& phi, double T);

// phi on [T, inf) extended below T by phi(T) (t/T)^{p_T}.
OrliczFunction phi_bar(const OrliczFunction& phi, double T);

// Luxemburg quasi-norm inf { rho : integral phi(f^*/rho) w <= 1 }, exact
// modular on the step carrier, bisection in rho to 1e-9 relative.
class Weight;
ExtReal luxemburg_norm(const Weight& w, const OrliczFunction& phi, const StepFunction& f,
                       double domain_cap = kInf);

}  // namespace rikit

#endif  // RIKIT_ORLICZ_FUNCTION_HPP

#ifndef RIKIT_FUNDAMENTAL_HPP
#define RIKIT_FUNDAMENTAL_HPP

#include "rikit/power_piecewise.hpp"

namespace rikit {

// Fundamental function of an r.i. space: positive, nondecreasing, vanishing
// at 0+, quasi-concave (phi(t)/t nonincreasing, equivalently t phi' <= phi).
class FundamentalFunction {
  PowerPiecewise phi_;

public:
  explicit FundamentalFunction(PowerPiecewise phi);

  static FundamentalFunction power(IntervalDomain dom, double c, double alpha);

  const PowerPiecewise& pp() const { return phi_; }
  const IntervalDomain& domain() const { return phi_.domain(); }
  double eval(double t) const { return phi_.eval(t); }
};

}  // namespace rikit

#endif  // RIKIT_FUNDAMENTAL_HPP

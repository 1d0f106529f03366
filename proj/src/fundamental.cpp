#include "rikit/fundamental.hpp"

#include <cmath>

namespace rikit {

FundamentalFunction::FundamentalFunction(PowerPiecewise phi) : phi_(std::move(phi)) {
  ExtReal z = phi_.limit_zero();
  if (!z.finite() || std::fabs(z.value()) > 1e-12)
    throw RepresentationError("fundamental function must vanish at 0+");
  const int m = phi_.monotonicity();
  if (m != +1 && m != 2)
    throw RepresentationError("fundamental function must be nondecreasing");
  if (!phi_.check_nonnegative())
    throw RepresentationError("fundamental function must be nonnegative");
  // quasi-concavity: t phi'(t) <= phi(t), checked on the exact expressions
  const PowerPiecewise d = phi_.derivative();
  for (const auto& p : phi_.pieces()) {
    const double lo = p.from > 0.0 ? p.from : (std::isfinite(p.to) ? p.to * 1e-9 : 1e-9);
    const double hi = std::isfinite(p.to) ? p.to : std::max(1e6, lo * 1e12);
    for (int i = 1; i < 32; ++i) {
      const double t = lo * std::pow(hi / lo, double(i) / 32.0);
      const double lhs = t * d.eval(t);
      const double rhs = p.expr.eval(t);
      if (lhs > rhs * (1.0 + 1e-9) + 1e-12)
        throw RepresentationError("fundamental function must be quasi-concave");
    }
  }
  // continuity across breakpoints
  for (std::size_t i = 0; i + 1 < phi_.pieces().size(); ++i) {
    const double b = phi_.pieces()[i].to;
    const double left = phi_.pieces()[i].expr.eval(b);
    const double right = phi_.pieces()[i + 1].expr.eval(b);
    if (std::fabs(left - right) > 1e-9 * (1.0 + std::fabs(left)))
      throw RepresentationError("fundamental function must be continuous");
  }
}

FundamentalFunction FundamentalFunction::power(IntervalDomain dom, double c, double alpha) {
  return FundamentalFunction(PowerPiecewise::power(dom, c, alpha));
}

}  // namespace rikit

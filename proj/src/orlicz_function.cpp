#include "rikit/orlicz_function.hpp"

#include <algorithm>
#include <cmath>

#include "rikit/weights.hpp"

namespace rikit {

namespace {

// inf and sup of r(t) = t phi'(t)/phi(t) over [T, inf), via probes of the
// exact ratio plus dominant limits at the piece ends.
std::pair<double, double> ratio_range(const PowerPiecewise& phi,
                                      const PowerPiecewise& phi_prime, double T) {
  double lo = kInf, hi = -kInf;
  auto consider = [&](double r) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  };
  for (const auto& p : phi.pieces()) {
    const double from = std::max(p.from, T);
    if (std::isfinite(p.to) && p.to <= T) continue;
    const PLExpr num = p.expr.derivative().mul_term({1.0, 1.0, 0});
    // probe the exact ratio inside the piece
    const double a = from > 0.0 ? from : (std::isfinite(p.to) ? p.to * 1e-9 : 1e-9);
    const double b = std::isfinite(p.to) ? p.to : std::max(1e8, a * 1e12);
    for (int i = 0; i <= 64; ++i) {
      const double t = a * std::pow(b / a, double(i) / 64.0);
      consider(num.eval(t) / p.expr.eval(t));
    }
    // dominant limits at the ends of the piece
    auto dn = num.dominant_zero();
    auto dd = p.expr.dominant_zero();
    if (p.from == 0.0 && T == 0.0 && dn && dd) {
      ExtReal l = Dominant(*dn).div(Dominant(*dd)).limit_zero();
      if (l.finite()) consider(l.value());
    }
    if (std::isinf(p.to)) {
      auto di = num.dominant_infinity();
      auto de = p.expr.dominant_infinity();
      if (di && de) {
        ExtReal l = Dominant(*di).div(Dominant(*de)).limit_infinity();
        if (l.finite()) consider(l.value());
      }
    }
  }
  return {lo, hi};
}

}  // namespace

OrliczFunction::OrliczFunction(PowerPiecewise phi)
    : phi_(std::move(phi)), phi_prime_(phi_.derivative()) {
  if (!phi_.domain().is_half_line())
    throw RepresentationError("Orlicz function must live on [0, inf)");
  ExtReal z = phi_.limit_zero();
  if (!z.finite() || std::fabs(z.value()) > 1e-12)
    throw RepresentationError("Orlicz function must vanish at 0");
  ExtReal li = phi_.limit_infinity();
  if (li.finite())
    throw RepresentationError("Orlicz function must tend to infinity");
  if (!phi_.check_nonnegative() || phi_.monotonicity() == 0 || phi_.monotonicity() == -1)
    throw RepresentationError("Orlicz function must be nondecreasing");
  // convexity: the right derivative must be nondecreasing, including jumps
  const int pm = phi_prime_.monotonicity();
  if (pm != +1 && pm != 2)
    throw RepresentationError("Orlicz function must be convex (phi' nondecreasing)");
  auto [lo, hi] = ratio_range(phi_, phi_prime_, 0.0);
  if (lo < 1.0 - 1e-9)
    throw RepresentationError("Orlicz function must be convex (t phi' >= phi)");
  delta2_q_ = hi;
  if (!std::isfinite(delta2_q_))
    throw RepresentationError("Orlicz function must satisfy Delta_2 (bounded t phi'/phi)");
}

OrliczFunction OrliczFunction::power(double p) {
  if (!(p >= 1.0)) throw ParameterError("OrliczFunction::power: p >= 1 required");
  return OrliczFunction(PowerPiecewise::power(IntervalDomain::half_line(), 1.0, p));
}

double OrliczFunction::exponent_zero() const {
  auto d = phi_.dominant_zero();
  return d ? d->alpha : 1.0;
}

double OrliczFunction::exponent_infinity() const {
  auto d = phi_.dominant_infinity();
  return d ? d->alpha : 1.0;
}

SimonenkoIndices simonenko(const OrliczFunction& phi, double T) {
  if (!(T > 0.0)) throw ParameterError("simonenko: T > 0 required");
  SimonenkoIndices idx;
  idx.T = T;
  auto [pt, qt] = ratio_range(phi.pp(), phi.prime(), T);
  auto [p0, q0] = ratio_range(phi.pp(), phi.prime(), 0.0);
  idx.p_T = std::max(1.0, pt);
  idx.q_T = qt;
  idx.p_0 = std::max(1.0, p0);
  idx.q_0 = q0;
  // the tail ratio of a power-log piece has a genuine limit
  const auto& last = phi.pp().pieces().back();
  auto dn = last.expr.derivative().mul_term({1.0, 1.0, 0}).dominant_infinity();
  auto dd = last.expr.dominant_infinity();
  double tail = idx.q_T;
  if (dn && dd) {
    ExtReal l = Dominant(*dn).div(Dominant(*dd)).limit_infinity();
    if (l.finite()) tail = l.value();
  }
  idx.p_liminf = tail;
  idx.q_limsup = tail;
  return idx;
}

OrliczFunction phi_bar(const OrliczFunction& phi, double T) {
  if (!(T > 0.0)) throw ParameterError("phi_bar: T > 0 required");
  const SimonenkoIndices idx = simonenko(phi, T);
  const double c = phi.eval(T) / std::pow(T, idx.p_T);
  std::vector<PLPiece> ps;
  ps.push_back({0.0, T, PLExpr::monomial(c, idx.p_T)});
  for (const auto& p : phi.pp().pieces()) {
    if (p.to <= T) continue;
    ps.push_back({std::max(p.from, T), p.to, p.expr});
  }
  return OrliczFunction(PowerPiecewise(phi.pp().domain(), std::move(ps)));
}

ExtReal luxemburg_norm(const Weight& w, const OrliczFunction& phi, const StepFunction& f,
                       double domain_cap) {
  const StepFunction fs = rearrange(f);
  if (fs.is_zero()) return ExtReal(0.0);

  const auto& breaks = fs.breaks();
  const auto& values = fs.values();
  auto modular = [&](double rho) -> double {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0.0) continue;
      const double hi = std::min(breaks[i + 1], domain_cap);
      if (hi <= breaks[i]) continue;
      const double dW = w.W(hi) - w.W(breaks[i]);
      s += phi.eval(values[i] / rho) * dW;
    }
    return s;
  };

  double hi = std::max(fs.sup_abs(), 1e-12);
  int guard = 0;
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 2000) return ExtReal::divergent("luxemburg norm: no finite scale works");
  }
  double lo = hi;
  guard = 0;
  while (modular(lo) <= 1.0) {
    lo *= 0.5;
    if (++guard > 2000) return ExtReal(0.0);
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (modular(mid) <= 1.0 ? hi : lo) = mid;
  }
  return ExtReal(hi);
}

}  // namespace rikit

#include "rikit/power_log.hpp"

#include <algorithm>
#include <cmath>

namespace rikit {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
  return r;
}

double log_pow(double x, int k) {
  if (k == 0) return 1.0;
  return std::pow(std::log(x), k);
}

bool order_lt(const PLTerm& a, const PLTerm& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.logk < b.logk;
}

// exponents produced along different arithmetic routes may differ by ulps;
// classification of limits snaps within this tolerance
constexpr double kExpTol = 1e-11;

bool near(double a, double b) {
  return std::fabs(a - b) <= kExpTol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace

Dominant Dominant::pow(double r) const {
  double cr;
  if (c >= 0.0) {
    cr = std::pow(c, r);
  } else if (r == std::round(r)) {
    cr = std::pow(c, r);
  } else {
    throw ParameterError("Dominant::pow: negative base with non-integer exponent");
  }
  return {cr, e * r, logp * r};
}

ExtReal Dominant::limit_zero() const {
  if (c == 0.0) return ExtReal(0.0);
  if (near(e, 0.0)) {
    if (near(logp, 0.0)) return ExtReal(c);
    if (logp < 0.0) return ExtReal(0.0);
  } else if (e > 0.0) {
    return ExtReal(0.0);
  }
  return ExtReal::divergent("limit at 0+ is infinite (exponent " +
                            std::to_string(e) + ", log power " + std::to_string(logp) + ")");
}

ExtReal Dominant::limit_infinity() const {
  if (c == 0.0) return ExtReal(0.0);
  if (near(e, 0.0)) {
    if (near(logp, 0.0)) return ExtReal(c);
    if (logp < 0.0) return ExtReal(0.0);
  } else if (e < 0.0) {
    return ExtReal(0.0);
  }
  return ExtReal::divergent("limit at infinity is infinite (exponent " +
                            std::to_string(e) + ", log power " + std::to_string(logp) + ")");
}

PLExpr::PLExpr(std::vector<PLTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

void PLExpr::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), order_lt);
  std::vector<PLTerm> out;
  for (const auto& t : terms_) {
    if (t.logk < 0) throw RepresentationError("PLExpr: negative log power");
    if (!std::isfinite(t.c) || !std::isfinite(t.alpha))
      throw RepresentationError("PLExpr: non-finite coefficient or exponent");
    if (!out.empty() && near(out.back().alpha, t.alpha) && out.back().logk == t.logk)
      out.back().c += t.c;
    else
      out.push_back(t);
  }
  terms_.clear();
  for (const auto& t : out)
    if (t.c != 0.0) terms_.push_back(t);
}

double PLExpr::eval(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.c;
    if (t.alpha != 0.0) v *= std::pow(x, t.alpha);
    if (t.logk != 0) v *= log_pow(x, t.logk);
    s += v;
  }
  return s;
}

PLExpr PLExpr::added(const PLExpr& o) const {
  std::vector<PLTerm> ts = terms_;
  ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
  return PLExpr(std::move(ts));
}

PLExpr PLExpr::scaled(double c) const {
  std::vector<PLTerm> ts = terms_;
  for (auto& t : ts) t.c *= c;
  return PLExpr(std::move(ts));
}

PLExpr PLExpr::multiplied(const PLExpr& o) const {
  std::vector<PLTerm> ts;
  ts.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      ts.push_back({a.c * b.c, a.alpha + b.alpha, a.logk + b.logk});
  return PLExpr(std::move(ts));
}

PLExpr PLExpr::mul_term(const PLTerm& t) const { return multiplied(PLExpr({t})); }

PLExpr PLExpr::derivative() const {
  std::vector<PLTerm> ts;
  for (const auto& t : terms_) {
    if (t.alpha != 0.0) ts.push_back({t.c * t.alpha, t.alpha - 1.0, t.logk});
    if (t.logk > 0) ts.push_back({t.c * double(t.logk), t.alpha - 1.0, t.logk - 1});
  }
  return PLExpr(std::move(ts));
}

PLExpr PLExpr::antiderivative() const {
  // For alpha != -1:  F = x^{a+1} sum_m b_m ln^m x  with
  //   b_k = c/(a+1), b_m = -(m+1) b_{m+1} / (a+1).
  // For alpha == -1:  F = c ln^{k+1} x / (k+1).
  std::vector<PLTerm> ts;
  for (const auto& t : terms_) {
    if (t.alpha == -1.0) {
      ts.push_back({t.c / double(t.logk + 1), 0.0, t.logk + 1});
      continue;
    }
    const double a1 = t.alpha + 1.0;
    double bm = t.c / a1;
    ts.push_back({bm, a1, t.logk});
    for (int m = t.logk - 1; m >= 0; --m) {
      bm = -double(m + 1) * bm / a1;
      ts.push_back({bm, a1, m});
    }
  }
  return PLExpr(std::move(ts));
}

std::optional<PLTerm> PLExpr::dominant_zero() const {
  if (terms_.empty()) return std::nullopt;
  // smallest alpha dominates at 0; among equal alpha, the largest log power
  PLTerm best = terms_.front();
  for (const auto& t : terms_)
    if (t.alpha < best.alpha - kExpTol || (near(t.alpha, best.alpha) && t.logk > best.logk))
      best = t;
  return best;
}

std::optional<PLTerm> PLExpr::dominant_infinity() const {
  if (terms_.empty()) return std::nullopt;
  PLTerm best = terms_.front();
  for (const auto& t : terms_)
    if (t.alpha > best.alpha + kExpTol || (near(t.alpha, best.alpha) && t.logk > best.logk))
      best = t;
  return best;
}

ExtReal PLExpr::limit_zero() const {
  auto d = dominant_zero();
  if (!d) return ExtReal(0.0);
  return Dominant(*d).limit_zero();
}

ExtReal PLExpr::limit_infinity() const {
  auto d = dominant_infinity();
  if (!d) return ExtReal(0.0);
  return Dominant(*d).limit_infinity();
}

ExtReal PLExpr::integral(double a, double b) const {
  if (!(a >= 0.0) || !(b > a)) throw ParameterError("PLExpr::integral: need 0 <= a < b");
  if (terms_.empty()) return ExtReal(0.0);
  const PLExpr F = antiderivative();

  // Antiderivatives in this family never contain pure constants, so the
  // endpoint limits are decided termwise.
  auto at = [&](double x, bool upper) -> ExtReal {
    if (x == 0.0) {
      ExtReal l = F.limit_zero();
      if (!l.finite())
        return ExtReal::divergent("integral diverges at 0: " + l.divergence()->what, a, b);
      return l;
    }
    if (std::isinf(x)) {
      ExtReal l = F.limit_infinity();
      if (!l.finite())
        return ExtReal::divergent("integral diverges at infinity: " + l.divergence()->what, a, b);
      return l;
    }
    (void)upper;
    return ExtReal(F.eval(x));
  };

  ExtReal fb = at(b, true);
  if (!fb.finite()) return fb;
  ExtReal fa = at(a, false);
  if (!fa.finite()) return fa;
  return ExtReal(fb.value() - fa.value());
}

PLExpr PLExpr::compose_power(double M, double b) const {
  if (!(M > 0.0)) throw ParameterError("compose_power: scale must be positive");
  if (b == 0.0) throw ParameterError("compose_power: zero inner exponent");
  // c u^a ln^k u at u = M x^b:
  //   c M^a x^{ab} (ln M + b ln x)^k
  const double lM = std::log(M);
  std::vector<PLTerm> ts;
  for (const auto& t : terms_) {
    const double cMa = t.c * std::pow(M, t.alpha);
    for (int j = 0; j <= t.logk; ++j) {
      const double coef =
          cMa * binom(t.logk, j) * std::pow(lM, t.logk - j) * std::pow(b, j);
      ts.push_back({coef, t.alpha * b, j});
    }
  }
  return PLExpr(std::move(ts));
}

std::optional<PLExpr> PLExpr::pow_real(double r) const {
  if (terms_.empty()) return PLExpr();  // 0^r = 0 for r > 0
  if (terms_.size() != 1) {
    if (r == 1.0) return *this;
    if (r >= 0.0 && r == std::round(r) && r <= 4.0) {
      // small integer powers of a short expression stay in the family
      PLExpr acc = PLExpr::constant(1.0);
      for (int i = 0; i < int(r); ++i) acc = acc.multiplied(*this);
      return acc;
    }
    return std::nullopt;
  }
  const PLTerm& t = terms_[0];
  const double kr = double(t.logk) * r;
  if (kr != std::round(kr) || kr < 0.0) return std::nullopt;
  double cr;
  if (t.c >= 0.0)
    cr = std::pow(t.c, r);
  else if (r == std::round(r))
    cr = std::pow(t.c, r);
  else
    return std::nullopt;
  return PLExpr({{cr, t.alpha * r, int(std::lround(kr))}});
}

}  // namespace rikit

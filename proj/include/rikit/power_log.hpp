#ifndef RIKIT_POWER_LOG_HPP
#define RIKIT_POWER_LOG_HPP

#include <optional>
#include <vector>

#include "rikit/domain.hpp"

namespace rikit {

// One term c * x^alpha * (ln x)^logk.
struct PLTerm {
  double c = 0.0;
  double alpha = 0.0;
  int logk = 0;
};

// Asymptotic descriptor c * t^e * (ln t)^logp with a real log exponent, used
// for limits of ratios and real powers of dominant terms.
struct Dominant {
  double c = 0.0;
  double e = 0.0;
  double logp = 0.0;

  Dominant() = default;
  Dominant(double c_, double e_, double logp_) : c(c_), e(e_), logp(logp_) {}
  explicit Dominant(const PLTerm& t) : c(t.c), e(t.alpha), logp(double(t.logk)) {}

  Dominant mul(const Dominant& o) const { return {c * o.c, e + o.e, logp + o.logp}; }
  Dominant div(const Dominant& o) const { return {c / o.c, e - o.e, logp - o.logp}; }
  Dominant pow(double r) const;  // requires c > 0 for non-integer r

  // Limit of |c| t^e ln^logp t; sign comes from c (log parity is folded into
  // magnitude only, which is what every positive-quantity caller needs).
  ExtReal limit_zero() const;
  ExtReal limit_infinity() const;
};

// Finite sum of power-log terms, closed under +, *, d/dx, antiderivative and
// composition with M*x^b. All "exact" integration in the library bottoms out
// here.
class PLExpr {
  std::vector<PLTerm> terms_;  // canonical: sorted by (alpha, logk), merged

  void canonicalize();

public:
  PLExpr() = default;
  explicit PLExpr(std::vector<PLTerm> terms);

  static PLExpr constant(double c) { return PLExpr({{c, 0.0, 0}}); }
  static PLExpr monomial(double c, double alpha, int logk = 0) {
    return PLExpr({{c, alpha, logk}});
  }

  const std::vector<PLTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<PLTerm> single_term() const {
    if (terms_.size() == 1) return terms_[0];
    return std::nullopt;
  }

  double eval(double x) const;

  PLExpr added(const PLExpr& o) const;
  PLExpr scaled(double c) const;
  PLExpr multiplied(const PLExpr& o) const;
  PLExpr mul_term(const PLTerm& t) const;

  PLExpr derivative() const;
  PLExpr antiderivative() const;

  // Value limits of the expression itself at the interval ends.
  ExtReal limit_zero() const;
  ExtReal limit_infinity() const;

  // Exact integral over [a, b], 0 <= a < b <= inf, with divergence detection
  // by exponent analysis of the antiderivative at improper endpoints.
  ExtReal integral(double a, double b) const;

  // x -> expr(M * x^b), exact via the binomial expansion of ln(M x^b)^k.
  PLExpr compose_power(double M, double b) const;
  // x -> expr(x / s).
  PLExpr dilated(double s) const { return compose_power(1.0 / s, 1.0); }

  // (single term)^r when representable in the family.
  std::optional<PLExpr> pow_real(double r) const;

  std::optional<PLTerm> dominant_zero() const;      // min alpha, then max logk
  std::optional<PLTerm> dominant_infinity() const;  // max alpha, then max logk
};

}  // namespace rikit

#endif  // RIKIT_POWER_LOG_HPP

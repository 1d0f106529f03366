#include "rikit/power_piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace rikit {

namespace {

// probe positions inside (a, b), geometric when the span is wide; improper
// ends are covered separately by dominant limits
std::vector<double> interior_probes(double a, double b, int n) {
  std::vector<double> xs;
  double hi = b;
  double lo = a;
  if (std::isinf(hi)) hi = std::max(1e6, (lo > 0.0 ? lo : 1.0) * 1e12);
  if (lo <= 0.0) lo = hi * 1e-12;
  if (!(hi > lo)) return xs;
  const bool geometric = hi / lo > 16.0;
  for (int i = 1; i < n; ++i) {
    const double u = double(i) / double(n);
    xs.push_back(geometric ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u);
  }
  return xs;
}

}  // namespace

PowerPiecewise::PowerPiecewise(IntervalDomain dom, std::vector<PLPiece> pieces)
    : dom_(dom), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw RepresentationError("PowerPiecewise: no pieces");
  if (pieces_.front().from != 0.0)
    throw RepresentationError("PowerPiecewise: partition must start at 0");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].from < pieces_[i].to))
      throw RepresentationError("PowerPiecewise: empty or inverted piece");
    if (i + 1 < pieces_.size() && pieces_[i].to != pieces_[i + 1].from)
      throw RepresentationError("PowerPiecewise: pieces must partition the domain");
  }
  if (pieces_.back().to != dom_.length())
    throw RepresentationError("PowerPiecewise: partition must end at the domain end");
}

PowerPiecewise PowerPiecewise::constant(IntervalDomain dom, double c) {
  return single(dom, PLExpr::constant(c));
}

PowerPiecewise PowerPiecewise::single(IntervalDomain dom, PLExpr e) {
  return PowerPiecewise(dom, {PLPiece{0.0, dom.length(), std::move(e)}});
}

PowerPiecewise PowerPiecewise::power(IntervalDomain dom, double c, double alpha) {
  return single(dom, PLExpr::monomial(c, alpha));
}

PowerPiecewise PowerPiecewise::from_step(const StepFunction& f) {
  std::vector<PLPiece> ps;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    ps.push_back({f.breaks()[i], f.breaks()[i + 1], PLExpr::constant(f.values()[i])});
  return PowerPiecewise(f.domain(), std::move(ps));
}

std::vector<double> PowerPiecewise::breakpoints() const {
  std::vector<double> bs{0.0};
  for (const auto& p : pieces_)
    if (std::isfinite(p.to)) bs.push_back(p.to);
  return bs;
}

const PLExpr& PowerPiecewise::piece_at(double x) const {
  for (const auto& p : pieces_)
    if (x < p.to || (&p == &pieces_.back())) return p.expr;
  return pieces_.back().expr;
}

double PowerPiecewise::eval(double x) const {
  if (x <= 0.0) {
    ExtReal l = limit_zero();
    return l.finite() ? l.value() : kInf;
  }
  return piece_at(x).eval(x);
}

ExtReal PowerPiecewise::limit_zero() const { return pieces_.front().expr.limit_zero(); }

ExtReal PowerPiecewise::limit_infinity() const {
  if (!dom_.is_half_line())
    return ExtReal(pieces_.back().expr.eval(dom_.length()));
  return pieces_.back().expr.limit_infinity();
}

std::optional<PLTerm> PowerPiecewise::dominant_zero() const {
  return pieces_.front().expr.dominant_zero();
}

std::optional<PLTerm> PowerPiecewise::dominant_infinity() const {
  return pieces_.back().expr.dominant_infinity();
}

ExtReal PowerPiecewise::integral(double a, double b) const {
  if (!(a >= 0.0) || !(b > a)) throw ParameterError("PowerPiecewise::integral: 0 <= a < b");
  ExtReal total(0.0);
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.from);
    const double hi = std::min(b, p.to);
    if (!(hi > lo)) continue;
    ExtReal part = p.expr.integral(lo, hi);
    if (!part.finite()) return part;
    total = total + part;
  }
  return total;
}

PowerPiecewise PowerPiecewise::cumulative() const {
  std::vector<PLPiece> out;
  double acc = 0.0;
  for (const auto& p : pieces_) {
    const PLExpr F = p.expr.antiderivative();
    ExtReal base = (p.from == 0.0) ? F.limit_zero() : ExtReal(F.eval(p.from));
    if (!base.finite())
      throw RepresentationError("cumulative: divergent integral near 0 (piece [" +
                                std::to_string(p.from) + ", " + std::to_string(p.to) + "))");
    // F(t) - F(from) + acc on this piece
    PLExpr e = F.added(PLExpr::constant(acc - base.value()));
    out.push_back({p.from, p.to, std::move(e)});
    if (std::isfinite(p.to)) {
      ExtReal inc = p.expr.integral(p.from == 0.0 ? 0.0 : p.from, p.to);
      if (!inc.finite())
        throw RepresentationError("cumulative: divergent piece integral");
      acc += inc.value();
    }
  }
  return PowerPiecewise(dom_, std::move(out));
}

PowerPiecewise PowerPiecewise::derivative() const {
  std::vector<PLPiece> out;
  for (const auto& p : pieces_) out.push_back({p.from, p.to, p.expr.derivative()});
  return PowerPiecewise(dom_, std::move(out));
}

PowerPiecewise PowerPiecewise::scaled(double c) const {
  std::vector<PLPiece> out;
  for (const auto& p : pieces_) out.push_back({p.from, p.to, p.expr.scaled(c)});
  return PowerPiecewise(dom_, std::move(out));
}

namespace {

std::vector<std::pair<double, double>> refine(const PowerPiecewise& a,
                                              const PowerPiecewise& b) {
  std::vector<double> cuts;
  for (const auto& p : a.pieces()) {
    cuts.push_back(p.from);
    if (std::isfinite(p.to)) cuts.push_back(p.to);
  }
  for (const auto& p : b.pieces()) {
    cuts.push_back(p.from);
    if (std::isfinite(p.to)) cuts.push_back(p.to);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::pair<double, double>> iv;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) iv.push_back({cuts[i], cuts[i + 1]});
  const double end = a.domain().length();
  if (std::isinf(end))
    iv.push_back({cuts.back(), kInf});
  else if (cuts.back() < end)
    iv.push_back({cuts.back(), end});
  return iv;
}

}  // namespace

PowerPiecewise PowerPiecewise::added(const PowerPiecewise& o) const {
  if (dom_ != o.dom_) throw RepresentationError("added: domain mismatch");
  std::vector<PLPiece> out;
  for (auto [lo, hi] : refine(*this, o)) {
    const double mid = std::isinf(hi) ? lo * 2.0 + 1.0 : 0.5 * (lo + hi);
    out.push_back({lo, hi, piece_at(mid).added(o.piece_at(mid))});
  }
  return PowerPiecewise(dom_, std::move(out));
}

PowerPiecewise PowerPiecewise::multiplied(const PowerPiecewise& o) const {
  if (dom_ != o.dom_) throw RepresentationError("multiplied: domain mismatch");
  std::vector<PLPiece> out;
  for (auto [lo, hi] : refine(*this, o)) {
    const double mid = std::isinf(hi) ? lo * 2.0 + 1.0 : 0.5 * (lo + hi);
    out.push_back({lo, hi, piece_at(mid).multiplied(o.piece_at(mid))});
  }
  return PowerPiecewise(dom_, std::move(out));
}

std::optional<PowerPiecewise> PowerPiecewise::reciprocal() const {
  std::vector<PLPiece> out;
  for (const auto& p : pieces_) {
    auto t = p.expr.single_term();
    if (!t || t->logk != 0 || t->c == 0.0) return std::nullopt;
    out.push_back({p.from, p.to, PLExpr::monomial(1.0 / t->c, -t->alpha)});
  }
  return PowerPiecewise(dom_, std::move(out));
}

std::optional<PowerPiecewise> PowerPiecewise::pow_real(double r) const {
  std::vector<PLPiece> out;
  for (const auto& p : pieces_) {
    auto e = p.expr.pow_real(r);
    if (!e) return std::nullopt;
    out.push_back({p.from, p.to, std::move(*e)});
  }
  return PowerPiecewise(dom_, std::move(out));
}

PowerPiecewise PowerPiecewise::dilated(double s) const {
  if (!(s > 0.0)) throw ParameterError("dilate: scale must be positive");
  const double end = dom_.length();
  std::vector<PLPiece> out;
  for (const auto& p : pieces_) {
    const double lo = p.from * s;
    const double hi = std::isinf(p.to) ? kInf : p.to * s;
    if (lo >= end) break;
    out.push_back({lo, std::min(hi, end), p.expr.dilated(s)});
    if (hi >= end) break;
  }
  if (!out.empty() && out.back().to < end)
    out.push_back({out.back().to, end, PLExpr()});  // extend by zero
  return PowerPiecewise(dom_, std::move(out));
}

PowerPiecewise PowerPiecewise::restricted(double t) const {
  if (!(t > 0.0)) return PowerPiecewise::single(dom_, PLExpr());
  std::vector<PLPiece> out;
  for (const auto& p : pieces_) {
    if (p.from >= t) break;
    out.push_back({p.from, std::min(p.to, t), p.expr});
  }
  if (t < dom_.length()) out.push_back({t, dom_.length(), PLExpr()});
  return PowerPiecewise(dom_, std::move(out));
}

bool PowerPiecewise::check_nonnegative(int probes_per_piece) const {
  for (const auto& p : pieces_) {
    for (double x : interior_probes(p.from, p.to, probes_per_piece))
      if (p.expr.eval(x) < 0.0) return false;
    if (p.from == 0.0) {
      auto d = p.expr.dominant_zero();
      if (d && d->c < 0.0) return false;
    }
    if (std::isinf(p.to)) {
      auto d = p.expr.dominant_infinity();
      if (d && d->c < 0.0) return false;
    }
  }
  return true;
}

int PowerPiecewise::monotonicity(int probes_per_piece) const {
  bool up_ok = true, down_ok = true;
  double prev_right = kNaN;
  for (const auto& p : pieces_) {
    const PLExpr d = p.expr.derivative();
    for (double x : interior_probes(p.from, p.to, probes_per_piece)) {
      const double dv = d.eval(x);
      if (dv > 1e-14) down_ok = false;
      if (dv < -1e-14) up_ok = false;
    }
    // jumps at piece boundaries
    if (!std::isnan(prev_right)) {
      const double left = prev_right;
      const double right =
          (p.from > 0.0) ? p.expr.eval(p.from) : p.expr.limit_zero().value_or_inf();
      if (right > left + 1e-14 * (1.0 + std::fabs(left))) down_ok = false;
      if (right < left - 1e-14 * (1.0 + std::fabs(left))) up_ok = false;
    }
    prev_right = std::isfinite(p.to) ? p.expr.eval(p.to) : kNaN;
  }
  if (up_ok && down_ok) return 2;  // constant
  if (up_ok) return +1;
  if (down_ok) return -1;
  return 0;
}

ExtReal expr_sup_on(const PLExpr& e, double a, double b) {
  if (e.is_zero()) return ExtReal(0.0);
  double best = -kInf;
  // endpoint values / limits
  ExtReal l0 = (a == 0.0) ? e.limit_zero() : ExtReal(e.eval(a));
  if (!l0.finite()) return l0;
  best = std::max(best, l0.value());
  ExtReal l1 = std::isinf(b) ? e.limit_infinity() : ExtReal(e.eval(b));
  if (!l1.finite()) return l1;
  best = std::max(best, l1.value());
  // interior critical points: bracket sign changes of the exact derivative
  const PLExpr d = e.derivative();
  std::vector<double> xs = interior_probes(a, b, 65);
  if (xs.empty()) return ExtReal(best);
  double px = xs.front(), pd = d.eval(px);
  best = std::max(best, e.eval(px));
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double x = xs[i];
    const double dv = d.eval(x);
    best = std::max(best, e.eval(x));
    if ((pd > 0.0 && dv < 0.0) || (pd < 0.0 && dv > 0.0)) {
      double lo = px, hi = x;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (lo + hi);
        const double dm = d.eval(m);
        if ((dm > 0.0) == (pd > 0.0))
          lo = m;
        else
          hi = m;
      }
      best = std::max(best, e.eval(0.5 * (lo + hi)));
    }
    px = x;
    pd = dv;
  }
  if (!std::isfinite(best))
    return ExtReal::divergent("sup scan produced a non-finite value", a, b);
  return ExtReal(best);
}

std::vector<double> expr_critical_points(const PLExpr& e, double a, double b) {
  std::vector<double> cs;
  const PLExpr d = e.derivative();
  if (d.is_zero()) return cs;
  std::vector<double> xs = interior_probes(a, b, 65);
  if (xs.size() < 2) return cs;
  double px = xs.front(), pd = d.eval(px);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double x = xs[i];
    const double dv = d.eval(x);
    if ((pd > 0.0 && dv < 0.0) || (pd < 0.0 && dv > 0.0)) {
      double lo = px, hi = x;
      for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (lo + hi);
        if ((d.eval(m) > 0.0) == (pd > 0.0))
          lo = m;
        else
          hi = m;
      }
      cs.push_back(0.5 * (lo + hi));
    }
    px = x;
    pd = dv;
  }
  return cs;
}

PowerPiecewise averaged_cumulative(const PowerPiecewise& f) {
  const PLTerm inv_t{1.0, -1.0, 0};
  const PowerPiecewise C = f.cumulative();
  std::vector<PLPiece> out;
  for (const auto& p : C.pieces()) out.push_back({p.from, p.to, p.expr.mul_term(inv_t)});
  return PowerPiecewise(f.domain(), std::move(out));
}

ExtReal PowerPiecewise::sup_on(double a, double b) const {
  double best = -kInf;
  for (const auto& p : pieces_) {
    const double lo = std::max(a, p.from);
    const double hi = std::min(b, p.to);
    if (!(hi > lo)) continue;
    ExtReal s = expr_sup_on(p.expr, lo, hi);
    if (!s.finite()) return s;
    best = std::max(best, s.value());
  }
  return ExtReal(best);
}

}  // namespace rikit

#include "rikit/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "rikit/quadrature.hpp"
#include "rikit/rng.hpp"

namespace rikit {

// ============== descriptor ==============

SpaceDescriptor SpaceDescriptor::lp(double p, IntervalDomain dom, bool quasi) {
  if (!quasi && !(p >= 1.0)) throw ParameterError("L^p: p >= 1 (or flag quasi)");
  if (quasi && !(p > 0.0)) throw ParameterError("L^p: p > 0");
  SpaceDescriptor s;
  s.kind_ = Kind::Lp;
  s.dom_ = dom;
  s.p_ = p;
  s.q_ = p;
  s.quasi_ = quasi;
  return s;
}

SpaceDescriptor SpaceDescriptor::lorentz_pq(double p, double q, IntervalDomain dom,
                                            bool quasi) {
  if (!(p >= 1.0)) throw ParameterError("L^{p,q}: p >= 1");
  if (!quasi && !(q >= 1.0)) throw ParameterError("L^{p,q}: q >= 1 (or flag quasi)");
  if (!std::isinf(q) && !(q > 0.0)) throw ParameterError("L^{p,q}: q > 0");
  SpaceDescriptor s;
  s.kind_ = Kind::LorentzPQ;
  s.dom_ = dom;
  s.p_ = p;
  s.q_ = q;
  s.quasi_ = quasi;
  return s;
}

SpaceDescriptor SpaceDescriptor::classical_lambda(Weight w, double q, IntervalDomain dom) {
  if (!(q >= 1.0)) throw ParameterError("Lambda(w,q): q in [1, inf]");
  SpaceDescriptor s;
  s.kind_ = Kind::ClassicalLambda;
  s.dom_ = dom;
  s.q_ = q;
  if (std::isinf(q)) {
    const int m = w.w().monotonicity();
    if (m != +1 && m != 2)
      throw ParameterError("Lambda(w,inf): only nondecreasing weights are accepted");
    s.banach_flag_ = check_a1(w).holds;
  } else {
    s.banach_flag_ = check_am_q(w, q).holds;
  }
  s.w_ = std::make_shared<const Weight>(std::move(w));
  return s;
}

SpaceDescriptor SpaceDescriptor::lambda_of(FundamentalFunction phi) {
  SpaceDescriptor s;
  s.kind_ = Kind::LambdaOf;
  s.dom_ = phi.domain();
  s.phi_ = std::make_shared<const FundamentalFunction>(std::move(phi));
  return s;
}

SpaceDescriptor SpaceDescriptor::m_of(FundamentalFunction phi) {
  SpaceDescriptor s;
  s.kind_ = Kind::MOf;
  s.dom_ = phi.domain();
  s.phi_ = std::make_shared<const FundamentalFunction>(std::move(phi));
  return s;
}

SpaceDescriptor SpaceDescriptor::mstar_of(FundamentalFunction phi) {
  SpaceDescriptor s;
  s.kind_ = Kind::MStarOf;
  s.dom_ = phi.domain();
  s.phi_ = std::make_shared<const FundamentalFunction>(std::move(phi));
  return s;
}

SpaceDescriptor SpaceDescriptor::lorentz_orlicz(Weight w, OrliczFunction phi,
                                                IntervalDomain dom) {
  SpaceDescriptor s;
  s.kind_ = Kind::LorentzOrlicz;
  s.dom_ = dom;
  s.w_ = std::make_shared<const Weight>(std::move(w));
  s.orlicz_ = std::make_shared<const OrliczFunction>(std::move(phi));
  return s;
}

const Weight& SpaceDescriptor::weight() const {
  if (!w_) throw ParameterError("space has no weight");
  return *w_;
}
const FundamentalFunction& SpaceDescriptor::phi() const {
  if (!phi_) throw ParameterError("space has no fundamental-function parameter");
  return *phi_;
}
const OrliczFunction& SpaceDescriptor::orlicz() const {
  if (!orlicz_) throw ParameterError("space has no Orlicz parameter");
  return *orlicz_;
}

std::string SpaceDescriptor::label() const {
  switch (kind_) {
    case Kind::Lp: return "L^" + std::to_string(p_);
    case Kind::LorentzPQ:
      return "L^{" + std::to_string(p_) + "," +
             (std::isinf(q_) ? std::string("inf") : std::to_string(q_)) + "}";
    case Kind::ClassicalLambda:
      return "Lambda(w," + (std::isinf(q_) ? std::string("inf") : std::to_string(q_)) + ")";
    case Kind::LambdaOf: return "Lambda(phi)";
    case Kind::MOf: return "M(phi)";
    case Kind::MStarOf: return "M*(phi)";
    case Kind::LorentzOrlicz: return "Lambda(w,orlicz)";
  }
  return "?";
}

// ============== domain fitting helpers ==============

namespace {

PowerPiecewise slice_pp(const PowerPiecewise& f, const IntervalDomain& dom) {
  if (f.domain() == dom) return f;
  const double l = dom.length();
  if (f.domain().length() < l)
    throw RepresentationError("function domain smaller than the space domain");
  std::vector<PLPiece> ps;
  for (const auto& p : f.pieces()) {
    if (p.from >= l) break;
    ps.push_back({p.from, std::min(p.to, l), p.expr});
  }
  return PowerPiecewise(dom, std::move(ps));
}

StepFunction slice_step(const StepFunction& f, const IntervalDomain& dom) {
  if (f.domain() == dom) return f;
  const double l = dom.length();
  if (f.domain().length() < l) {
    // extend by zero onto the half line
    std::vector<double> b = f.breaks();
    std::vector<double> v = f.values();
    b.push_back(dom.length());
    v.push_back(0.0);
    return StepFunction(dom, std::move(b), std::move(v));
  }
  std::vector<double> b{0.0};
  std::vector<double> v;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (f.breaks()[i] >= l) break;
    b.push_back(std::min(f.breaks()[i + 1], l));
    v.push_back(f.values()[i]);
  }
  return StepFunction(dom, std::move(b), std::move(v));
}

// f* for the norm engine: steps are rearranged; any other carrier must be
// declared nonincreasing.
Evaluable star(const Evaluable& f, bool assume) {
  if (auto* s = f.as_step()) return Evaluable(rearrange(*s));
  if (f.flags().nonincreasing || assume) return f;
  throw CapabilityError(
      "norm: non-step carriers are accepted only when declared nonincreasing");
}

std::optional<Dominant> near_zero_dominant(const Evaluable& g) {
  if (auto* s = g.as_step()) return Dominant(std::fabs(s->values().front()), 0.0, 0.0);
  if (auto* p = g.as_power()) {
    auto d = p->dominant_zero();
    return d ? Dominant(*d) : Dominant(0.0, 0.0, 0.0);
  }
  if (auto* w = g.as_pow_of()) {
    auto d = w->base.dominant_zero();
    if (!d) return Dominant(0.0, 0.0, 0.0);
    if (d->c > 0.0) return Dominant(*d).pow(w->r);
    return std::nullopt;
  }
  if (auto* r = g.as_ratio()) {
    auto dn = r->num.dominant_zero();
    auto dd = r->den.dominant_zero();
    if (dn && dd) return Dominant(*dn).div(Dominant(*dd));
    if (!dn && dd) return Dominant(0.0, 0.0, 0.0);
  }
  return std::nullopt;
}

// exact |g|^q as a power-log carrier, when representable (g >= 0 assumed)
std::optional<PowerPiecewise> exact_power(const Evaluable& g, double q) {
  if (auto* s = g.as_step()) return PowerPiecewise::from_step(s->abs_pow(q));
  if (auto* p = g.as_power()) return p->pow_real(q);
  if (auto* w = g.as_pow_of()) return w->base.pow_real(w->r * q);
  if (auto* r = g.as_ratio()) {
    auto nq = r->num.pow_real(q);
    auto dq = r->den.pow_real(-q);
    if (nq && dq) return nq->multiplied(*dq);
  }
  return std::nullopt;
}

// integral_0^cap |g|^q * wt, exact when carriers allow, otherwise numeric
// middle with a certified tail
ExtReal power_against_weight(const Evaluable& g, double q, const PowerPiecewise& wt,
                             double cap) {
  if (auto* s = g.as_step()) {
    double total = 0.0;
    for (std::size_t i = 0; i < s->values().size(); ++i) {
      const double v = std::fabs(s->values()[i]);
      if (v == 0.0) continue;
      const double lo = s->breaks()[i];
      const double hi = std::min(s->breaks()[i + 1], cap);
      if (hi <= lo) continue;
      ExtReal dw = wt.integral(lo, hi);
      if (!dw.finite()) return dw;
      total += std::pow(v, q) * dw.value();
    }
    return ExtReal(total);
  }

  if (auto gq = exact_power(g, q)) {
    PowerPiecewise fitted = slice_pp(*gq, wt.domain());
    return fitted.multiplied(wt).integral(0.0, cap);
  }

  // numeric path
  auto f = [&](double x) {
    const double v = g.eval(x);
    return std::pow(std::fabs(v), q) * wt.eval(x);
  };
  // head certification
  if (auto gd = near_zero_dominant(g)) {
    auto wd = wt.dominant_zero();
    Dominant head = gd->c > 0.0 ? gd->pow(q) : Dominant(0.0, 0.0, 0.0);
    if (wd) head = head.mul(Dominant(*wd));
    if (gd->c > 0.0 && wd && head.e <= -1.0 && head.c != 0.0)
      return ExtReal::divergent("integral diverges at 0 (dominant exponent " +
                                    std::to_string(head.e) + ")",
                                0.0, kNaN);
  }

  std::vector<double> cuts{0.0};
  for (double h : g.hints())
    if (h > 0.0 && h < cap) cuts.push_back(h);
  for (double h : wt.breakpoints())
    if (h > 0.0 && h < cap) cuts.push_back(h);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  std::optional<PLExpr> tail_expr;
  double T = cap;
  if (std::isinf(cap)) {
    T = std::max(cuts.back(), wt.pieces().back().from);
    if (auto oe = g.outer_expr()) {
      T = std::max(T, oe->first);
      if (auto pq = oe->second.pow_real(q))
        tail_expr = pq->multiplied(wt.pieces().back().expr);
    }
    if (!tail_expr) {
      auto gd = g.outer_dominant();
      auto wd = wt.dominant_infinity();
      if (!gd)
        return ExtReal::divergent("cannot certify the improper tail for this carrier");
      if (gd->c != 0.0) {
        Dominant tail_dom = gd->pow(q);
        if (wd) tail_dom = tail_dom.mul(Dominant(*wd));
        if (tail_dom.e >= -1.0 && tail_dom.c != 0.0)
          return ExtReal::divergent("tail integral diverges (dominant exponent " +
                                        std::to_string(tail_dom.e) + ")",
                                    T, kInf);
      }
      T = std::max(T, 1e-6);
      total += tanh_sinh_to_infinity(f, T);
    }
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double c) { return c >= T; }),
               cuts.end());
    cuts.push_back(T);
  } else {
    cuts.push_back(cap);
  }

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += tanh_sinh(f, cuts[i], cuts[i + 1]);
  if (tail_expr) {
    ExtReal t = tail_expr->integral(T, kInf);
    if (!t.finite()) return t;
    total += t.value();
  }
  return ExtReal(total);
}

// left limit of a nondecreasing piecewise multiplier at x
double mult_left_limit(const PowerPiecewise& m, double x) {
  for (const auto& p : m.pieces())
    if (x <= p.to || &p == &m.pieces().back()) return p.expr.eval(x);
  return m.pieces().back().expr.eval(x);
}

// sup over (0, cap] of mult(t) * g(t) for a nondecreasing multiplier
ExtReal weighted_sup(const Evaluable& g, const PowerPiecewise& mult, double cap) {
  if (auto* s = g.as_step()) {
    double best = 0.0;
    for (std::size_t i = 0; i < s->values().size(); ++i) {
      const double v = std::fabs(s->values()[i]);
      if (v == 0.0) continue;
      const double hi = std::min(s->breaks()[i + 1], cap);
      if (hi <= s->breaks()[i]) continue;
      best = std::max(best, v * mult_left_limit(mult, hi));
      if (std::isinf(hi))
        return ExtReal::divergent("nonzero value on a piece of infinite measure");
    }
    return ExtReal(best);
  }
  if (auto* p = g.as_power()) {
    PowerPiecewise fitted = slice_pp(*p, mult.domain());
    return mult.multiplied(fitted).sup_on(0.0, cap);
  }
  // probe scan with dominant ends
  double best = 0.0;
  std::vector<double> probes = g.hints();
  for (double b : mult.breakpoints()) probes.push_back(b);
  const double hi = std::isinf(cap) ? 1e9 : cap;
  for (int i = 0; i <= 256; ++i) probes.push_back(1e-9 * std::pow(hi / 1e-9, i / 256.0));
  for (double t : probes) {
    if (t <= 0.0 || t > cap) continue;
    best = std::max(best, mult.eval(t) * std::fabs(g.eval(t)));
  }
  auto d0 = near_zero_dominant(g);
  auto m0 = mult.dominant_zero();
  if (d0 && m0) {
    ExtReal l = d0->mul(Dominant(*m0)).limit_zero();
    if (!l.finite()) return l;
    best = std::max(best, l.value());
  }
  if (std::isinf(cap)) {
    auto di = g.outer_dominant();
    auto mi = mult.dominant_infinity();
    if (di && mi) {
      ExtReal l = di->mul(Dominant(*mi)).limit_infinity();
      if (!l.finite()) return l;
      best = std::max(best, l.value());
    }
  }
  if (!std::isfinite(best)) return ExtReal::divergent("sup scan hit a non-finite value");
  return ExtReal(best);
}

// running sup R(t) = sup_{0 < x <= t} P(x) of a nonnegative carrier, exact
// pieces between refined critical points
struct RunningSup {
  std::optional<PowerPiecewise> pp;
  std::optional<Divergence> div;
};

RunningSup running_sup(const PowerPiecewise& P) {
  RunningSup out;
  ExtReal l0 = P.limit_zero();
  if (!l0.finite()) {
    out.div = Divergence{"sup is infinite near 0: " + l0.divergence()->what, 0.0, kNaN};
    return out;
  }
  double M = std::max(0.0, l0.value());
  std::vector<PLPiece> pieces;
  auto emit = [&](double a, double b, PLExpr e) {
    if (!(b > a)) return;
    pieces.push_back({a, b, std::move(e)});
  };

  for (const auto& p : P.pieces()) {
    std::vector<double> seg{p.from};
    for (double c : expr_critical_points(p.expr, p.from, p.to)) seg.push_back(c);
    seg.push_back(p.to);
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) {
      const double x0 = seg[i], x1 = seg[i + 1];
      const double p0 = (x0 == 0.0) ? std::max(0.0, l0.value()) : p.expr.eval(x0);
      ExtReal e1 = std::isinf(x1) ? p.expr.limit_infinity() : ExtReal(p.expr.eval(x1));
      const double p1 = e1.finite() ? e1.value() : kInf;
      if (p1 >= p0) {  // nondecreasing run
        if (p0 >= M) {
          emit(x0, x1, p.expr);
          M = p1;
        } else if (p1 <= M) {
          emit(x0, x1, PLExpr::constant(M));
        } else {
          double lo = x0, hi = std::isinf(x1) ? std::max(x0 * 2.0, 1e6) : x1;
          while (std::isinf(x1) && p.expr.eval(hi) < M) hi *= 2.0;
          for (int it = 0; it < 90; ++it) {
            const double m = 0.5 * (lo + hi);
            (p.expr.eval(m) < M ? lo : hi) = m;
          }
          const double c = 0.5 * (lo + hi);
          emit(x0, c, PLExpr::constant(M));
          emit(c, x1, p.expr);
          M = p1;
        }
      } else {  // decreasing run: sup freezes at the left end
        M = std::max(M, p0);
        emit(x0, x1, PLExpr::constant(M));
      }
    }
  }
  out.pp = PowerPiecewise(P.domain(), std::move(pieces));
  return out;
}

PowerPiecewise as_power_carrier(const Evaluable& g, const IntervalDomain& dom) {
  if (auto* s = g.as_step()) return slice_pp(PowerPiecewise::from_step(s->abs()), dom);
  if (auto* p = g.as_power()) return slice_pp(*p, dom);
  throw CapabilityError("this norm needs a step or power-log carrier");
}

}  // namespace

// ============== fundamental function ==============

FundamentalFunction fundamental_function(const SpaceDescriptor& X) {
  switch (X.kind()) {
    case SpaceDescriptor::Kind::Lp:
      return FundamentalFunction::power(X.domain(), 1.0, 1.0 / X.p());
    case SpaceDescriptor::Kind::LorentzPQ:
      // the normalized L^{p,q} norm gives the indicator norm t^{1/p} exactly
      return FundamentalFunction::power(X.domain(), 1.0, 1.0 / X.p());
    case SpaceDescriptor::Kind::ClassicalLambda: {
      if (std::isinf(X.q()))
        return FundamentalFunction(slice_pp(X.weight().w(), X.domain()));
      auto root = X.weight().cumulative().pow_real(1.0 / X.q());
      if (!root)
        throw CapabilityError(
            "fundamental function of Lambda(w,q): W^{1/q} leaves the power-log family");
      return FundamentalFunction(slice_pp(*root, X.domain()));
    }
    case SpaceDescriptor::Kind::LambdaOf:
    case SpaceDescriptor::Kind::MOf:
    case SpaceDescriptor::Kind::MStarOf:
      return X.phi();
    case SpaceDescriptor::Kind::LorentzOrlicz:
      throw CapabilityError(
          "fundamental function of Lambda(w,phi) is not available in closed form");
  }
  throw ParameterError("unknown space kind");
}

// ============== norm ==============

ExtReal norm(const SpaceDescriptor& X, const Evaluable& f, bool assume_nonincreasing) {
  const double cap = X.domain().length();
  switch (X.kind()) {
    case SpaceDescriptor::Kind::Lp: {
      // no rearrangement needed; integrates |f|^p directly
      const PowerPiecewise one = PowerPiecewise::constant(X.domain(), 1.0);
      Evaluable g = f;
      if (!f.as_step() && !(f.flags().nonincreasing || assume_nonincreasing))
        throw CapabilityError("L^p norm: declare non-step carriers nonincreasing");
      ExtReal r = power_against_weight(g, X.p(), one, cap);
      if (!r.finite()) return r;
      return ExtReal(std::pow(r.value(), 1.0 / X.p()));
    }
    case SpaceDescriptor::Kind::LorentzPQ: {
      Evaluable g = star(f, assume_nonincreasing);
      if (std::isinf(X.q())) {
        const PowerPiecewise m =
            PowerPiecewise::power(X.domain(), 1.0, 1.0 / X.p());
        return weighted_sup(g, m, cap);
      }
      const double r = X.q() / X.p();
      const PowerPiecewise wt =
          PowerPiecewise::single(X.domain(), PLExpr::monomial(r, r - 1.0));
      ExtReal v = power_against_weight(g, X.q(), wt, cap);
      if (!v.finite()) return v;
      return ExtReal(std::pow(v.value(), 1.0 / X.q()));
    }
    case SpaceDescriptor::Kind::ClassicalLambda: {
      Evaluable g = star(f, assume_nonincreasing);
      if (std::isinf(X.q()))
        return weighted_sup(g, slice_pp(X.weight().w(), X.domain()), cap);
      ExtReal v =
          power_against_weight(g, X.q(), slice_pp(X.weight().w(), X.domain()), cap);
      if (!v.finite()) return v;
      return ExtReal(std::pow(v.value(), 1.0 / X.q()));
    }
    case SpaceDescriptor::Kind::LambdaOf: {
      Evaluable g = star(f, assume_nonincreasing);
      if (auto* s = g.as_step()) {
        // integral f* dphi = sum v_i (phi(t_i) - phi(t_{i-1}))
        double total = 0.0;
        for (std::size_t i = 0; i < s->values().size(); ++i) {
          const double v = s->values()[i];
          if (v == 0.0) continue;
          const double hi = std::min(s->breaks()[i + 1], cap);
          const double lo = std::min(s->breaks()[i], cap);
          if (hi <= lo) continue;
          total += v * (X.phi().eval(hi) - X.phi().eval(lo));
        }
        return ExtReal(total);
      }
      return power_against_weight(g, 1.0, X.phi().pp().derivative(), cap);
    }
    case SpaceDescriptor::Kind::MOf: {
      Evaluable g = star(f, assume_nonincreasing);
      try {
        PowerPiecewise gp = as_power_carrier(g, X.domain());
        PowerPiecewise h = averaged_cumulative(gp);
        return X.phi().pp().multiplied(h).sup_on(0.0, cap);
      } catch (const RepresentationError& e) {
        return ExtReal::divergent(std::string("M(phi) norm diverges: ") + e.what());
      }
    }
    case SpaceDescriptor::Kind::MStarOf: {
      Evaluable g = star(f, assume_nonincreasing);
      return weighted_sup(g, X.phi().pp(), cap);
    }
    case SpaceDescriptor::Kind::LorentzOrlicz: {
      Evaluable g = star(f, assume_nonincreasing);
      if (auto* s = g.as_step()) return luxemburg_norm(X.weight(), X.orlicz(), *s, cap);
      throw CapabilityError("Lambda(w,phi) norm needs a step carrier");
    }
  }
  throw ParameterError("unknown space kind");
}

// ============== indicator profile ==============

ExtReal IndicatorProfile::value(double t) const {
  if (divergence)
    return ExtReal::divergent(divergence->what, divergence->piece_from,
                              divergence->piece_to);
  if (cum) {
    const double c = cum->eval(t);
    return ExtReal(std::pow(std::max(0.0, c), 1.0 / qexp));
  }
  if (sup) return ExtReal(sup->eval(t));
  return fn(t);
}

IndicatorProfile indicator_profile(const SpaceDescriptor& X, const Evaluable& g) {
  IndicatorProfile out;
  const IntervalDomain dom = X.domain();

  auto cum_type = [&](const std::optional<PowerPiecewise>& integrand, double qexp) {
    if (!integrand) return false;
    try {
      out.cum = integrand->cumulative();
      out.qexp = qexp;
      auto d0 = out.cum->pieces().front().expr.dominant_zero();
      auto di = out.cum->pieces().back().expr.dominant_infinity();
      if (d0 && d0->c > 0.0) out.dom_zero = Dominant(*d0).pow(1.0 / qexp);
      if (di && di->c > 0.0) out.dom_infinity = Dominant(*di).pow(1.0 / qexp);
      return true;
    } catch (const RepresentationError& e) {
      out.divergence = Divergence{std::string("norm of every truncation diverges: ") +
                                  e.what()};
      return true;
    }
  };

  auto sup_type = [&](const PowerPiecewise& P) {
    RunningSup rs = running_sup(P);
    if (rs.div) {
      out.divergence = rs.div;
      return;
    }
    out.sup = rs.pp;
    auto d0 = out.sup->pieces().front().expr.dominant_zero();
    auto di = out.sup->pieces().back().expr.dominant_infinity();
    if (d0) out.dom_zero = Dominant(*d0);
    if (di) out.dom_infinity = Dominant(*di);
  };

  switch (X.kind()) {
    case SpaceDescriptor::Kind::Lp: {
      auto gq = exact_power(g, X.p());
      if (gq && cum_type(slice_pp(*gq, dom), X.p())) return out;
      break;
    }
    case SpaceDescriptor::Kind::LorentzPQ: {
      if (!std::isinf(X.q())) {
        auto gq = exact_power(g, X.q());
        if (gq) {
          const double r = X.q() / X.p();
          const PowerPiecewise wt =
              PowerPiecewise::single(dom, PLExpr::monomial(r, r - 1.0));
          if (cum_type(slice_pp(*gq, dom).multiplied(wt), X.q())) return out;
        }
      } else {
        try {
          PowerPiecewise gp = as_power_carrier(g, dom);
          sup_type(PowerPiecewise::power(dom, 1.0, 1.0 / X.p()).multiplied(gp));
          return out;
        } catch (const CapabilityError&) {
        }
      }
      break;
    }
    case SpaceDescriptor::Kind::ClassicalLambda: {
      if (!std::isinf(X.q())) {
        auto gq = exact_power(g, X.q());
        if (gq &&
            cum_type(slice_pp(*gq, dom).multiplied(slice_pp(X.weight().w(), dom)),
                     X.q()))
          return out;
      } else {
        try {
          PowerPiecewise gp = as_power_carrier(g, dom);
          sup_type(slice_pp(X.weight().w(), dom).multiplied(gp));
          return out;
        } catch (const CapabilityError&) {
        }
      }
      break;
    }
    case SpaceDescriptor::Kind::LambdaOf: {
      auto g1 = exact_power(g, 1.0);
      if (g1 && cum_type(slice_pp(*g1, dom).multiplied(X.phi().pp().derivative()), 1.0))
        return out;
      break;
    }
    case SpaceDescriptor::Kind::MStarOf: {
      try {
        PowerPiecewise gp = as_power_carrier(g, dom);
        sup_type(X.phi().pp().multiplied(gp));
        return out;
      } catch (const CapabilityError&) {
      }
      break;
    }
    case SpaceDescriptor::Kind::MOf: {
      try {
        PowerPiecewise gp = as_power_carrier(g, dom);
        sup_type(X.phi().pp().multiplied(averaged_cumulative(gp)));
        return out;
      } catch (const RepresentationError& e) {
        out.divergence = Divergence{std::string("every truncation has infinite norm: ") +
                                    e.what()};
        return out;
      } catch (const CapabilityError&) {
      }
      break;
    }
    case SpaceDescriptor::Kind::LorentzOrlicz:
      break;
  }

  // generic fallback: per-t norm of the restricted function
  out.fn = [X, g](double t) -> ExtReal {
    return norm(X, restrict_to(g, t), true);
  };
  return out;
}

// ============== couple descriptor ==============

namespace {

double ratio_sup_pp(const PowerPiecewise& a, const PowerPiecewise& b,
                    const GridConfig& grid, const IntervalDomain& dom, bool& finite) {
  finite = true;
  double best = 0.0;
  std::vector<double> bs = a.breakpoints();
  for (double x : b.breakpoints()) bs.push_back(x);
  for (double t : make_probes(bs, grid, dom))
    best = std::max(best, a.eval(t) / b.eval(t));
  auto a0 = a.dominant_zero();
  auto b0 = b.dominant_zero();
  if (a0 && b0) {
    ExtReal l = Dominant(*a0).div(Dominant(*b0)).limit_zero();
    if (!l.finite())
      finite = false;
    else
      best = std::max(best, l.value());
  }
  if (dom.is_half_line()) {
    auto ai = a.dominant_infinity();
    auto bi = b.dominant_infinity();
    if (ai && bi) {
      ExtReal l = Dominant(*ai).div(Dominant(*bi)).limit_infinity();
      if (!l.finite())
        finite = false;
      else
        best = std::max(best, l.value());
    }
  }
  return best;
}

}  // namespace

CoupleDescriptor CoupleDescriptor::make(SpaceDescriptor A0, SpaceDescriptor A1,
                                        const GridConfig& grid) {
  CoupleDescriptor c{std::move(A0), std::move(A1)};
  const FundamentalFunction phi0 = fundamental_function(c.A0);
  const FundamentalFunction phi1 = fundamental_function(c.A1);
  bool f01 = false, f10 = false;
  c.comp_sup_01 = ratio_sup_pp(phi0.pp(), phi1.pp(), grid, c.A0.domain(), f01);
  c.comp_sup_10 = ratio_sup_pp(phi1.pp(), phi0.pp(), grid, c.A0.domain(), f10);
  c.phi0_le_phi1 = f01;
  c.phi1_le_phi0 = f10;
  auto rec = phi1.pp().reciprocal();
  if (rec) {
    Evaluable inv(*rec);
    c.inv_phi1_norm = norm(c.A1, inv, true);
    c.inv_phi1_in_A1 = c.inv_phi1_norm.finite();
  } else {
    c.inv_phi1_norm = ExtReal::divergent("1/phi_{A1} leaves the power-log family");
    c.inv_phi1_in_A1 = false;
  }
  return c;
}

// ============== lemma 2 battery ==============

ConditionReport lemma2_check(const FundamentalFunction& phi, char which,
                             const GridConfig& grid, unsigned seed, int samples) {
  const IntervalDomain dom = phi.domain();
  if (which == 'd') {
    auto rphi = phi.pp().reciprocal();
    if (!rphi)
      throw CapabilityError("lemma2 (d): 1/phi leaves the power-log family");
    RatioAnalysis an;
    an.breakpoints = phi.pp().breakpoints();
    const PLExpr G0 = rphi->pieces().front().expr.antiderivative();
    if (!G0.limit_zero().finite()) {
      an.divergence = Divergence{"integral_0^t ds/phi diverges at 0", 0.0,
                                 rphi->pieces().front().to};
      return decide_ratio_condition("lemma2_d", an, grid, dom);
    }
    const PowerPiecewise C = rphi->cumulative();
    const PowerPiecewise& ph = phi.pp();
    an.ratio = [&ph, C](double t) -> ExtReal {
      return ExtReal(ph.eval(t) * C.eval(t) / t);
    };
    const PLTerm inv_t{1.0, -1.0, 0};
    auto lim = [&](bool zero) -> ExtReal {
      const PLExpr n = zero ? ph.pieces().front().expr.multiplied(C.pieces().front().expr)
                            : ph.pieces().back().expr.multiplied(C.pieces().back().expr);
      auto d = zero ? n.mul_term(inv_t).dominant_zero() : n.mul_term(inv_t).dominant_infinity();
      if (!d) return ExtReal(0.0);
      return zero ? Dominant(*d).limit_zero() : Dominant(*d).limit_infinity();
    };
    an.limit_zero = lim(true);
    an.limit_infinity = lim(false);
    return decide_ratio_condition("lemma2_d", an, grid, dom);
  }

  if (which == 'c') {
    auto rphi = phi.pp().reciprocal();
    if (!rphi)
      throw CapabilityError("lemma2 (c): 1/phi leaves the power-log family");
    ConditionReport rep;
    rep.condition = "lemma2_c";
    rep.grid = grid;
    Evaluable inv(*rphi);
    ExtReal n = norm(SpaceDescriptor::m_of(phi), inv, true);
    rep.holds = n.finite();
    rep.constant = n;
    if (!n.finite()) rep.divergence = n.divergence();
    rep.notes = "analytic: 1/phi in M(phi) iff sup phi * H(1/phi) is finite";
    return rep;
  }

  if (which == 'b' || which == 'e') {
    ConditionReport rep;
    rep.condition = which == 'b' ? "lemma2_b" : "lemma2_e";
    rep.grid = grid;
    rep.method = "grid";
    const SpaceDescriptor M = SpaceDescriptor::m_of(phi);
    const SpaceDescriptor Mstar = SpaceDescriptor::mstar_of(phi);
    Rng rng(seed);
    double worst = 1.0;
    std::optional<double> witness;
    for (int i = 0; i < samples; ++i) {
      StepSamplerOptions opt;
      opt.domain_cap = dom.length();
      StepFunction f = random_nonincreasing_step(rng, opt);
      StepFunction fitted = slice_step(f, dom);
      ExtReal a = norm(M, Evaluable(fitted));
      ExtReal b = norm(Mstar, Evaluable(fitted));
      if (!a.finite() || !b.finite() || b.value() == 0.0) continue;
      const double r = a.value() / b.value();
      if (r > worst) {
        worst = r;
        witness = fitted.support_end();
      }
    }
    rep.holds = true;
    rep.constant = ExtReal(worst);
    rep.witness_t = witness;
    rep.notes =
        "empirical: worst sampled ||f||_M / ||f||_M* over nonincreasing step "
        "functions; equality of the spaces is not certified numerically";
    return rep;
  }
  throw ParameterError("lemma2_check: which must be one of b, c, d, e");
}

ConditionReport validate_phi_pair(const FundamentalFunction& phiX,
                                  const FundamentalFunction& phiXprime,
                                  const GridConfig& grid) {
  ConditionReport rep;
  rep.condition = "phi_pair";
  rep.grid = grid;
  std::vector<double> bs = phiX.pp().breakpoints();
  for (double b : phiXprime.pp().breakpoints()) bs.push_back(b);
  double worst = 0.0;
  std::optional<double> witness;
  for (double t : make_probes(bs, grid, phiX.domain())) {
    const double prod = phiX.eval(t) * phiXprime.eval(t);
    const double dev = std::fabs(prod - t) / t;
    if (dev > worst) {
      worst = dev;
      witness = t;
    }
  }
  rep.holds = worst <= 1e-9;
  rep.constant = ExtReal(worst);
  rep.witness_t = witness;
  rep.notes = "max relative deviation of phi_X(t) phi_X'(t) from t";
  return rep;
}

// ============== condition (2.4) ==============

ConditionReport check_cond24(const Weight& w, const SpaceDescriptor& space,
                             const GridConfig& grid) {
  const int mono = w.w().monotonicity();
  if (mono != +1 && mono != 2)
    throw ParameterError("check_cond24: weight must be nondecreasing");
  auto rw = w.w().reciprocal();
  if (!rw) throw CapabilityError("check_cond24: 1/w leaves the power-log family");

  const FundamentalFunction phiX = fundamental_function(space);
  EvalFlags fl;
  fl.nonincreasing = true;
  fl.nonnegative = true;
  Evaluable g = Evaluable(*rw);
  (void)fl;

  IndicatorProfile prof = indicator_profile(space, g);
  RatioAnalysis an;
  an.breakpoints = w.w().breakpoints();
  for (double b : phiX.pp().breakpoints()) an.breakpoints.push_back(b);
  if (prof.cum)
    for (double b : prof.cum->breakpoints()) an.breakpoints.push_back(b);
  if (prof.sup)
    for (double b : prof.sup->breakpoints()) an.breakpoints.push_back(b);

  if (prof.divergence) {
    an.divergence = prof.divergence;
    return decide_ratio_condition("c24", an, grid, space.domain());
  }

  const PowerPiecewise& wpp = w.w();
  an.ratio = [&wpp, &phiX, &prof](double t) -> ExtReal {
    ExtReal v = prof.value(t);
    if (!v.finite()) return v;
    return ExtReal(wpp.eval(t) * v.value() / phiX.eval(t));
  };

  bool analytic = true;
  auto end_limit = [&](bool zero) -> ExtReal {
    auto wd = zero ? wpp.dominant_zero() : wpp.dominant_infinity();
    auto pd = zero ? phiX.pp().dominant_zero() : phiX.pp().dominant_infinity();
    auto vd = zero ? prof.dom_zero : prof.dom_infinity;
    if (!wd || !pd || !vd) {
      analytic = false;
      return ExtReal(0.0);
    }
    Dominant d = Dominant(*wd).mul(*vd).div(Dominant(*pd));
    return zero ? d.limit_zero() : d.limit_infinity();
  };
  an.limit_zero = end_limit(true);
  an.limit_infinity = space.domain().is_half_line() ? end_limit(false) : ExtReal(0.0);

  ConditionReport rep = decide_ratio_condition("c24", an, grid, space.domain());
  if (!analytic) {
    rep.method = "grid";
    rep.notes = "grid verdict: no analytic end behavior available for this profile";
  }
  return rep;
}

}  // namespace rikit

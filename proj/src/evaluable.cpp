#include "rikit/evaluable.hpp"

#include <algorithm>
#include <cmath>

#include "rikit/quadrature.hpp"

namespace rikit {

struct Evaluable::Payload {
  std::variant<StepFunction, PowerPiecewise, PowOf, RatioOf, Generic> v;
};

Evaluable::Evaluable(StepFunction f) {
  flags_.nonincreasing = f.is_nonincreasing() && f.is_nonnegative();
  flags_.nonnegative = f.is_nonnegative();
  p_ = std::make_shared<const Payload>(Payload{std::move(f)});
}

Evaluable::Evaluable(PowerPiecewise f) {
  flags_.nonnegative = f.check_nonnegative();
  const int m = f.monotonicity();
  flags_.nonincreasing = flags_.nonnegative && (m == -1 || m == 2);
  p_ = std::make_shared<const Payload>(Payload{std::move(f)});
}

Evaluable Evaluable::pow_of(PowerPiecewise base, double r, Flags flags) {
  Evaluable e;
  if (flags.nonincreasing || flags.nonnegative) {
    e.flags_ = flags;
  } else {
    // base^r with base >= 0: monotone with (r>0) or against (r<0) the base
    e.flags_.nonnegative = true;
    const int m = base.monotonicity();
    e.flags_.nonincreasing =
        m == 2 || (r > 0.0 && m == -1) || (r < 0.0 && m == +1);
  }
  e.p_ = std::make_shared<const Payload>(Payload{PowOf{std::move(base), r}});
  return e;
}

Evaluable Evaluable::ratio_of(PowerPiecewise num, PowerPiecewise den, Flags flags) {
  Evaluable e;
  e.flags_ = flags;
  e.p_ = std::make_shared<const Payload>(Payload{RatioOf{std::move(num), std::move(den)}});
  return e;
}

Evaluable Evaluable::generic(Generic g) {
  Evaluable e;
  e.flags_ = g.flags;
  e.p_ = std::make_shared<const Payload>(Payload{std::move(g)});
  return e;
}

const StepFunction* Evaluable::as_step() const { return std::get_if<StepFunction>(&p_->v); }
const PowerPiecewise* Evaluable::as_power() const {
  return std::get_if<PowerPiecewise>(&p_->v);
}
const Evaluable::PowOf* Evaluable::as_pow_of() const { return std::get_if<PowOf>(&p_->v); }
const Evaluable::RatioOf* Evaluable::as_ratio() const { return std::get_if<RatioOf>(&p_->v); }
const Evaluable::Generic* Evaluable::as_generic() const { return std::get_if<Generic>(&p_->v); }

const IntervalDomain& Evaluable::domain() const {
  if (auto* s = as_step()) return s->domain();
  if (auto* p = as_power()) return p->domain();
  if (auto* w = as_pow_of()) return w->base.domain();
  if (auto* r = as_ratio()) return r->num.domain();
  return as_generic()->dom;
}

double Evaluable::eval(double x) const {
  if (auto* s = as_step()) return s->eval(x);
  if (auto* p = as_power()) return p->eval(x);
  if (auto* w = as_pow_of()) {
    const double b = w->base.eval(x);
    return std::pow(b, w->r);
  }
  if (auto* r = as_ratio()) {
    const double d = r->den.eval(x);
    return r->num.eval(x) / d;
  }
  return as_generic()->fn(x);
}

Evaluable::Flags Evaluable::flags() const { return flags_; }

std::vector<double> Evaluable::hints() const {
  std::vector<double> h;
  auto push_pp = [&](const PowerPiecewise& p) {
    for (double b : p.breakpoints()) h.push_back(b);
  };
  if (auto* s = as_step()) {
    for (double b : s->breaks())
      if (std::isfinite(b)) h.push_back(b);
  } else if (auto* p = as_power()) {
    push_pp(*p);
  } else if (auto* w = as_pow_of()) {
    push_pp(w->base);
  } else if (auto* r = as_ratio()) {
    push_pp(r->num);
    push_pp(r->den);
  } else {
    h = as_generic()->hints;
  }
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

std::optional<std::pair<double, PLExpr>> Evaluable::outer_expr() const {
  if (auto* s = as_step()) {
    const double t = s->support_end();
    if (std::isfinite(t)) return std::make_pair(t, PLExpr());
    return std::nullopt;
  }
  if (auto* p = as_power())
    return std::make_pair(p->pieces().back().from, p->pieces().back().expr);
  if (auto* w = as_pow_of()) {
    const auto& last = w->base.pieces().back();
    auto e = last.expr.pow_real(w->r);
    if (e) return std::make_pair(last.from, *e);
    return std::nullopt;
  }
  if (auto* r = as_ratio()) {
    const auto& ln = r->num.pieces().back();
    const auto& ld = r->den.pieces().back();
    auto dinv = ld.expr.pow_real(-1.0);
    if (!dinv) return std::nullopt;
    return std::make_pair(std::max(ln.from, ld.from), ln.expr.multiplied(*dinv));
  }
  const auto* g = as_generic();
  if (g->outer) return std::make_pair(g->outer_from, *g->outer);
  return std::nullopt;
}

std::optional<Dominant> Evaluable::outer_dominant() const {
  if (auto oe = outer_expr()) {
    auto d = oe->second.dominant_infinity();
    if (d) return Dominant(*d);
    return Dominant(0.0, 0.0, 0.0);
  }
  if (auto* w = as_pow_of()) {
    auto d = w->base.dominant_infinity();
    if (d && d->c > 0.0) return Dominant(*d).pow(w->r);
  }
  if (auto* r = as_ratio()) {
    auto dn = r->num.dominant_infinity();
    auto dd = r->den.dominant_infinity();
    if (dn && dd) return Dominant(*dn).div(Dominant(*dd));
    if (!dn && dd) return Dominant(0.0, 0.0, 0.0);
  }
  return std::nullopt;
}

std::optional<double> Evaluable::support_end() const {
  if (auto* s = as_step()) return s->support_end();
  if (auto* g = as_generic()) return g->support_end;
  return std::nullopt;
}

Evaluable dilate(const Evaluable& f, double s) {
  if (!(s > 0.0)) throw ParameterError("dilate: scale must be positive");
  Evaluable::Flags fl = f.flags();
  if (auto* st = f.as_step()) return Evaluable(st->dilated(s));
  if (auto* pp = f.as_power()) return Evaluable(pp->dilated(s));
  if (auto* po = f.as_pow_of()) return Evaluable::pow_of(po->base.dilated(s), po->r, fl);
  if (auto* ra = f.as_ratio())
    return Evaluable::ratio_of(ra->num.dilated(s), ra->den.dilated(s), fl);
  const auto* g = f.as_generic();
  Evaluable::Generic out;
  out.dom = g->dom;
  auto inner = g->fn;
  out.fn = [inner, s](double x) { return inner(x / s); };
  for (double h : g->hints) out.hints.push_back(h * s);
  out.flags = fl;
  if (g->outer) {
    out.outer = g->outer->dilated(s);
    out.outer_from = g->outer_from * s;
  }
  if (g->support_end) out.support_end = *g->support_end * s;
  return Evaluable::generic(std::move(out));
}

Evaluable restrict_to(const Evaluable& f, double t) {
  Evaluable::Flags fl = f.flags();
  if (auto* st = f.as_step()) return Evaluable(st->restricted(t));
  if (auto* pp = f.as_power()) return Evaluable(pp->restricted(t));
  if (auto* po = f.as_pow_of()) {
    if (po->r > 0.0) return Evaluable::pow_of(po->base.restricted(t), po->r, fl);
  }
  if (auto* ra = f.as_ratio())
    return Evaluable::ratio_of(ra->num.restricted(t), ra->den, fl);
  Evaluable::Generic out;
  out.dom = f.domain();
  Evaluable inner = f;
  out.fn = [inner, t](double x) { return x < t ? inner.eval(x) : 0.0; };
  out.hints = f.hints();
  out.hints.push_back(t);
  out.flags = fl;
  out.support_end = t;
  out.outer = PLExpr();
  out.outer_from = t;
  return Evaluable::generic(std::move(out));
}

ExtReal integrate(const Evaluable& g, double a, double b) {
  if (!(a >= 0.0) || !(b > a)) throw ParameterError("integrate: need 0 <= a < b");
  if (auto* s = g.as_step()) return s->integral(a, b);
  if (auto* p = g.as_power()) return p->integral(a, b);
  if (auto* w = g.as_pow_of()) {
    if (w->r == 1.0) return w->base.integral(a, b);
    if (auto powered = w->base.pow_real(w->r)) return powered->integral(a, b);
  }

  // generic path: split at hints, quadrature per finite cell, exact outer tail
  std::vector<double> cuts{a};
  for (double h : g.hints())
    if (h > a && h < b) cuts.push_back(h);
  double tail_from = b;
  std::optional<PLExpr> tail;
  if (std::isinf(b)) {
    auto oe = g.outer_expr();
    if (oe) {
      tail_from = std::max(a, oe->first);
      tail = oe->second;
    } else if (auto dom = g.outer_dominant()) {
      // convergence certified by the dominant; integrate numerically
      if (dom->e > -1.0 || (dom->e == -1.0 && dom->c != 0.0))
        return ExtReal::divergent("tail integral diverges (dominant exponent " +
                                      std::to_string(dom->e) + ")",
                                  cuts.back(), kInf);
      tail_from = std::max({a, cuts.back(), 1.0});
      ExtReal head = integrate(g, a, tail_from);
      if (!head.finite()) return head;
      const double t =
          tanh_sinh_to_infinity([&](double x) { return g.eval(x); }, tail_from);
      return ExtReal(head.value() + t);
    } else {
      return ExtReal::divergent(
          "cannot certify an improper integral for this carrier", a, b);
    }
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [&](double c) { return c >= tail_from; }),
               cuts.end());
    cuts.push_back(tail_from);
  } else {
    cuts.push_back(b);
  }

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    total += tanh_sinh([&](double x) { return g.eval(x); }, cuts[i], cuts[i + 1]);
  }
  if (tail) {
    ExtReal t = tail->integral(tail_from, kInf);
    if (!t.finite()) return t;
    total += t.value();
  }
  return ExtReal(total);
}

}  // namespace rikit

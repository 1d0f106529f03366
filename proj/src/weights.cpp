#include "rikit/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rikit {

GridConfig GridConfig::from_env() {
  GridConfig g;
  if (const char* p = std::getenv("RIKIT_GRID_POINTS")) {
    const int n = std::atoi(p);
    if (n >= 2) g.points = n;
  }
  return g;
}

Weight::Weight(PowerPiecewise w) : w_(std::move(w)), W_(w_) {
  if (!w_.domain().is_half_line())
    throw RepresentationError("weights live on [0, inf)");
  if (!w_.check_nonnegative())
    throw RepresentationError("weight must be a.e. positive");
  for (const auto& p : w_.pieces())
    if (p.expr.is_zero())
      throw RepresentationError("weight must be a.e. positive (zero piece)");
  auto d0 = w_.dominant_zero();
  if (!d0 || d0->alpha <= -1.0)
    throw RepresentationError(
        "weight head not integrable: the leftmost exponent must exceed -1");
  auto di = w_.dominant_infinity();
  if (!di || di->alpha < -1.0)
    throw RepresentationError(
        "weight must have infinite total mass on [0, inf): tail exponent >= -1");
  W_ = w_.cumulative();
}

Weight Weight::power(double c, double beta) {
  return Weight(PowerPiecewise::power(IntervalDomain::half_line(), c, beta));
}

std::vector<double> make_probes(const std::vector<double>& breakpoints,
                                const GridConfig& grid, const IntervalDomain& dom) {
  std::vector<double> ps;
  const double end = dom.length();
  const double lo = std::max(grid.min, 1e-300);
  const double hi = std::min(grid.max, end);
  const int n = std::max(2, grid.points);
  for (int i = 0; i < n; ++i)
    ps.push_back(lo * std::pow(hi / lo, double(i) / double(n - 1)));
  for (double b : breakpoints)
    if (b > 0.0 && std::isfinite(b) && b <= end) ps.push_back(b);
  if (std::isfinite(end)) ps.push_back(end);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

ConditionReport decide_ratio_condition(const std::string& name, const RatioAnalysis& an,
                                       const GridConfig& grid, const IntervalDomain& dom) {
  ConditionReport rep;
  rep.condition = name;
  rep.grid = grid;
  if (an.divergence) {
    rep.holds = false;
    rep.divergence = an.divergence;
    rep.constant = ExtReal::divergent(an.divergence->what, an.divergence->piece_from,
                                      an.divergence->piece_to);
    return rep;
  }

  double best = -kInf;
  std::optional<double> witness;
  for (double t : make_probes(an.breakpoints, grid, dom)) {
    ExtReal r = an.ratio(t);
    if (!r.finite()) {
      rep.holds = false;
      rep.divergence = r.divergence();
      rep.constant = r;
      rep.witness_t = t;
      return rep;
    }
    if (r.value() > best) {
      best = r.value();
      witness = t;
    }
  }

  ExtReal l0 = an.limit_zero;
  ExtReal li = dom.is_half_line() ? an.limit_infinity : ExtReal(0.0);
  rep.holds = l0.finite() && li.finite();
  if (rep.holds) {
    rep.constant = ExtReal(std::max({best, l0.value(), li.value()}));
    rep.witness_t = witness;
  } else {
    const auto& bad = !l0.finite() ? l0 : li;
    rep.divergence = Divergence{std::string(!l0.finite() ? "ratio unbounded near 0: "
                                                         : "ratio unbounded near infinity: ") +
                                bad.divergence()->what};
    rep.constant = ExtReal::divergent(rep.divergence->what);
    rep.witness_t = witness;  // largest probe value observed, for replay
  }
  return rep;
}

namespace {

// Exact suffix tails T(t) = integral_t^inf of a piecewise integrand.
struct SuffixTails {
  std::optional<Divergence> divergence;
  std::vector<double> at_start;  // T(pieces[i].from), with at_start[0] possibly inf
  PLExpr outer;                  // exact T on the last piece
  const PowerPiecewise* integrand = nullptr;

  ExtReal eval(double t) const {
    const auto& ps = integrand->pieces();
    for (std::size_t i = ps.size(); i-- > 0;) {
      if (t >= ps[i].from || i == 0) {
        if (i + 1 == ps.size()) return ExtReal(outer.eval(t));
        ExtReal part = ps[i].expr.integral(t, ps[i].to);
        if (!part.finite()) return part;
        return ExtReal(at_start[i + 1] + part.value());
      }
    }
    return ExtReal(0.0);
  }
};

SuffixTails make_suffix_tails(const PowerPiecewise& integrand) {
  SuffixTails st;
  st.integrand = &integrand;
  const auto& ps = integrand.pieces();
  const PLExpr F = ps.back().expr.antiderivative();
  if (!F.limit_infinity().finite()) {
    st.divergence = Divergence{"tail integral diverges at infinity", ps.back().from, kInf};
    return st;
  }
  st.outer = F.scaled(-1.0);
  st.at_start.assign(ps.size(), 0.0);
  st.at_start.back() =
      ps.back().from > 0.0 ? st.outer.eval(ps.back().from) : kInf;  // unused if inf
  for (std::size_t i = ps.size() - 1; i-- > 0;) {
    ExtReal part = ps[i].expr.integral(ps[i].from == 0.0 ? ps[i].from + 0.0 : ps[i].from,
                                       ps[i].to);
    // the head piece may start at 0; the tail from any t > 0 is still finite,
    // so T(0) may be inf without harming probe evaluation
    double head = 0.0;
    if (i == 0 && ps[i].from == 0.0) {
      head = kInf;  // placeholder, never used directly
      st.at_start[i] = head;
      break;
    }
    if (!part.finite()) {
      st.divergence = Divergence{part.divergence()->what, ps[i].from, ps[i].to};
      return st;
    }
    st.at_start[i] = st.at_start[i + 1] + part.value();
  }
  return st;
}

// Exact expression for T(t) on the first piece: T(b1) + G(b1) - G(t).
PLExpr near_zero_tail_expr(const PowerPiecewise& integrand, const SuffixTails& st) {
  const auto& ps = integrand.pieces();
  const PLExpr G = ps.front().expr.antiderivative();
  if (ps.size() == 1) return G.scaled(-1.0);
  const double b1 = ps.front().to;
  return PLExpr::constant(st.at_start[1] + G.eval(b1)).added(G.scaled(-1.0));
}

ExtReal dominant_ratio_limit_zero(const PLExpr& num, const PLExpr& den) {
  auto dn = num.dominant_zero();
  auto dd = den.dominant_zero();
  if (!dn) return ExtReal(0.0);
  if (!dd) return ExtReal::divergent("denominator vanishes identically");
  return Dominant(*dn).div(Dominant(*dd)).limit_zero();
}

ExtReal dominant_ratio_limit_infinity(const PLExpr& num, const PLExpr& den) {
  auto dn = num.dominant_infinity();
  auto dd = den.dominant_infinity();
  if (!dn) return ExtReal(0.0);
  if (!dd) return ExtReal::divergent("denominator vanishes identically");
  return Dominant(*dn).div(Dominant(*dd)).limit_infinity();
}

std::vector<double> merged_breakpoints(std::initializer_list<const PowerPiecewise*> fs) {
  std::vector<double> bs;
  for (const auto* f : fs)
    for (double b : f->breakpoints()) bs.push_back(b);
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  return bs;
}

}  // namespace

// R(t) = A(t)^q * integral_t^inf w A^{-q} / W(t) with A(t) = t or phi(t).
static ConditionReport check_am_like(const std::string& name, const Weight& w, double q,
                                     const PowerPiecewise& A, const GridConfig& grid) {
  auto Aq = A.pow_real(q);
  auto Amq = A.pow_real(-q);
  if (!Aq || !Amq)
    throw CapabilityError(name +
                          ": phi^q leaves the power-log family "
                          "(multi-term piece with non-integer exponent)");
  const PowerPiecewise integrand = w.w().multiplied(*Amq);
  const SuffixTails st = make_suffix_tails(integrand);

  RatioAnalysis an;
  an.breakpoints = merged_breakpoints({&w.w(), &A});
  if (st.divergence) {
    an.divergence = st.divergence;
    return decide_ratio_condition(name, an, grid, w.w().domain());
  }

  const PowerPiecewise& W = w.cumulative();
  an.ratio = [&, st](double t) -> ExtReal {
    ExtReal T = st.eval(t);
    if (!T.finite()) return T;
    const double a = A.eval(t);
    const double Wt = W.eval(t);
    return ExtReal(std::pow(a, q) * T.value() / Wt);
  };

  // exact outer expressions on both ends
  const PLExpr n_inf = Aq->pieces().back().expr.multiplied(st.outer);
  const PLExpr d_inf = W.pieces().back().expr;
  an.limit_infinity = dominant_ratio_limit_infinity(n_inf, d_inf);

  const PLExpr n_zero =
      Aq->pieces().front().expr.multiplied(near_zero_tail_expr(integrand, st));
  const PLExpr d_zero = W.pieces().front().expr;
  an.limit_zero = dominant_ratio_limit_zero(n_zero, d_zero);

  return decide_ratio_condition(name, an, grid, w.w().domain());
}

ConditionReport check_am_q(const Weight& w, double q, const GridConfig& grid) {
  if (!(q > 0.0)) throw ParameterError("check_am_q: q must be positive");
  return check_am_like("amq", w, q,
                       PowerPiecewise::power(IntervalDomain::half_line(), 1.0, 1.0), grid);
}

ConditionReport check_cond22(const Weight& w, double q, const FundamentalFunction& phi,
                             const GridConfig& grid) {
  if (!(q >= 1.0)) throw ParameterError("check_cond22: q must be >= 1");
  return check_am_like("c22", w, q, phi.pp(), grid);
}

// R(t) = w(t)/t * integral_0^t dx/w(x).
ConditionReport check_a1(const Weight& w, const GridConfig& grid) {
  const int mono = w.w().monotonicity();
  if (mono != +1 && mono != 2)
    throw ParameterError("check_a1: weight must be nondecreasing");
  auto rw = w.w().reciprocal();
  if (!rw)
    throw CapabilityError("check_a1: 1/w leaves the power-log family "
                          "(pieces must be single pure-power terms)");

  RatioAnalysis an;
  an.breakpoints = w.w().breakpoints();

  // head of integral_0^t dx/w may diverge: that is a failing verdict
  const PLExpr G0 = rw->pieces().front().expr.antiderivative();
  if (!G0.limit_zero().finite()) {
    an.divergence = Divergence{"integral_0^t dx/w diverges at 0",
                               0.0, rw->pieces().front().to};
    return decide_ratio_condition("a1", an, grid, w.w().domain());
  }

  const PowerPiecewise C = rw->cumulative();
  an.ratio = [&, C](double t) -> ExtReal {
    return ExtReal(w.w().eval(t) * C.eval(t) / t);
  };

  const PLTerm inv_t{1.0, -1.0, 0};
  an.limit_infinity = dominant_ratio_limit_infinity(
      w.w().pieces().back().expr.multiplied(C.pieces().back().expr).mul_term(inv_t),
      PLExpr::constant(1.0));
  an.limit_zero = dominant_ratio_limit_zero(
      w.w().pieces().front().expr.multiplied(C.pieces().front().expr).mul_term(inv_t),
      PLExpr::constant(1.0));
  return decide_ratio_condition("a1", an, grid, w.w().domain());
}

// R(t) = w(t)/phi(t) * integral_0^t phi'(x)/w(x) dx.
ConditionReport check_cond23(const Weight& w, const FundamentalFunction& phi,
                             const GridConfig& grid) {
  const int mono = w.w().monotonicity();
  if (mono != +1 && mono != 2)
    throw ParameterError("check_cond23: weight must be nondecreasing");
  auto rw = w.w().reciprocal();
  if (!rw)
    throw CapabilityError("check_cond23: 1/w leaves the power-log family");
  const PowerPiecewise integrand = phi.pp().derivative().multiplied(*rw);

  RatioAnalysis an;
  an.breakpoints = merged_breakpoints({&w.w(), &phi.pp()});

  const PLExpr G0 = integrand.pieces().front().expr.antiderivative();
  if (!G0.limit_zero().finite()) {
    an.divergence = Divergence{"integral_0^t d(phi)/w diverges at 0",
                               0.0, integrand.pieces().front().to};
    return decide_ratio_condition("c23", an, grid, w.w().domain());
  }

  const PowerPiecewise C = integrand.cumulative();
  an.ratio = [&, C](double t) -> ExtReal {
    return ExtReal(C.eval(t) * w.w().eval(t) / phi.eval(t));
  };
  an.limit_infinity = dominant_ratio_limit_infinity(
      C.pieces().back().expr.multiplied(w.w().pieces().back().expr),
      phi.pp().pieces().back().expr);
  an.limit_zero = dominant_ratio_limit_zero(
      C.pieces().front().expr.multiplied(w.w().pieces().front().expr),
      phi.pp().pieces().front().expr);
  return decide_ratio_condition("c23", an, grid, w.w().domain());
}

}  // namespace rikit

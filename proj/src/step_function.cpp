#include "rikit/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rikit {

StepFunction::StepFunction(IntervalDomain dom, std::vector<double> breaks,
                           std::vector<double> values)
    : dom_(dom), breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size())
    throw RepresentationError("StepFunction: need n+1 breakpoints for n >= 1 pieces");
  if (breaks_.front() != 0.0)
    throw RepresentationError("StepFunction: breakpoints must start at 0");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1]))
      throw RepresentationError("StepFunction: breakpoints must be strictly increasing");
  }
  for (double v : values_)
    if (!std::isfinite(v)) throw RepresentationError("StepFunction: non-finite value");
  if (std::isinf(breaks_.back()) && !dom_.is_half_line())
    throw RepresentationError("StepFunction: infinite breakpoint on a finite domain");
  if (breaks_.back() > dom_.length())
    throw RepresentationError("StepFunction: breakpoints exceed the domain");
  canonicalize();
}

void StepFunction::canonicalize() {
  // extend to the domain end by zero
  const double end = dom_.length();
  if (breaks_.back() < end) {
    breaks_.push_back(end);
    values_.push_back(0.0);
  }
  if (std::isinf(breaks_.back()) && values_.back() != 0.0)
    throw RepresentationError(
        "StepFunction: a piece of infinite measure must carry value 0");
  // merge adjacent equal values
  std::vector<double> nb{breaks_.front()};
  std::vector<double> nv;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!nv.empty() && nv.back() == values_[i]) {
      nb.back() = breaks_[i + 1];
    } else {
      nv.push_back(values_[i]);
      nb.push_back(breaks_[i + 1]);
    }
  }
  breaks_ = std::move(nb);
  values_ = std::move(nv);
}

StepFunction StepFunction::zero(IntervalDomain dom) {
  return StepFunction(dom, {0.0, dom.length()}, {0.0});
}

StepFunction StepFunction::indicator(IntervalDomain dom, double b, double value) {
  if (!(b > 0.0) || b > dom.length())
    throw ParameterError("indicator: endpoint outside the domain");
  if (b == dom.length()) return StepFunction(dom, {0.0, b}, {value});
  return StepFunction(dom, {0.0, b, dom.length()}, {value, 0.0});
}

double StepFunction::eval(double x) const {
  if (x < 0.0 || x > dom_.length()) return 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t i = (it == breaks_.begin()) ? 0 : std::size_t(it - breaks_.begin()) - 1;
  if (i >= values_.size()) i = values_.size() - 1;  // right endpoint of finite domain
  return values_[i];
}

bool StepFunction::is_zero() const {
  return values_.size() == 1 && values_[0] == 0.0;
}

bool StepFunction::is_nonincreasing() const {
  for (std::size_t i = 0; i + 1 < values_.size(); ++i)
    if (values_[i] < values_[i + 1]) return false;
  return true;
}

bool StepFunction::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double StepFunction::measure_above(double lambda) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (std::fabs(values_[i]) > lambda) m += breaks_[i + 1] - breaks_[i];
  return m;
}

double StepFunction::support_end() const {
  for (std::size_t i = values_.size(); i-- > 0;)
    if (values_[i] != 0.0) return breaks_[i + 1];
  return 0.0;
}

ExtReal StepFunction::integral(double a, double b) const {
  if (!(a >= 0.0) || !(b > a)) throw ParameterError("StepFunction::integral: 0 <= a < b");
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double lo = std::max(a, breaks_[i]);
    const double hi = std::min(b, breaks_[i + 1]);
    if (hi <= lo) continue;
    if (std::isinf(hi)) {
      if (values_[i] != 0.0)
        return ExtReal::divergent("step integral over infinite piece", lo, hi);
      continue;
    }
    s += values_[i] * (hi - lo);
  }
  return ExtReal(s);
}

ExtReal StepFunction::abs_integral(double a, double b) const { return abs().integral(a, b); }

StepFunction StepFunction::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return StepFunction(dom_, breaks_, std::move(v));
}

StepFunction StepFunction::abs() const {
  std::vector<double> v = values_;
  for (double& x : v) x = std::fabs(x);
  return StepFunction(dom_, breaks_, std::move(v));
}

StepFunction StepFunction::abs_pow(double p) const {
  std::vector<double> v = values_;
  for (double& x : v) x = std::pow(std::fabs(x), p);
  return StepFunction(dom_, breaks_, std::move(v));
}

StepFunction StepFunction::restricted(double t) const {
  if (!(t > 0.0)) return zero(dom_);
  std::vector<double> nb{0.0};
  std::vector<double> nv;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (breaks_[i] >= t) break;
    nb.push_back(std::min(breaks_[i + 1], t));
    nv.push_back(values_[i]);
  }
  return StepFunction(dom_, std::move(nb), std::move(nv));
}

StepFunction StepFunction::dilated(double s) const {
  if (!(s > 0.0)) throw ParameterError("dilate: scale must be positive");
  std::vector<double> nb{0.0};
  std::vector<double> nv;
  const double end = dom_.length();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double hi = std::isinf(breaks_[i + 1]) ? kInf : breaks_[i + 1] * s;
    if (nb.back() >= end) break;
    nb.push_back(std::min(hi, end));
    nv.push_back(values_[i]);
    if (hi >= end) break;
  }
  return StepFunction(dom_, std::move(nb), std::move(nv));
}

StepFunction rearrange(const StepFunction& f) {
  struct Piece {
    double v, len;
  };
  std::vector<Piece> ps;
  const auto& b = f.breaks();
  const auto& v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double av = std::fabs(v[i]);
    if (av == 0.0) continue;
    const double len = b[i + 1] - b[i];
    if (std::isinf(len))
      throw RepresentationError("rearrange: nonzero value on a piece of infinite measure");
    ps.push_back({av, len});
  }
  std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& c) { return a.v > c.v; });
  std::vector<double> nb{0.0};
  std::vector<double> nv;
  for (const auto& p : ps) {
    nb.push_back(nb.back() + p.len);
    nv.push_back(p.v);
  }
  const double end = f.domain().length();
  if (nb.back() < end) {
    nb.push_back(end);
    nv.push_back(0.0);
  }
  if (nv.empty()) return StepFunction::zero(f.domain());
  return StepFunction(f.domain(), std::move(nb), std::move(nv));
}

std::pair<StepFunction, StepFunction> truncate(const StepFunction& f, double s) {
  if (!(s >= 0.0)) throw ParameterError("truncate: level must be nonnegative");
  std::vector<double> lo = f.values(), hi = f.values();
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double clipped = std::clamp(f.values()[i], -s, s);
    lo[i] = clipped;
    hi[i] = f.values()[i] - clipped;
  }
  return {StepFunction(f.domain(), f.breaks(), std::move(lo)),
          StepFunction(f.domain(), f.breaks(), std::move(hi))};
}

}  // namespace rikit

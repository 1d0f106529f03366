#ifndef RIKIT_DOMAIN_HPP
#define RIKIT_DOMAIN_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace rikit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Malformed carrier (unsorted breakpoints, bad partition, invalid weight...).
class RepresentationError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Valid input that the requested engine cannot handle with its carriers.
class CapabilityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Out-of-range argument.
class ParameterError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A couple fails the structural hypotheses a test requires.
class HypothesisError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The interval I = [0, l] or [0, inf).
class IntervalDomain {
  double length_;
  explicit IntervalDomain(double l) : length_(l) {}

public:
  static IntervalDomain finite(double l) {
    if (!(l > 0.0) || !std::isfinite(l))
      throw ParameterError("finite domain requires 0 < length < inf");
    return IntervalDomain(l);
  }
  static IntervalDomain half_line() { return IntervalDomain(kInf); }

  bool is_half_line() const { return std::isinf(length_); }
  double length() const { return length_; }
  bool contains(double x) const { return x >= 0.0 && x <= length_; }

  bool operator==(const IntervalDomain& o) const { return length_ == o.length_; }
  bool operator!=(const IntervalDomain& o) const { return !(*this == o); }
};

// Record of why a quantity is infinite: the offending piece and a reason.
struct Divergence {
  std::string what;
  double piece_from = kNaN;
  double piece_to = kNaN;
};

// Extended real for integrals, norms and condition constants. A divergent
// value is a first-class outcome carrying its record; it is never conflated
// with a float overflow.
class ExtReal {
  double v_ = 0.0;
  std::optional<Divergence> div_;

public:
  ExtReal() = default;
  ExtReal(double v) : v_(v) {
    if (!std::isfinite(v))
      div_ = Divergence{"non-finite value produced by arithmetic (overflow)"};
  }

  static ExtReal divergent(std::string what, double from = kNaN, double to = kNaN) {
    ExtReal r;
    r.div_ = Divergence{std::move(what), from, to};
    r.v_ = kInf;
    return r;
  }

  bool finite() const { return !div_.has_value(); }
  double value() const {
    if (!finite()) throw std::logic_error("ExtReal: value() on divergent result");
    return v_;
  }
  // inf stand-in for comparisons and report fields.
  double value_or_inf() const { return finite() ? v_ : kInf; }
  const std::optional<Divergence>& divergence() const { return div_; }

  ExtReal operator+(const ExtReal& o) const {
    if (!finite()) return *this;
    if (!o.finite()) return o;
    return ExtReal(v_ + o.v_);
  }
  ExtReal operator-(const ExtReal& o) const {
    if (!finite()) return *this;
    if (!o.finite()) return divergent(o.div_->what, o.div_->piece_from, o.div_->piece_to);
    return ExtReal(v_ - o.v_);
  }
  ExtReal scaled(double c) const {
    if (!finite()) return *this;
    return ExtReal(v_ * c);
  }
};

inline ExtReal max(const ExtReal& a, const ExtReal& b) {
  if (!a.finite()) return a;
  if (!b.finite()) return b;
  return ExtReal(std::max(a.value(), b.value()));
}

}  // namespace rikit

#endif  // RIKIT_DOMAIN_HPP

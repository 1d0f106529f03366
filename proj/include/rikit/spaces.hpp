#ifndef RIKIT_SPACES_HPP
#define RIKIT_SPACES_HPP

#include <memory>
#include <string>

#include "rikit/evaluable.hpp"
#include "rikit/fundamental.hpp"
#include "rikit/orlicz_function.hpp"
#include "rikit/weights.hpp"

namespace rikit {

// Symbolic description of an r.i. (quasi-)space with its norm semantics.
// L^{p,q} uses the normalized form ((q/p) integral (t^{1/p} f*)^q dt/t)^{1/q}
// so that the indicator of [0,t] has norm exactly t^{1/p}.
class SpaceDescriptor {
public:
  enum class Kind { Lp, LorentzPQ, ClassicalLambda, LambdaOf, MOf, MStarOf, LorentzOrlicz };

  static SpaceDescriptor lp(double p, IntervalDomain dom = IntervalDomain::half_line(),
                            bool quasi = false);
  static SpaceDescriptor lorentz_pq(double p, double q,
                                    IntervalDomain dom = IntervalDomain::half_line(),
                                    bool quasi = false);
  static SpaceDescriptor classical_lambda(Weight w, double q,
                                          IntervalDomain dom = IntervalDomain::half_line());
  static SpaceDescriptor lambda_of(FundamentalFunction phi);
  static SpaceDescriptor m_of(FundamentalFunction phi);
  static SpaceDescriptor mstar_of(FundamentalFunction phi);
  static SpaceDescriptor lorentz_orlicz(Weight w, OrliczFunction phi,
                                        IntervalDomain dom = IntervalDomain::half_line());

  Kind kind() const { return kind_; }
  const IntervalDomain& domain() const { return dom_; }
  double p() const { return p_; }
  double q() const { return q_; }
  const Weight& weight() const;
  const FundamentalFunction& phi() const;
  const OrliczFunction& orlicz() const;
  // for ClassicalLambda: the (AM_q) / (A_1) verdict computed on construction
  bool banach_flag() const { return banach_flag_; }
  bool quasi() const { return quasi_; }
  std::string label() const;

private:
  Kind kind_ = Kind::Lp;
  IntervalDomain dom_ = IntervalDomain::half_line();
  double p_ = 1.0, q_ = 1.0;
  bool quasi_ = false;
  bool banach_flag_ = true;
  std::shared_ptr<const Weight> w_;
  std::shared_ptr<const FundamentalFunction> phi_;
  std::shared_ptr<const OrliczFunction> orlicz_;
};

// True fundamental function t -> ||chi_[0,t]||_X in closed form.
FundamentalFunction fundamental_function(const SpaceDescriptor& X);

// The (quasi-)norm. Step functions are rearranged internally where the norm
// needs f*; any other carrier must be nonincreasing (declared flag or
// assume_nonincreasing). Divergence is returned, never a large float.
ExtReal norm(const SpaceDescriptor& X, const Evaluable& f, bool assume_nonincreasing = false);

// t -> ||g chi_[0,t]||_X as a structured profile: exact cumulative-power or
// running-sup carriers where the space and g allow, generic otherwise.
struct IndicatorProfile {
  std::optional<PowerPiecewise> cum;  // value = cum(t)^{1/qexp}
  double qexp = 1.0;
  std::optional<PowerPiecewise> sup;  // value = sup(t), a running sup
  std::function<ExtReal(double)> fn;  // fallback
  std::optional<Divergence> divergence;
  std::optional<Dominant> dom_zero, dom_infinity;  // of the profile value

  ExtReal value(double t) const;
};

IndicatorProfile indicator_profile(const SpaceDescriptor& X, const Evaluable& g);

// A couple (A0, A1) with the comparability flags of its fundamental
// functions and the 1/phi_{A1} membership flag, computed on construction.
struct CoupleDescriptor {
  SpaceDescriptor A0, A1;
  bool phi0_le_phi1 = false;
  bool phi1_le_phi0 = false;
  double comp_sup_01 = kInf;  // sup phi0/phi1
  double comp_sup_10 = kInf;  // sup phi1/phi0
  bool inv_phi1_in_A1 = false;
  ExtReal inv_phi1_norm;

  static CoupleDescriptor make(SpaceDescriptor A0, SpaceDescriptor A1,
                               const GridConfig& grid = {});
};

// Marcinkiewicz-equality battery for a fundamental function.
// (d): sup_t phi(t)/t * integral_0^t ds/phi(s), analytic;
// (c): 1/phi in M(phi) through the norm engine, analytic;
// (e)/(b): sampled two-sided comparison of the M and M* norms over random
// nonincreasing step functions (empirical, labelled as such).
ConditionReport lemma2_check(const FundamentalFunction& phi, char which,
                             const GridConfig& grid = {}, unsigned seed = 1234,
                             int samples = 200);

// phi_X(t) * phi_X'(t) == t on probes, for concrete known pairs.
ConditionReport validate_phi_pair(const FundamentalFunction& phiX,
                                  const FundamentalFunction& phiXprime,
                                  const GridConfig& grid = {});

// w(t)/phi_X(t) * || chi_[0,t]/w ||_X <= C, w nondecreasing.
ConditionReport check_cond24(const Weight& w, const SpaceDescriptor& space,
                             const GridConfig& grid = {});

}  // namespace rikit

#endif  // RIKIT_SPACES_HPP

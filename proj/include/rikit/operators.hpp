#ifndef RIKIT_OPERATORS_HPP
#define RIKIT_OPERATORS_HPP

#include <optional>
#include <string>

#include "rikit/rng.hpp"
#include "rikit/spaces.hpp"

namespace rikit {

// K(t, f; X, L^inf) restricted to truncation splittings f = f^(s) + f_(s),
// minimized over s in the value set of |f| plus 0. The truncation infimum is
// within a factor 2 of the true K-functional.
struct KFunctionalResult {
  double value = 0.0;
  double optimal_s = 0.0;
  double t = 0.0;
  std::string method = "truncation-K";
};

struct MembershipWitness {
  std::string family;  // "indicator" or "inv_w_indicator"
  double param = 0.0;  // the truncation scale s
  double ratio = 0.0;
};

struct BoundednessReport {
  std::string operator_id;
  std::string source, target;
  int sample_size = 0;
  double sampled_sup = 0.0;
  std::optional<double> certified_constant;
  std::string condition_name;  // characterizing weight condition, if any
  bool condition_verdict = false;
  std::string verdict;  // "bounded_on_sample" | "counterexample"
  std::optional<MembershipWitness> witness;
  bool m_premise_ok = true;
  std::string notes;
};

struct BoydEstimate {
  double index = 0.0;
  bool heuristic = true;  // sampled sup from below, fitted slope
  int family_size = 0;
};

// Averaged integral (1/t) integral_0^t f; for nonincreasing f this is the
// Hardy transform f**. Exact pieces A + B/t for step input.
PowerPiecewise hardy(const Evaluable& f);

// (1/phi(t)) integral_0^t f dphi, exact ratio carrier; nonincreasing for
// nonincreasing f.
Evaluable q_lambda(const FundamentalFunction& phi, const Evaluable& f);

// t -> ||f chi_[0,t]||_{A0} / phi(t) for a couple with target fundamental
// function phi.
Evaluable q_couple(const SpaceDescriptor& A0, const FundamentalFunction& phi,
                   const Evaluable& f);

// q_couple specialized to the couple (X, M*(X)).
Evaluable q_x(const SpaceDescriptor& X, const Evaluable& f);

// n-th iterate closed form (integral_0^1 f^p(tx) log^n(1/x)/n! dx)^{1/p},
// evaluated exactly on the step carrier; n = 0 is the identity.
double q_p_iterate_at(double p, int n, const StepFunction& f, double t);
Evaluable q_p_iterate(double p, int n, const StepFunction& f);

// Geometric sum of iterates: closed form (integral_0^1 f(tx)^p x^{-eps})^{1/p}
// as an exact carrier, plus the truncated-series evaluator.
Evaluable s_operator(double p, double eps, const StepFunction& f);
double s_operator_series_at(double p, double eps, const StepFunction& f, double t, int N);

KFunctionalResult k_functional(const SpaceDescriptor& X, double t, const StepFunction& f);

// Fitted slope of log h(s) / log s for the dilation-norm estimates
// h(s) = sup_f ||f(./s)|| / ||f|| over a sampled family, s = 2, 4, ..., 2^10.
BoydEstimate boyd_upper_index(const SpaceDescriptor& X, unsigned seed = 2024,
                              int family_size = 24);

// Samples the couple operator Q on nonincreasing step functions and reports
// the norm-ratio supremum X0 -> X1, the characterizing weight-condition
// verdict when the candidate is a classical Lorentz space, and a replayable
// counterexample from the indicator families when the condition fails.
BoundednessReport test_membership(const CoupleDescriptor& couple,
                                  const SpaceDescriptor& X0, const SpaceDescriptor& X1,
                                  int family_size, unsigned seed,
                                  const GridConfig& grid = {},
                                  double counterexample_threshold = 1e3);

}  // namespace rikit

#endif  // RIKIT_OPERATORS_HPP

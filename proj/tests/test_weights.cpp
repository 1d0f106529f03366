#include <cmath>

#include "doctest.h"
#include "rikit/rng.hpp"
#include "rikit/spaces.hpp"
#include "rikit/weights.hpp"

using namespace rikit;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

Weight spliced_weight(double beta0, double beta1, double knee) {
  // continuous splice c0 x^{beta0} on [0,knee), c1 x^{beta1} beyond
  const double c0 = 1.0;
  const double c1 = c0 * std::pow(knee, beta0 - beta1);
  return Weight(PowerPiecewise(
      IntervalDomain::half_line(),
      {{0.0, knee, PLExpr::monomial(c0, beta0)}, {knee, kInf, PLExpr::monomial(c1, beta1)}}));
}

}  // namespace

TEST_SUITE_BEGIN("weights");

TEST_CASE("am_q on pure powers matches the closed form") {
  // constant weight, q = 2: holds with constant (0+1)/(2-0-1) = 1
  auto r = check_am_q(Weight::power(1.0, 0.0), 2.0);
  CHECK(r.holds);
  CHECK(rel_err(r.constant.value(), 1.0) < 1e-9);

  // w = x, q = 1: the tail integral diverges
  auto r2 = check_am_q(Weight::power(1.0, 1.0), 1.0);
  CHECK(!r2.holds);
  CHECK(r2.divergence.has_value());

  // w = x^{-1/2}, q = 1: constant (1/2)/(1 - 1/2) = 1
  auto r3 = check_am_q(Weight::power(1.0, -0.5), 1.0);
  CHECK(r3.holds);
  CHECK(rel_err(r3.constant.value(), 1.0) < 1e-9);
}

TEST_CASE("am_q random power oracle") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const double beta = rng.uniform(-0.95, 3.0);
    const double c = rng.log_uniform(0.1, 10.0);
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
      auto rep = check_am_q(Weight::power(c, beta), q);
      const bool want = beta + 1.0 < q;
      CHECK(rep.holds == want);
      if (want) {
        const double expect = (beta + 1.0) / (q - beta - 1.0);
        CHECK(rel_err(rep.constant.value(), expect) < 1e-6);
      }
    }
  }
}

TEST_CASE("am_q on spliced weights decided analytically") {
  // tail exponent 1.2 with q=2: beta+1 = 2.2 >= 2 fails even though the head
  // piece is harmless
  auto bad = check_am_q(spliced_weight(0.0, 1.2, 1.0), 2.0);
  CHECK(!bad.holds);

  // head exponent 1.2 fails at the 0 end even though the tail is fine:
  // T(t) stays bounded while W(t) ~ t^{2.2}
  auto head_bad = check_am_q(spliced_weight(1.2, 0.5, 1.0), 2.0);
  CHECK(!head_bad.holds);

  // both exponents below q-1 hold
  auto good = check_am_q(spliced_weight(0.8, 0.5, 1.0), 2.0);
  CHECK(good.holds);
  // the sup must dominate both asymptotic regimes
  CHECK(good.constant.value() >= (0.5 + 1.0) / (2.0 - 0.5 - 1.0) - 1e-9);
  CHECK(good.constant.value() >= (0.8 + 1.0) / (2.0 - 0.8 - 1.0) - 1e-9);
}

TEST_CASE("a1 closed forms") {
  // w = x^alpha, 0 <= alpha < 1: constant 1/(1-alpha)
  for (double a : {0.0, 0.3, 0.7}) {
    auto rep = check_a1(Weight::power(2.0, a));
    CHECK(rep.holds);
    CHECK(rel_err(rep.constant.value(), 1.0 / (1.0 - a)) < 1e-9);
  }
  // w = x fails: integral of 1/x diverges at 0
  auto bad = check_a1(Weight::power(1.0, 1.0));
  CHECK(!bad.holds);
  CHECK(bad.divergence.has_value());
  // decreasing weight is a precondition error
  CHECK_THROWS_AS(check_a1(Weight::power(1.0, -0.5)), ParameterError);
}

TEST_CASE("cond22 closed forms") {
  const auto dom = IntervalDomain::half_line();
  // phi = t^{1/p}: holds iff beta+1 < q/p with constant (beta+1)/(q/p-beta-1)
  for (double p : {1.5, 2.0, 4.0}) {
    FundamentalFunction phi = FundamentalFunction::power(dom, 1.0, 1.0 / p);
    for (double beta : {-0.5, 0.0, 0.4, 1.0}) {
      for (double q : {1.0, 2.0, 3.0}) {
        auto rep = check_cond22(Weight::power(1.0, beta), q, phi);
        const bool want = beta + 1.0 < q / p;
        CHECK(rep.holds == want);
        if (want)
          CHECK(rel_err(rep.constant.value(), (beta + 1.0) / (q / p - beta - 1.0)) < 1e-6);
      }
    }
  }
  // phi = t reduces (2.2) to (AM_q)
  FundamentalFunction ident = FundamentalFunction::power(dom, 1.0, 1.0);
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const double beta = rng.uniform(-0.9, 2.5);
    const double q = rng.uniform(1.0, 4.0);
    Weight w = Weight::power(rng.log_uniform(0.2, 5.0), beta);
    auto a = check_cond22(w, q, ident);
    auto b = check_am_q(w, q);
    CHECK(a.holds == b.holds);
    if (a.holds) CHECK(rel_err(a.constant.value(), b.constant.value()) < 1e-9);
  }
}

TEST_CASE("cond22 verdicts are monotone in q") {
  const auto dom = IntervalDomain::half_line();
  FundamentalFunction phi = FundamentalFunction::power(dom, 1.0, 0.5);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const double beta = rng.uniform(-0.9, 2.0);
    const double q = rng.uniform(1.0, 4.0);
    const double q2 = q + rng.uniform(0.1, 2.0);
    Weight w = Weight::power(1.0, beta);
    if (check_cond22(w, q, phi).holds) CHECK(check_cond22(w, q2, phi).holds);
  }
}

TEST_CASE("cond23 examples") {
  const auto dom = IntervalDomain::half_line();
  // phi = t^{1/p}, w = t^{1/p}: log divergence
  FundamentalFunction phi2 = FundamentalFunction::power(dom, 1.0, 0.5);
  auto bad = check_cond23(Weight::power(1.0, 0.5), phi2);
  CHECK(!bad.holds);
  CHECK(bad.divergence.has_value());

  // phi = t^{1/2}, w = 1: integral_0^t dphi = phi(t), constant 1
  auto one = check_cond23(Weight::power(1.0, 0.0), phi2);
  CHECK(one.holds);
  CHECK(rel_err(one.constant.value(), 1.0) < 1e-9);

  // phi = t, w = t^{1/2}: ratio 2 t^{1/2} / t^{1/2} = 2
  FundamentalFunction ident = FundamentalFunction::power(dom, 1.0, 1.0);
  auto two = check_cond23(Weight::power(1.0, 0.5), ident);
  CHECK(two.holds);
  CHECK(rel_err(two.constant.value(), 2.0) < 1e-9);
}

TEST_CASE("cond24 examples") {
  const auto dom = IntervalDomain::half_line();
  // X = M*(phi), phi = w = t^{1/p}: constant 1
  FundamentalFunction phi = FundamentalFunction::power(dom, 1.0, 0.5);
  auto mstar = SpaceDescriptor::mstar_of(phi);
  auto r1 = check_cond24(Weight::power(1.0, 0.5), mstar);
  CHECK(r1.holds);
  CHECK(rel_err(r1.constant.value(), 1.0) < 1e-9);

  // X = L^p with w = t^{1/p}: || x^{-1/p} chi ||_p diverges
  auto lp = SpaceDescriptor::lp(2.0);
  auto r2 = check_cond24(Weight::power(1.0, 0.5), lp);
  CHECK(!r2.holds);
  CHECK(r2.divergence.has_value());

  // X = L^2 on [0,1], w = 1: ratio identically 1
  auto l2 = SpaceDescriptor::lp(2.0, IntervalDomain::finite(1.0));
  auto r3 = check_cond24(Weight::power(1.0, 0.0), l2);
  CHECK(r3.holds);
  CHECK(rel_err(r3.constant.value(), 1.0) < 1e-9);
}

TEST_CASE("failing reports carry witness or divergence") {
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    const double beta = rng.uniform(-0.9, 3.0);
    const double q = rng.uniform(1.0, 3.0);
    auto rep = check_am_q(Weight::power(1.0, beta), q);
    if (!rep.holds) CHECK((rep.witness_t.has_value() || rep.divergence.has_value()));
  }
}

TEST_SUITE_END();

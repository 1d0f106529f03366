#include <cmath>

#include "doctest.h"
#include "rikit/rng.hpp"
#include "rikit/spaces.hpp"

using namespace rikit;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

const IntervalDomain half = IntervalDomain::half_line();

}  // namespace

TEST_SUITE_BEGIN("spaces");

TEST_CASE("fundamental functions") {
  CHECK(rel_err(fundamental_function(SpaceDescriptor::lp(2.0)).eval(4.0), 2.0) < 1e-12);
  CHECK(rel_err(fundamental_function(SpaceDescriptor::lorentz_pq(2.0, 1.0)).eval(9.0), 3.0) <
        1e-12);
  // Lambda(w=1, q=1): W(t) = t
  auto lam = SpaceDescriptor::classical_lambda(Weight::power(1.0, 0.0), 1.0);
  CHECK(rel_err(fundamental_function(lam).eval(0.7), 0.7) < 1e-12);
  // M*(phi) keeps phi
  auto phi = FundamentalFunction::power(half, 1.0, 0.5);
  CHECK(rel_err(fundamental_function(SpaceDescriptor::mstar_of(phi)).eval(2.0),
                std::sqrt(2.0)) < 1e-12);
  // and the indicator norm really equals it for the normalized L^{p,q}
  for (double q : {1.0, 2.0, 3.0}) {
    auto X = SpaceDescriptor::lorentz_pq(2.0, q);
    auto ind = Evaluable(StepFunction::indicator(half, 5.0));
    CHECK(rel_err(norm(X, ind).value(), std::sqrt(5.0)) < 1e-9);
  }
}

TEST_CASE("norm closed forms") {
  auto ind = Evaluable(StepFunction::indicator(half, 1.0));
  // || chi_[0,a] ||_{Lambda(phi)} = phi(a)
  auto phi = FundamentalFunction::power(half, 1.0, 0.5);
  auto lam_phi = SpaceDescriptor::lambda_of(phi);
  auto a_ind = Evaluable(StepFunction::indicator(half, 4.0));
  CHECK(rel_err(norm(lam_phi, a_ind).value(), 2.0) < 1e-12);

  // M(phi) of chi_[0,1] with phi = t^{1/2}: sup t^{1/2} min(1, 1/t) = 1
  auto m_phi = SpaceDescriptor::m_of(phi);
  CHECK(rel_err(norm(m_phi, ind).value(), 1.0) < 1e-10);

  // || chi_[0,1] ||_{Lambda(w=1,q=2)} = 1
  auto cl = SpaceDescriptor::classical_lambda(Weight::power(1.0, 0.0), 2.0);
  CHECK(rel_err(norm(cl, ind).value(), 1.0) < 1e-12);

  // L^p of a two-step function
  StepFunction f(half, {0.0, 1.0, 3.0, kInf}, {2.0, 1.0, 0.0});
  CHECK(rel_err(norm(SpaceDescriptor::lp(2.0), Evaluable(f)).value(), std::sqrt(6.0)) <
        1e-12);

  // Luxemburg with phi = t^q, w = 1 equals the L^q norm
  auto lo = SpaceDescriptor::lorentz_orlicz(Weight::power(1.0, 0.0),
                                            OrliczFunction::power(2.0));
  CHECK(rel_err(norm(lo, Evaluable(f)).value(), std::sqrt(6.0)) < 1e-8);

  // divergence is reported, not overflowed
  auto decay = Evaluable(PowerPiecewise::power(half, 1.0, -0.75));
  CHECK(!norm(SpaceDescriptor::lp(2.0), decay, true).finite());
}

TEST_CASE("rearrangement invariance and lattice for random steps") {
  Rng rng(99);
  auto phi = FundamentalFunction::power(half, 1.0, 0.5);
  std::vector<SpaceDescriptor> spaces = {
      SpaceDescriptor::lp(1.5),
      SpaceDescriptor::lorentz_pq(2.0, 1.0),
      SpaceDescriptor::classical_lambda(Weight::power(1.0, -0.25), 2.0),
      SpaceDescriptor::lambda_of(phi),
      SpaceDescriptor::m_of(phi),
      SpaceDescriptor::mstar_of(phi),
      SpaceDescriptor::lorentz_orlicz(Weight::power(1.0, 0.0),
                                      OrliczFunction::power(2.0)),
  };
  for (int i = 0; i < 40; ++i) {
    StepFunction f = random_signed_step(rng, 12);
    StepFunction fs = rearrange(f);
    for (const auto& X : spaces) {
      ExtReal a = norm(X, Evaluable(f));
      ExtReal b = norm(X, Evaluable(fs));
      REQUIRE(a.finite());
      REQUIRE(b.finite());
      CHECK(rel_err(a.value(), b.value()) < 1e-9);
    }
    // lattice: |g| <= |f| pointwise implies norm(g) <= norm(f)
    std::vector<double> shrunk = f.values();
    for (double& v : shrunk) v *= rng.uniform();
    StepFunction g(f.domain(), f.breaks(), shrunk);
    for (const auto& X : spaces) {
      CHECK(norm(X, Evaluable(g)).value() <=
            norm(X, Evaluable(f)).value() * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("embedding chain Lambda -> M -> M* on nonincreasing steps") {
  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    const double a = rng.uniform(0.2, 0.9);
    auto phi = FundamentalFunction::power(half, 1.0, a);
    auto L = SpaceDescriptor::lambda_of(phi);
    auto M = SpaceDescriptor::m_of(phi);
    auto Ms = SpaceDescriptor::mstar_of(phi);
    StepFunction f = random_nonincreasing_step(rng);
    const double nl = norm(L, Evaluable(f)).value();
    const double nm = norm(M, Evaluable(f)).value();
    const double ns = norm(Ms, Evaluable(f)).value();
    CHECK(nm <= nl * (1.0 + 1e-9));
    CHECK(ns <= nm * (1.0 + 1e-9));
  }
}

TEST_CASE("lemma2 battery") {
  // (d) for phi = t^{1/p}: constant p' = p/(p-1)
  for (double p : {1.5, 2.0, 3.0}) {
    auto phi = FundamentalFunction::power(half, 1.0, 1.0 / p);
    auto rep = lemma2_check(phi, 'd');
    CHECK(rep.holds);
    CHECK(rel_err(rep.constant.value(), p / (p - 1.0)) < 1e-6);
    // (c) computes the same quantity through the norm engine
    auto repc = lemma2_check(phi, 'c');
    CHECK(repc.holds);
    CHECK(rel_err(repc.constant.value(), p / (p - 1.0)) < 1e-6);
  }
  // phi = t fails with a divergence record
  auto ident = FundamentalFunction::power(half, 1.0, 1.0);
  auto bad = lemma2_check(ident, 'd');
  CHECK(!bad.holds);
  CHECK(bad.divergence.has_value());
  CHECK(!lemma2_check(ident, 'c').holds);

  // sampled (e): for phi = t^{1/2} the worst M/M* ratio stays below p' = 2
  auto phi2 = FundamentalFunction::power(half, 1.0, 0.5);
  auto repe = lemma2_check(phi2, 'e', GridConfig{}, 4321, 200);
  CHECK(repe.holds);
  CHECK(repe.constant.value() <= 2.0 + 1e-9);
  CHECK(repe.constant.value() >= 1.0);
}

TEST_CASE("validate_phi_pair") {
  auto a = FundamentalFunction::power(half, 1.0, 1.0 / 3.0);
  auto b = FundamentalFunction::power(half, 1.0, 2.0 / 3.0);
  CHECK(validate_phi_pair(a, b).holds);
  auto c = FundamentalFunction::power(half, 1.0, 0.5);
  CHECK(validate_phi_pair(c, c).holds);
  auto d = FundamentalFunction::power(half, 1.0, 1.0 / 3.0);
  auto rep = validate_phi_pair(c, d);
  CHECK(!rep.holds);
  CHECK(rep.witness_t.has_value());
}

TEST_CASE("couple flags") {
  auto phi = FundamentalFunction::power(half, 1.0, 0.5);
  auto couple = CoupleDescriptor::make(SpaceDescriptor::lambda_of(phi),
                                       SpaceDescriptor::mstar_of(phi));
  CHECK(couple.phi0_le_phi1);
  CHECK(couple.phi1_le_phi0);
  CHECK(couple.inv_phi1_in_A1);
  CHECK(rel_err(couple.inv_phi1_norm.value(), 1.0) < 1e-9);

  // (L^2, L^2): 1/phi is not in L^2
  auto l2 = CoupleDescriptor::make(SpaceDescriptor::lp(2.0), SpaceDescriptor::lp(2.0));
  CHECK(!l2.inv_phi1_in_A1);
}

TEST_CASE("quasi-concavity validation rejects convex phi") {
  CHECK_THROWS_AS(FundamentalFunction::power(half, 1.0, 2.0), RepresentationError);
  CHECK_THROWS_AS(FundamentalFunction::power(half, 1.0, -0.5), RepresentationError);
}

TEST_SUITE_END();

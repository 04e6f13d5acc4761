#include "fixtures.hpp"
#include "polaron/error.hpp"

#include <doctest.h>

#include <algorithm>

using namespace polaron;
using fixtures::kPi;
using fixtures::rel_err;

namespace {

CutoffSpec bump(double eps) { return {eps, CutoffShape::bump, 1.0}; }

double q1_oracle(const PekarState& s) {
  const RadialGrid& g = s.psi.grid();
  const Vector r4 = g.nodes().array().pow(4);
  const RadialFunction d = radial_derivative(s.psi);
  return 4.0 * kPi * (integrate_1d(g, d.values().cwiseAbs2().cwiseProduct(r4)) +
                      s.mu * integrate_1d(g, s.rho.values().cwiseProduct(r4)));
}

}  // namespace

TEST_SUITE("mass_bound") {

TEST_CASE("cutoff shapes") {
  for (CutoffShape shape : {CutoffShape::bump, CutoffShape::gaussian, CutoffShape::one}) {
    CHECK(CutoffSpec{0.3, shape, 1.0}.chi(0.0) == 1.0);
  }
  const CutoffSpec b = bump(0.5);
  CHECK(b.support_end() == 2.0);
  CHECK(b(2.0) == 0.0);
  CHECK(b(1.9) > 0.0);
  CHECK(std::isinf(CutoffSpec{0.5, CutoffShape::gaussian, 1.0}.support_end()));
  CHECK_THROWS_AS(bump(0.0).validate(), InvalidArgument);
  CHECK_THROWS_AS(bump(-1.0).validate(), InvalidArgument);
  CHECK_THROWS_AS((CutoffSpec{0.1, CutoffShape::bump, 0.0}.validate()), InvalidArgument);
  CHECK_NOTHROW(CutoffSpec::identity().validate());
}

TEST_CASE("pairing term: -3/2") {
  const MomentumProfile& mp = fixtures::profile();
  CHECK(std::abs(pairing_term(mp, CutoffSpec::identity()) + 1.5) <= 1e-3);
  CHECK(std::abs(pairing_term(mp, bump(1e-3)) + 1.5) <= 1e-2);
  CHECK(std::abs(pairing_term(mp, bump(0.05)) + 1.5) <= 1e-2);
  CHECK(std::abs(pairing_term(mp, bump(1e3))) <= 1e-3);
}

TEST_CASE("pairing term is -3/2 for any trial state") {
  // Integration by parts only uses normalization.
  const MomentumProfile mp = momentum_profile(fixtures::gaussian_state(), build_grid(600, 6.0));
  CHECK(std::abs(pairing_term(mp, CutoffSpec::identity()) + 1.5) <= 1e-6);
}

TEST_CASE("kinetic term") {
  const MomentumProfile& mp = fixtures::profile();
  const double q1 = kinetic_term(mp, CutoffSpec::identity());
  CHECK(rel_err(q1, q1_oracle(fixtures::minimizer())) <= 1e-3);

  std::vector<double> eps;
  for (int i = 0; i < 20; ++i) eps.push_back(std::exp(fixtures::uniform(std::log(1e-3), std::log(1e2))));
  std::sort(eps.begin(), eps.end());
  double prev = q1;
  for (double e : eps) {
    const double v = kinetic_term(mp, bump(e));
    CHECK(v > 0.0);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("potential term and the =3 identity") {
  const MomentumProfile& mp = fixtures::profile();
  const PekarState& s = fixtures::minimizer();
  const CutoffSpec one = CutoffSpec::identity();
  const double q2 = potential_term(mp, one);
  CHECK(rel_err(q2, 2.0 * coulomb_bilinear(s.rho, s.rho.times_power(2))) <= 1e-2);
  CHECK(std::abs(kinetic_term(mp, one) - q2 - 3.0) <= 1e-2);
  CHECK(std::abs(potential_term(mp, bump(1e3))) <= 1e-3);
}

TEST_CASE("support restriction skips only vanishing terms") {
  const MomentumProfile& mp = fixtures::profile();
  const QuadratureSettings coarse{160, 24};
  const CutoffSpec cut = bump(1.0);
  CHECK(potential_term(mp, cut, coarse, true) == potential_term(mp, cut, coarse, false));

  const RadialFunction h = trial_profile(mp, cut);
  for (int j = 0; j < h.size(); ++j) {
    if (mp.pgrid->node(j) >= cut.support_end()) CHECK(h[j] == 0.0);
  }
}

TEST_CASE("trial direction vanishes at the origin") {
  const MomentumProfile& mp = fixtures::profile();
  const RadialFunction h = trial_profile(mp, CutoffSpec::identity());
  // t(p) = p h(p) is linear near 0: t(p_0)/p_0 matches t(p_10)/p_10.
  const double p0 = mp.pgrid->node(0), p10 = mp.pgrid->node(10);
  const double t0 = std::abs(p0 * h[0]);
  const double t10 = std::abs(p10 * h[10]);
  CHECK(t0 < t10);
  CHECK(t0 / p0 == doctest::Approx(t10 / p10).epsilon(1e-2));
  CHECK(std::isfinite(h.value_at_origin()));
}

TEST_CASE("trial profile needs psi_hat > 0 on the support") {
  MomentumProfile mp = fixtures::profile();
  Vector bad = mp.psi_hat.values();
  bad[bad.size() - 1] = -1e-20;
  mp.psi_hat = RadialFunction(mp.pgrid, bad);
  CHECK_THROWS_AS(trial_profile(mp, CutoffSpec::identity()), DomainFailure);
  CHECK_NOTHROW(trial_profile(mp, bump(1.0)));
}

TEST_CASE("bound vanishes along the cutoff sequence") {
  const MomentumProfile& mp = fixtures::profile();
  const std::vector<MassBoundReport> sweep =
      bound_sweep(mp, {bump(0.5), bump(0.2), bump(0.1), bump(0.05)});
  REQUIRE(sweep.size() == 5);
  const MassBoundReport& end = sweep.back();
  CHECK(std::abs(end.f) <= 2e-2);
  CHECK(end.eps == 0.0);
  CHECK(end.identity_neg32 == end.R);
  CHECK(end.identity_3 == end.Q1 - end.Q2);

  double prev_f = std::numeric_limits<double>::infinity();
  double prev_m = 0.0;
  for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
    const MassBoundReport& r = sweep[i];
    CHECK(std::abs(r.f) < prev_f);
    CHECK(r.m_lower >= prev_m);
    CHECK(!r.f_nonpositive);
    CHECK(r.m_lower == 1.0 / (2.0 * r.f));
    CHECK(r.f == 1.0 + (r.Q1 - r.Q2) / 3.0 + 4.0 * r.R / 3.0);
    CHECK(r.identity_neg32 == end.R);
    prev_f = std::abs(r.f);
    prev_m = r.m_lower;
  }
  CHECK(sweep[3].f <= 5e-2);
  CHECK(std::abs(end.f) < prev_f);
}

TEST_CASE("f is Lipschitz in eps on [0.05, 1]") {
  // Calibration run (reduced quadrature): largest secant slope 0.29, near eps = 1.
  constexpr double kLipschitz = 0.5;
  const MomentumProfile& mp = fixtures::profile();
  const QuadratureSettings coarse{160, 24};
  const std::vector<double> eps{0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0};
  std::vector<double> f;
  for (double e : eps) f.push_back(bound_rhs(mp, bump(e), coarse).f);
  for (std::size_t i = 1; i < eps.size(); ++i) {
    CHECK(std::abs(f[i] - f[i - 1]) <= kLipschitz * (eps[i] - eps[i - 1]));
  }
}

TEST_CASE("single-cutoff report matches the sweep") {
  const MomentumProfile& mp = fixtures::profile();
  const QuadratureSettings coarse{160, 24};
  const MassBoundReport one = bound_rhs(mp, bump(0.5), coarse);
  const MassBoundReport swept = bound_sweep(mp, {bump(0.5)}, coarse).front();
  CHECK(one.f == swept.f);
  CHECK(one.identity_3 == swept.identity_3);
  CHECK(one.mass_coeff == mp.mass_coeff);
}

TEST_CASE("non-positive f maps to the infinite-mass sentinel") {
  MomentumProfile mp = fixtures::profile();
  mp.mu = -1e3;  // drives Q1, and with it f, negative
  const MassBoundReport r = bound_rhs(mp, bump(0.5), {80, 8});
  CHECK(r.f < 0.0);
  CHECK(r.f_nonpositive);
  CHECK(std::isinf(r.m_lower));
  CHECK(r.m_lower > 0.0);
}

TEST_CASE("alpha scaling") {
  const PekarState& s = fixtures::minimizer();
  const double coeff = 0.25;
  const ScalingPrediction one = alpha_scaling(s, coeff, 1.0);
  CHECK(one.energy == s.eP);
  CHECK(one.mass == coeff);
  const ScalingPrediction ten = alpha_scaling(s, coeff, 10.0);
  CHECK(ten.energy == doctest::Approx(100.0 * s.eP));
  CHECK(ten.mass == doctest::Approx(1e4 * coeff));
  CHECK_THROWS_AS(alpha_scaling(s, coeff, 0.0), InvalidArgument);
  CHECK_THROWS_AS(alpha_scaling(s, coeff, -1.0), InvalidArgument);
}

}  // TEST_SUITE

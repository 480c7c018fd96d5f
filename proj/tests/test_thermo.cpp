#include <boost/math/special_functions/zeta.hpp>
#include <cmath>

#include "bosegas/thermo.hpp"
#include "doctest.h"

using namespace bosegas;

namespace {

ModelParams base_params(double rho_bar, double L) {
  ModelParams p;
  p.d = 3;
  p.s = 2.0;
  p.beta = 1.0;
  p.mu = 0.0;
  p.rho_bar = rho_bar;
  p.L = L;
  return p;
}

double rho_c_oracle_s2(double beta) {
  return boost::math::zeta(1.5) * std::pow(4.0 * num::pi * beta, -1.5);
}

}  // namespace

TEST_CASE("mean particle number basics") {
  ModelParams p = base_params(1.0, num::two_pi);
  // zero-only lattice: N_V = N_0 = 1/(y-1)
  const auto lat0 = build_lattice(num::two_pi, 0.5, 3);
  const auto n = thermo::mean_particle_number(p, lat0, 2.0);
  CHECK(n.N_V == doctest::Approx(1.0));
  CHECK(n.N_0 == doctest::Approx(1.0));
  CHECK(n.N_remainder == doctest::Approx(0.0));
  CHECK_THROWS(thermo::mean_particle_number(p, lat0, 1.0));

  // lattice {0, +-k1} with beta h(k1) = 1, y = 3/2:
  // remainder = 2/(1.5 e - 1)
  ModelParams p1 = base_params(1.0, num::two_pi);
  p1.s = 2.0;
  p1.beta = 1.0;
  // k1 = (1,0,0) has h = 1 for s = 2
  const auto lat1 = build_lattice(num::two_pi, 1.1, 1);
  REQUIRE(lat1.modes.size() == 3);
  ModelParams p1d = p1;
  p1d.d = 1;
  const auto n1 = thermo::mean_particle_number(p1d, lat1, 1.5);
  CHECK(n1.N_0 == doctest::Approx(2.0));
  CHECK(n1.N_remainder ==
        doctest::Approx(2.0 / (1.5 * std::exp(1.0) - 1.0)).epsilon(1e-12));

  // monotone decay in y
  const auto big = thermo::mean_particle_number(p, lat0, 50.0);
  CHECK(big.N_V < n.N_V);
}

TEST_CASE("fugacity solve on the zero-only lattice") {
  // V=1 requires L=1
  ModelParams p = base_params(1.0, 1.0);
  const auto lat = build_lattice(1.0, 0.5, 3);
  REQUIRE(lat.modes.size() == 1);
  const auto sol = thermo::solve_fugacity(p, lat);
  CHECK(sol.y_V == doctest::Approx(2.0).epsilon(1e-9));

  ModelParams p10 = base_params(10.0, 1.0);
  const auto sol10 = thermo::solve_fugacity(p10, lat);
  CHECK(sol10.y_V == doctest::Approx(1.1).epsilon(1e-9));
}

TEST_CASE("density map is strictly decreasing in y") {
  ModelParams p = base_params(2.0 * rho_c_oracle_s2(1.0), 8.0);
  const auto lat = build_lattice(8.0, thermo::default_k_max(1.0, 2.0), 3);
  double prev = 1e300;
  for (double y : {1.001, 1.01, 1.1, 1.5, 3.0, 10.0}) {
    const auto n = thermo::mean_particle_number(p, lat, y);
    CHECK(n.N_V < prev);
    prev = n.N_V;
  }
}

TEST_CASE("condensed-phase volume chain") {
  const double rho_c = rho_c_oracle_s2(1.0);
  double prev_y = 1e300;
  double prev_gap = 1e300;
  for (double L : {4.0, 8.0, 16.0}) {
    ModelParams p = base_params(2.0 * rho_c, L);
    const auto lat = build_lattice(L, thermo::default_k_max(1.0, 2.0), 3);
    const auto sol = thermo::solve_fugacity(p, lat);
    CHECK(sol.y_V > 1.0);
    CHECK(sol.y_V < prev_y);  // strictly decreasing along the chain
    CHECK(sol.residual <= 1e-10 * p.rho_bar);
    // V (y_V - 1) approaches 1/n0 from below
    const double v_gap =
        std::abs(p.volume() * (sol.y_V - 1.0) - 1.0 / rho_c);
    CHECK(v_gap < prev_gap);
    // decomposition identity N_V = N_0 + remainder recomputed
    const auto n = thermo::mean_particle_number(p, lat, sol.y_V);
    CHECK(n.N_V == doctest::Approx(n.N_0 + n.N_remainder));
    prev_y = sol.y_V;
    prev_gap = v_gap;
  }
}

TEST_CASE("critical density against series oracles") {
  const double q2 = thermo::critical_density(1.0, 3, 2.0).value;
  CHECK(std::abs(q2 - rho_c_oracle_s2(1.0)) / rho_c_oracle_s2(1.0) < 1e-8);
  const double q1 = thermo::critical_density(1.0, 3, 1.0).value;
  const double o1 = boost::math::zeta(3.0) / (num::pi * num::pi);
  CHECK(std::abs(q1 - o1) / o1 < 1e-8);
  // decreasing in beta
  CHECK(thermo::critical_density(2.0, 3, 2.0).value < q2);
  CHECK(thermo::critical_density(4.0, 3, 2.0).value <
        thermo::critical_density(2.0, 3, 2.0).value);
  CHECK_THROWS(thermo::critical_density(1.0, 3, 3.5));
}

TEST_CASE("condensate density piecewise law") {
  const double rho_c = thermo::critical_density(1.0, 3, 2.0).value;

  // boundary: rho_bar = rho_c gives n0 = 0 and beta_c = beta
  const auto at = thermo::condensate_density(1.0, rho_c, 3, 2.0);
  CHECK(at.n0 == 0.0);
  CHECK(at.beta_c == doctest::Approx(1.0).epsilon(1e-6));

  const auto cond = thermo::condensate_density(1.0, 2.0 * rho_c, 3, 2.0);
  CHECK(cond.n0 == doctest::Approx(rho_c).epsilon(1e-10));
  CHECK(cond.y_inf == 1.0);
  // rho_c(beta_c) = rho_bar
  CHECK(thermo::critical_density(cond.beta_c, 3, 2.0).value ==
        doctest::Approx(2.0 * rho_c).epsilon(1e-8));

  const auto dilute = thermo::condensate_density(1.0, 0.5 * rho_c, 3, 2.0);
  CHECK(dilute.n0 == 0.0);
  CHECK(dilute.y_inf > 1.0);
  // continuum density at y_inf reproduces rho_bar
  CHECK(thermo::continuum_density(1.0, dilute.y_inf, 3, 2.0).value ==
        doctest::Approx(0.5 * rho_c).epsilon(1e-8));

  // n0 nondecreasing in beta at fixed rho_bar
  const auto c1 = thermo::condensate_density(1.0, 2.0 * rho_c, 3, 2.0);
  const auto c2 = thermo::condensate_density(2.0, 2.0 * rho_c, 3, 2.0);
  CHECK(c2.n0 >= c1.n0);
}

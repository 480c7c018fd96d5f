#include <cmath>

#include "bosegas/model.hpp"
#include "doctest.h"

using namespace bosegas;

TEST_CASE("dispersion values") {
  CHECK(dispersion({1.0, 0.0, 0.0}, 2.0) == doctest::Approx(1.0));
  CHECK(dispersion({0.0, 0.0, 0.0}, 1.0) == 0.0);
  CHECK(dispersion({3.0, 4.0, 0.0}, 1.0) == doctest::Approx(5.0));
  // even under negation
  CHECK(dispersion({-0.3, 0.7, 1.1}, 1.7) ==
        doctest::Approx(dispersion({0.3, -0.7, -1.1}, 1.7)));
  CHECK_THROWS(dispersion({1.0, 0.0, 0.0}, 0.0));
}

TEST_CASE("lattice construction") {
  // d=1, L=2pi: spacing 1, cutoff 2.5 -> {-2,...,2}
  const auto lat = build_lattice(num::two_pi, 2.5, 1);
  CHECK(lat.modes.size() == 5);
  CHECK(lat.contains_zero());

  // cutoff below spacing: zero-only lattice
  const auto tiny = build_lattice(num::two_pi, 0.5, 1);
  CHECK(tiny.modes.size() == 1);
  CHECK(tiny.modes[0].is_zero());
  CHECK_THROWS(build_lattice(num::two_pi, -1.0, 1));

  // d=3, L=1: spacing 2pi, cutoff 2pi -> origin plus 6 nearest neighbors
  const auto iso = build_lattice(1.0, num::two_pi, 3);
  CHECK(iso.modes.size() == 7);

  // closed under negation
  const auto lat3 = build_lattice(2.0, 5.0, 3);
  for (const auto& m : lat3.modes) {
    const auto neg = m.negated();
    bool found = false;
    for (const auto& w : lat3.modes) found |= (w == neg);
    CHECK(found);
  }
}

TEST_CASE("zero-mode probes") {
  const double ref = std::pow(num::two_pi, -1.5);
  CHECK(probe(1, 3.7, 3).fourier_at_zero == doctest::Approx(ref).epsilon(1e-15));
  CHECK(probe(0, 1.0, 3).fourier_at_zero == doctest::Approx(ref).epsilon(1e-15));
  CHECK(probe(0, 2.0, 3).fourier_at_zero ==
        doctest::Approx(ref * std::sqrt(8.0)).epsilon(1e-15));
  // V^{(#-1)/2}-normalized value is L-independent
  for (int sharp : {0, 1}) {
    const double a = probe(sharp, 2.0, 3).fourier_at_zero *
                     std::pow(std::pow(2.0, 3), 0.5 * (sharp - 1));
    const double b = probe(sharp, 5.0, 3).fourier_at_zero *
                     std::pow(std::pow(5.0, 3), 0.5 * (sharp - 1));
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
  }
}

TEST_CASE("test function construction and sampling") {
  auto f = TestFunction::from_gaussians(
      {GaussianTerm{cplx(1.0, 0.5), 2.0, {0.3, 0.0, 0.0}}});
  CHECK(std::abs(f.f_hat_zero - cplx(1.0, 0.5) * std::exp(-2.0 * 0.09)) <
        1e-15);
  CHECK(f.in_L1);

  const auto lat = build_lattice(4.0, 3.0, 3);
  const auto sampled = f.sampled_on(lat);
  REQUIRE(sampled.has_lattice());
  // sampled coefficients agree with the descriptor at lattice points
  for (const auto& [m, c] : *sampled.lattice_coeffs) {
    CHECK(std::abs(c - f.continuum_at(lat.momentum(m))) < 1e-15);
  }
  CHECK_THROWS(TestFunction::from_gaussians(
      {GaussianTerm{cplx(1.0, 0.0), -1.0, {0.0, 0.0, 0.0}}}));
}

TEST_CASE("params json round trip") {
  ModelParams p;
  p.d = 3;
  p.s = 1.5;
  p.beta = 2.25;
  p.mu = -0.125;
  p.rho_bar = 0.375;
  p.L = 8.0;
  const auto q = ModelParams::from_json(p.to_json());
  CHECK(q.s == p.s);
  CHECK(q.beta == p.beta);
  CHECK(q.mu == p.mu);
  CHECK(q.volume() == doctest::Approx(512.0));
  CHECK_THROWS(ModelParams::from_json(R"({"d":3,"s":2,"beta":-1,"mu":0,"rho_bar":0.1,"L":1})"));

  auto f = TestFunction::from_gaussians(
      {GaussianTerm{cplx(0.5, -0.25), 1.5, {0.0, 1.0, 0.0}}});
  const auto g = TestFunction::gaussians_from_json(f.to_json());
  CHECK(std::abs(g.f_hat_zero - f.f_hat_zero) < 1e-15);
}

#include <cmath>

#include "bosegas/states.hpp"
#include "doctest.h"

using namespace bosegas;

namespace {

forms::FormContext ctx_with(double n0) {
  forms::FormContext ctx;
  ctx.beta = 1.0;
  ctx.mu = 0.0;
  ctx.d = 3;
  ctx.s = 2.0;
  ctx.n0 = n0;
  return ctx;
}

TestFunction centered(double c_re, double c_im, double sigma) {
  return TestFunction::from_gaussians(
      {GaussianTerm{cplx(c_re, c_im), sigma, {0.0, 0.0, 0.0}}});
}

TestFunction zero_function() {
  return TestFunction::from_gaussians(
      {GaussianTerm{cplx(0.0, 0.0), 1.0, {0.0, 0.0, 0.0}}});
}

}  // namespace

TEST_CASE("weyl expectation") {
  auto ctx = ctx_with(0.05);
  CHECK(states::weyl_expectation(zero_function(), states::Bec{}, 1.0, ctx)
            .value.real() == doctest::Approx(1.0));
  // q_bec(f) = 4 at t = 1 gives e^{-1}; engineer it by scaling
  auto f = centered(1.0, 0.0, 1.0);
  const double q = forms::q_bec(f, ctx).value;
  const double scale = 2.0 / std::sqrt(q);
  auto fs = centered(scale, 0.0, 1.0);
  const auto w = states::weyl_expectation(fs, states::Bec{}, 1.0, ctx);
  CHECK(w.value.real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

  // component with real fhat(0) and theta = pi/2: zero mean functional
  const auto comp = states::weyl_expectation(
      f, states::ComponentLabel(1.3, 0.5 * num::pi), 1.0, ctx);
  CHECK(comp.value.imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mean functional linearity and dependence on fhat(0)") {
  auto ctx = ctx_with(0.0586);
  const states::ComponentLabel lbl(0.7, 1.1);
  const cplx z(0.4, -0.3);
  const double l1 = states::mean_functional(lbl, z, ctx);
  CHECK(states::mean_functional(lbl, 3.0 * z, ctx) ==
        doctest::Approx(3.0 * l1).epsilon(1e-13));
  CHECK(states::mean_functional(states::ComponentLabel(0.0, 1.1), z, ctx) ==
        doctest::Approx(0.0));
}

TEST_CASE("one-point resolvent") {
  auto ctx = ctx_with(0.0);
  // f = 0: |value| = 1/lambda, value = prefactor / lambda
  const auto r = states::resolvent_one_point(1.0, zero_function(),
                                             states::Nonzero{}, ctx);
  CHECK(std::abs(r.value) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((r.value / states::resolvent_prefactor()).real() ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Gaussian closed form: A = q(f), |value| = sqrt(pi/A) e^{1/A} erfc(1/sqrt A)
  auto f = centered(1.0, 0.0, 1.0);
  const double A = forms::q_nonzero_continuum(f, ctx).value;
  const auto rf = states::resolvent_one_point(1.0, f, states::Nonzero{}, ctx);
  CHECK(std::abs(rf.value) ==
        doctest::Approx(num::gaussian_laplace(1.0, A)).epsilon(1e-9));

  // lambda = -1 is the sign-reflected integral (conjugate under the +i rule)
  const auto rm = states::resolvent_one_point(-1.0, f, states::Nonzero{}, ctx);
  CHECK(rm.value.real() == doctest::Approx(std::conj(rf.value).real()));
  CHECK(rm.value.imag() == doctest::Approx(std::conj(rf.value).imag()));

  CHECK_THROWS(states::resolvent_one_point(0.0, f, states::Nonzero{}, ctx));
}

TEST_CASE("resolvent norm bound across states") {
  auto ctx = ctx_with(0.0586);
  auto f = centered(0.8, 0.3, 1.2);
  for (double lambda : {0.5, 1.0, -2.0}) {
    for (const states::StateChoice& st :
         {states::StateChoice(states::Nonzero{}),
          states::StateChoice(states::Bec{}),
          states::StateChoice(states::ComponentLabel(1.7, 2.1))}) {
      const auto r = states::resolvent_one_point(lambda, f, st, ctx);
      CHECK(std::abs(r.value) <= 1.0 / std::abs(lambda) + 1e-10);
    }
  }
}

TEST_CASE("scaling relation nu psi(R(nu lambda, nu f)) = psi(R(lambda, f))") {
  auto ctx = ctx_with(0.02);
  const double nu = 2.5;
  auto f = centered(0.6, 0.0, 1.0);
  auto fnu = centered(0.6 * nu, 0.0, 1.0);
  const auto a = states::resolvent_one_point(0.8, f, states::Bec{}, ctx);
  const auto b = states::resolvent_one_point(nu * 0.8, fnu, states::Bec{}, ctx);
  CHECK(std::abs(nu * b.value - a.value) < 1e-8);
}

TEST_CASE("two-point reductions and symmetry") {
  auto ctx = ctx_with(0.0);
  auto f = centered(1.0, 0.0, 1.0);

  // g = 0 factorizes into one-points
  const auto tp = states::resolvent_two_point(1.0, f, 1.0, zero_function(),
                                              states::Nonzero{}, ctx);
  const auto p1 = states::resolvent_one_point(1.0, f, states::Nonzero{}, ctx);
  const auto p0 =
      states::resolvent_one_point(1.0, zero_function(), states::Nonzero{}, ctx);
  CHECK(std::abs(tp.value - p1.value * p0.value) < 1e-9);

  // f = g real: the double integral is real and positive after removing
  // the prefactor convention
  const auto diag = states::resolvent_two_point(1.0, f, 1.0, f,
                                                states::Nonzero{}, ctx);
  const cplx pref = states::resolvent_prefactor();
  const cplx raw = diag.value / (pref * pref);
  CHECK(raw.imag() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(raw.real() > 0.0);

  // 1-D oracle for the diagonal case: int int e^{-s-t} e^{-q (s+t)^2/4}
  const double q = forms::q_nonzero_continuum(f, ctx).value;
  double brute = 0.0;
  const int n = 1500;
  const double T = 12.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double s = (i + 0.5) * T / n, t = (j + 0.5) * T / n;
      brute += std::exp(-s - t - 0.25 * q * (s + t) * (s + t)) * (T / n) *
               (T / n);
    }
  CHECK(raw.real() == doctest::Approx(brute).epsilon(1e-5));

  // component labels theta and theta + pi give conjugate values for real data
  auto ctxc = ctx_with(0.0586);
  const auto cp = states::resolvent_two_point(
      1.0, f, 1.0, f, states::ComponentLabel(0.9, 0.4), ctxc);
  const auto cm = states::resolvent_two_point(
      1.0, f, 1.0, f, states::ComponentLabel(0.9, 0.4 + num::pi), ctxc);
  CHECK(std::abs(cp.value - std::conj(cm.value)) < 1e-9);
}

TEST_CASE("gauge covariance of component states") {
  auto ctx = ctx_with(0.0586);
  auto f = centered(0.9, 0.2, 1.1);
  const double theta0 = 1.3;
  TestFunction rotated = f;
  for (auto& t : rotated.continuum)
    t.c *= cplx(std::cos(theta0), std::sin(theta0));
  rotated.f_hat_zero *= cplx(std::cos(theta0), std::sin(theta0));
  const auto lhs = states::resolvent_one_point(
      1.0, rotated, states::ComponentLabel(1.1, 0.7), ctx);
  const auto rhs = states::resolvent_one_point(
      1.0, f, states::ComponentLabel(1.1, 0.7 + theta0), ctx);
  CHECK(std::abs(lhs.value - rhs.value) < 1e-10);
}

TEST_CASE("four-point positivity") {
  auto ctx = ctx_with(0.0586);
  // f = g = 0: all resolvents unit modulus, value = 3
  const auto triv = states::fourpoint_positivity(1.0, zero_function(), 1.0,
                                                 zero_function(),
                                                 states::Bec{}, ctx);
  CHECK(triv.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(triv.third_term == doctest::Approx(1.0).epsilon(1e-9));

  auto f = centered(1.0, 0.0, 1.0);
  auto g = centered(0.6, 0.3, 1.5);
  const auto fp = states::fourpoint_positivity(1.0, f, 1.4, g,
                                               states::Bec{}, ctx);
  CHECK(fp.value >= 0.0);
  CHECK(fp.third_term > 0.0);
  // closed-form erfc product bounds the third term from below: on the
  // quadrant (t-s)^2 <= s^2 + t^2, so each factor dominates the product of
  // two one-point Gaussian Laplace integrals
  const double qf = forms::q_bec(f, ctx).value;
  const double qg = forms::q_bec(g, ctx).value;
  const double bound_f = std::pow(num::gaussian_laplace(1.0, qf), 2);
  const double bound_g = std::pow(num::gaussian_laplace(1.4, qg), 2);
  CHECK(fp.third_term >= bound_f * bound_g * (1.0 - 1e-9));
}

#include <cmath>

#include "bosegas/pathspace.hpp"
#include "doctest.h"

using namespace bosegas;
using pathspace::Path;

namespace {

pathspace::PathSpaceSpec small_spec(int n_mats = 3) {
  pathspace::PathSpaceSpec spec;
  spec.beta = 1.0;
  spec.s = 2.0;
  spec.d = 3;
  spec.n_mats = n_mats;
  spec.lattice = build_lattice(num::two_pi, 1.5, 3);
  spec.r_reg = 1.0;
  spec.u_reg = 2.0;
  spec.a_reg = 1.0;
  return spec;
}

}  // namespace

TEST_CASE("matsubara sum against the closed form") {
  const auto m0 = pathspace::matsubara_sum(0.0, 1.0, 1.0, 10000);
  const double coth_half = (1.0 + std::exp(-1.0)) / (1.0 - std::exp(-1.0));
  CHECK(m0.closed_form == doctest::Approx(0.5 * coth_half).epsilon(1e-14));
  CHECK(m0.gap / m0.closed_form < 1e-4);

  const auto mh = pathspace::matsubara_sum(0.5, 1.0, 1.0, 10000);
  CHECK(mh.closed_form ==
        doctest::Approx(std::exp(-0.5) / (1.0 - std::exp(-1.0))).epsilon(1e-14));

  // O(1/N): doubling at least halves (up to a margin)
  for (double t : {0.0, 0.25, 0.5}) {
    double prev = pathspace::matsubara_sum(t, 1.3, 1.0, 2000).gap;
    for (int N : {4000, 8000, 16000}) {
      const double cur = pathspace::matsubara_sum(t, 1.3, 1.0, N).gap;
      CHECK(cur <= 0.6 * prev);
      prev = cur;
    }
  }
  // closed form is beta-periodic under t -> beta - t
  CHECK(pathspace::sharp_time_kernel(0.3, 1.7, 1.0) ==
        doctest::Approx(pathspace::sharp_time_kernel(0.7, 1.7, 1.0)).epsilon(1e-15));
  CHECK_THROWS(pathspace::matsubara_sum(0.0, 0.0, 1.0, 100));
}

TEST_CASE("sharp time kernel identities") {
  for (double eps : {0.5, 1.0, 2.7}) {
    const double coth = (1.0 + std::exp(-eps)) / (1.0 - std::exp(-eps));
    CHECK(std::abs(pathspace::sharp_time_kernel(0.0, eps, 1.0) -
                   coth / (2.0 * eps)) < 1e-14);
    // reflection G(d) = G(beta - d)
    for (double d : {0.1, 0.4}) {
      CHECK(std::abs(pathspace::sharp_time_kernel(d, eps, 1.0) -
                     pathspace::sharp_time_kernel(1.0 - d, eps, 1.0)) < 1e-14);
    }
  }
  // beta -> infinity: ground-state kernel e^{-|d| eps}/(2 eps)
  CHECK(pathspace::sharp_time_kernel(0.4, 1.2, 200.0) ==
        doctest::Approx(std::exp(-0.48) / 2.4).epsilon(1e-12));
}

TEST_CASE("sharp time inner product") {
  auto spec = small_spec();
  const auto modes = pathspace::sharp_time_modes(spec);
  REQUIRE(modes.size() == 6);
  std::vector<cplx> unit(modes.size(), cplx(0.0, 0.0));
  unit[0] = cplx(1.0, 0.0);
  const double eps = spec.eps(modes[0]);
  const cplx same =
      pathspace::sharp_time_inner(0.25, unit, 0.25, unit, spec);
  const double coth = (1.0 + std::exp(-eps)) / (1.0 - std::exp(-eps));
  CHECK(same.real() == doctest::Approx(coth / (2.0 * eps)).epsilon(1e-13));
  // |t1 - t2| = beta equals coincident times
  const cplx wrap = pathspace::sharp_time_inner(-0.5, unit, 0.5, unit, spec);
  CHECK(std::abs(wrap - same) < 1e-13);
}

TEST_CASE("trace condition verdicts") {
  using pathspace::TraceVerdict;
  CHECK(pathspace::trace_condition_check(3, 1.0, 1.0, 2.0, 0.0).verdict ==
        TraceVerdict::converged);
  CHECK(pathspace::trace_condition_check(3, 2.0, 1.0, 2.0, 1.0).verdict ==
        TraceVerdict::converged);
  CHECK(pathspace::trace_condition_check(3, 2.0, 1.0, 2.0, 0.5).verdict ==
        TraceVerdict::diverging);
  // temporal violation also diverges
  CHECK(pathspace::trace_condition_check(3, 2.0, 0.5, 2.0, 1.0).verdict ==
        TraceVerdict::diverging);
}

TEST_CASE("interval projection basics") {
  const double beta = 1.0, eps = 1.3;
  const auto f = Path::matsubara_mode(beta, eps, 1);
  const auto proj = pathspace::interval_projection(f, -0.3, 0.2);
  // unchanged inside
  for (double t : {-0.25, 0.0, 0.13}) {
    CHECK(std::abs(proj.value(t) - f.value(t)) < 1e-14);
  }
  // boundary continuity
  CHECK(std::abs(proj.value(-0.3 + 1e-12) - f.value(-0.3)) < 1e-9);
  CHECK(std::abs(proj.value(0.2 - 1e-12) - f.value(0.2)) < 1e-9);

  // interpolation of zero boundary data vanishes outside
  // build a path vanishing at t1 and t2 from two modes
  const double t1 = -0.25, t2 = 0.25;
  // e^{i w t} - e^{i w t1} type combination vanishing at both ends for w = 2pi:
  // cos(2 pi t) - cos(2 pi 0.25) vanishes at +-0.25
  Path::Segment seg;
  seg.a = -0.5;
  seg.b = 0.5;
  seg.val = [](double t) {
    return cplx(std::cos(num::two_pi * t) - std::cos(num::two_pi * 0.25), 0.0);
  };
  seg.dval = [](double t) {
    return cplx(-num::two_pi * std::sin(num::two_pi * t), 0.0);
  };
  const Path vanish(beta, eps, {seg});
  const auto pv = pathspace::interval_projection(vanish, t1, t2);
  for (double t : {-0.45, -0.35, 0.3, 0.49}) {
    CHECK(std::abs(pv.value(t)) < 1e-12);
  }

  // idempotency on a 512-point grid
  const auto twice = pathspace::interval_projection(proj, -0.3, 0.2);
  double worst = 0.0;
  for (int i = 0; i < 512; ++i) {
    const double t = -0.5 + i / 512.0;
    worst = std::max(worst, std::abs(twice.value(t) - proj.value(t)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("markov identity on single-mode paths") {
  for (int n : {0, 1, 2}) {
    for (double eps : {0.9, 1.7}) {
      const auto f = Path::matsubara_mode(1.0, eps, n);
      const auto rep = pathspace::markov_identity_check(f, 512);
      CHECK(rep.projection_composition_gap < 1e-10);
      CHECK(rep.q_identity_gap < 1e-10);
      CHECK(rep.idempotency_gap < 1e-10);
      CHECK(rep.reflection_gap < 1e-12);
    }
  }
  const auto f = Path::matsubara_mode(1.0, 1.0, 1);
  CHECK_THROWS(pathspace::markov_identity_check(f, 32));
}

TEST_CASE("constant paths are fixed by projections") {
  // eps > 0 keeps constants out of the kernel of the projection algebra,
  // but the interval part must still reproduce them inside
  Path::Segment seg;
  seg.a = -0.5;
  seg.b = 0.5;
  seg.val = [](double) { return cplx(1.0, 0.0); };
  seg.dval = [](double) { return cplx(0.0, 0.0); };
  const Path c(1.0, 1.2, {seg});
  const auto p = pathspace::interval_projection(c, -0.2, 0.3);
  for (double t : {-0.1, 0.0, 0.25}) CHECK(std::abs(p.value(t) - cplx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("dirichlet form of a matsubara mode") {
  // int |f'|^2 + eps^2 |f|^2 over the circle = beta (w^2 + eps^2) for
  // a unit complex mode
  const double eps = 1.1;
  const auto f = Path::matsubara_mode(1.0, eps, 2);
  const double w = num::two_pi * 2.0;
  CHECK(pathspace::dirichlet_form(f) ==
        doctest::Approx(w * w + eps * eps).epsilon(1e-12));
}

TEST_CASE("field sampler reproduces the covariance") {
  auto spec = small_spec(2);
  const auto modes = spec.gaussian_modes();
  auto real_vec = [&](const pathspace::NK& nk, cplx c) {
    std::vector<cplx> v(modes.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (modes[i] == nk) v[i] += c;
      if (modes[i] == nk.negated()) v[i] += std::conj(c);
    }
    return v;
  };
  const auto f = real_vec({1, ModeIndex{{1, 0, 0}}}, cplx(0.7, 0.4));
  const auto g = real_vec({0, ModeIndex{{0, 0, 1}}}, cplx(1.0, 0.0));
  REQUIRE(pathspace::is_real_vector(f, spec));

  const auto cov = pathspace::sampler_covariance_check(spec, 21, 60000, f, f);
  CHECK(cov.within_4se);
  // orthogonal directions are independent
  const auto cross = pathspace::sampler_covariance_check(spec, 22, 60000, f, g);
  CHECK(std::abs(cross.analytic) < 1e-14);
  CHECK(cross.within_4se);

  const auto chf = pathspace::sampler_char_check(spec, 23, 60000, f);
  CHECK(chf.within_4se);

  // measure-preservation of time translation and reflection
  const auto chu = pathspace::sampler_char_check(
      spec, 24, 60000, f, pathspace::SampleTransform::time_translation, 0.37);
  CHECK(chu.within_4se);
  const auto chr = pathspace::sampler_char_check(
      spec, 25, 60000, f, pathspace::SampleTransform::reflection);
  CHECK(chr.within_4se);

  // rejected when the exponents violate the trace constraints
  auto bad = spec;
  bad.a_reg = 0.5;
  CHECK_THROWS(pathspace::FieldSampler(bad, 1));
}

TEST_CASE("euclidean correlation identities") {
  auto spec = small_spec();
  const auto modes = pathspace::sharp_time_modes(spec);
  std::vector<double> g1(modes.size(), 0.0), g2(modes.size(), 0.0);
  g1[0] = 1.0;
  g1[modes.size() - 1] = 1.0;
  g2[1] = 0.6;
  g2[modes.size() - 2] = 0.6;

  // all zero: both sides 1
  std::vector<double> z(modes.size(), 0.0);
  const auto triv = pathspace::euclidean_correlation({0.1}, {z}, spec);
  CHECK(triv.gaussian_side == doctest::Approx(1.0));
  CHECK(triv.thermal_side == doctest::Approx(1.0));

  const auto one = pathspace::euclidean_correlation({0.2}, {g1}, spec);
  CHECK(one.gap < 1e-12);
  const auto two = pathspace::euclidean_correlation({0.1, 0.4}, {g1, g2}, spec);
  CHECK(two.gap < 1e-12);
  const auto three = pathspace::euclidean_correlation(
      {0.05, 0.2, 0.45}, {g1, g2, g1}, spec);
  CHECK(three.gap < 1e-12);

  CHECK_THROWS(pathspace::euclidean_correlation({0.4, 0.1}, {g1, g2}, spec));
  CHECK_THROWS(pathspace::euclidean_correlation({0.1, 0.9}, {g1, g2}, spec));
}

#include "bosegas/decomposition.hpp"

#include <cmath>
#include <stdexcept>

namespace bosegas::decomposition {

ChiValue chi_expect_quadrature(const std::function<cplx(double, double)>& f,
                               double rel_tol, int max_r_order) {
  ChiValue out;
  cplx prev{0.0, 0.0};
  bool have_prev = false;
  for (int nr = 32, nth = 64; nr <= max_r_order; nr *= 2, nth *= 2) {
    const auto& qr = num::gauss_laguerre(nr);
    std::vector<cplx> rows(qr.x.size());
    for (std::size_t i = 0; i < qr.x.size(); ++i) {
      const double r = qr.x[i];
      const cplx th = num::trapezoid_periodic(
          [&](double theta) { return f(r, theta); }, nth);
      rows[i] = qr.w[i] * th / num::two_pi;
    }
    const cplx val = num::pairwise_sum(std::span<const cplx>(rows));
    if (have_prev) {
      out.error = std::abs(val - prev);
      if (out.error <= rel_tol * std::max(1.0, std::abs(val))) {
        out.value = val;
        out.converged = true;
        return out;
      }
    }
    prev = val;
    have_prev = true;
  }
  out.value = prev;
  out.converged = false;
  return out;
}

ChiValue chi_expect_mc(const std::function<cplx(double, double)>& f,
                       std::uint64_t n, std::uint64_t seed) {
  if (n < 100) throw std::invalid_argument("chi_expect_mc: n must be >= 100");
  constexpr int kShards = 16;
  const std::uint64_t per = n / kShards;
  const std::uint64_t rem = n % kShards;
  std::vector<double> sum_re(kShards), sum_im(kShards), sum_sq(kShards);
  auto job = [&](int shard) -> double {
    num::Rng rng(num::substream_seed(seed, shard));
    const std::uint64_t m = per + (std::uint64_t(shard) < rem ? 1 : 0);
    double sr = 0.0, si = 0.0, s2 = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      const double r = rng.exponential();
      const double theta = num::two_pi * rng.uniform();
      const cplx v = f(r, theta);
      sr += v.real();
      si += v.imag();
      s2 += std::norm(v);
    }
    sum_re[shard] = sr;
    sum_im[shard] = si;
    sum_sq[shard] = s2;
    return 0.0;
  };
  num::run_shards(kShards, job);
  const double tr = num::pairwise_sum(std::span<const double>(sum_re));
  const double ti = num::pairwise_sum(std::span<const double>(sum_im));
  const double t2 = num::pairwise_sum(std::span<const double>(sum_sq));
  ChiValue out;
  out.value = cplx(tr / n, ti / n);
  const double var = std::max(0.0, t2 / n - std::norm(out.value));
  out.error = std::sqrt(var / double(n));
  out.converged = true;
  return out;
}

MixingReport verify_mixing_identity(const TestFunction& f,
                                    const FormContext& ctx,
                                    std::uint64_t mc_samples,
                                    std::uint64_t seed) {
  if (!f.in_L1)
    throw std::domain_error("verify_mixing_identity: f must be in L1");
  MixingReport rep;
  const double c = ctx.c_const();
  const cplx z = f.f_hat_zero;
  auto integrand = [&](double r, double theta) -> cplx {
    const cplx rot = cplx(std::cos(theta), std::sin(theta)) * z;
    const double ell = std::sqrt(c * r) * rot.real();
    return cplx(std::cos(ell), std::sin(ell));
  };
  const auto quad = chi_expect_quadrature(integrand, 1e-12);
  rep.lhs = quad.value;
  rep.quadrature_converged = quad.converged;
  rep.rhs = std::exp(-0.25 * forms::q_zero(f, ctx).value);
  rep.abs_gap = std::abs(rep.lhs - rep.rhs);
  if (mc_samples > 0) {
    const auto mc = chi_expect_mc(integrand, mc_samples, seed);
    rep.mc_value_re = mc.value.real();
    rep.mc_gap = std::abs(mc.value - cplx(rep.rhs, 0.0));
    rep.mc_standard_error = mc.error;
  }
  return rep;
}

DecompositionGap decompose_two_point(double lambda, const TestFunction& f,
                                     double mu_scalar, const TestFunction& g,
                                     const FormContext& ctx, double tol) {
  DecompositionGap out;
  out.direct = states::resolvent_two_point(lambda, f, mu_scalar, g,
                                           states::Bec{}, ctx, tol);
  // component kernel: same nonzero-mode scalars for every fiber, only the
  // means move with (r, theta)
  const auto base =
      states::two_point_kernel(f, g, states::Nonzero{}, ctx, 0.0);
  const double c = ctx.c_const();
  const cplx zf = f.f_hat_zero, zg = g.f_hat_zero;
  auto fiber = [&](double r, double theta) -> cplx {
    states::TwoPointKernel k = base;
    const cplx rot(std::cos(theta), std::sin(theta));
    k.ell_f = std::sqrt(c * r) * (rot * zf).real();
    k.ell_g = std::sqrt(c * r) * (rot * zg).real();
    return states::resolvent_two_point_from_kernel(lambda, mu_scalar, k, tol)
        .value;
  };
  const auto avg = chi_expect_quadrature(fiber, tol);
  out.decomposed.value = avg.value;
  out.decomposed.quadrature_error = avg.error;
  out.decomposed.converged = avg.converged;
  out.gap = std::abs(out.direct.value - out.decomposed.value);
  return out;
}

double gauge_orbit_check(double r, double theta, double theta0,
                         const std::vector<TestFunction>& f_grid,
                         const FormContext& ctx) {
  double worst = 0.0;
  for (const auto& f : f_grid) {
    TestFunction rotated = f;
    const cplx phase(std::cos(theta0), std::sin(theta0));
    for (auto& term : rotated.continuum) term.c *= phase;
    rotated.f_hat_zero *= phase;
    const auto lhs = states::weyl_expectation(
        rotated, states::ComponentLabel(r, theta), 1.0, ctx);
    const auto rhs = states::weyl_expectation(
        f, states::ComponentLabel(r, theta + theta0), 1.0, ctx);
    worst = std::max(worst, std::abs(lhs.value - rhs.value));
  }
  return worst;
}

double gauge_invariance_of_mixture(double theta0, const TestFunction& f,
                                   const FormContext& ctx) {
  // chi-average of psi_{r,theta}(W(e^{i theta0} f)) - psi_{r,theta}(W(f));
  // the common q_nonzero factor scales both terms equally, so it is
  // dropped and only the mean-functional phases are averaged.
  const double c = ctx.c_const();
  const cplx z = f.f_hat_zero;
  const cplx phase(std::cos(theta0), std::sin(theta0));
  auto integrand = [&](double r, double theta) -> cplx {
    const cplx rot(std::cos(theta), std::sin(theta));
    const double ell_rot = std::sqrt(c * r) * (rot * (phase * z)).real();
    const double ell = std::sqrt(c * r) * (rot * z).real();
    return cplx(std::cos(ell_rot) - std::cos(ell),
                std::sin(ell_rot) - std::sin(ell));
  };
  const auto avg = chi_expect_quadrature(integrand, 1e-12);
  return std::abs(avg.value);
}

ClusteringReport clustering_scan(const TestFunction& f, const TestFunction& g,
                                 const StateChoice& state,
                                 const std::vector<double>& u_list,
                                 const FormContext& ctx, double lambda,
                                 double mu_scalar) {
  for (std::size_t i = 1; i < u_list.size(); ++i)
    if (!(u_list[i] > u_list[i - 1]))
      throw std::invalid_argument("clustering_scan: u_list must increase");
  ClusteringReport rep;
  const auto pf = states::resolvent_one_point(lambda, f, state, ctx);
  const auto pg = states::resolvent_one_point(mu_scalar, g, state, ctx);
  rep.product = pf.value * pg.value;
  for (double u : u_list) {
    const auto tp =
        states::resolvent_two_point_shifted(lambda, f, mu_scalar, g, state,
                                            ctx, u);
    ClusteringPoint pt;
    pt.u = u;
    pt.gap = std::abs(tp.value - rep.product);
    pt.converged = tp.converged;
    rep.table.push_back(pt);
  }
  // u -> inf limit: the oscillatory nonzero-mode cross terms vanish; the
  // zero-mode cross term of the mixed state survives untouched.
  auto limit_kernel = states::two_point_kernel(f, g, state, ctx, 0.0);
  limit_kernel.symplectic = 0.0;
  if (std::holds_alternative<states::Bec>(state)) {
    limit_kernel.cross_re = forms::q_zero_cross(f, g, ctx).real();
  } else {
    limit_kernel.cross_re = 0.0;
  }
  rep.limit_value =
      states::resolvent_two_point_from_kernel(lambda, mu_scalar, limit_kernel)
          .value;
  rep.asymptotic_gap = std::abs(rep.limit_value - rep.product);
  return rep;
}

ErgodicReport ergodic_mc_check(const std::vector<TestFunction>& f_grid,
                               const FormContext& ctx,
                               std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 10000)
    throw std::invalid_argument("ergodic_mc_check: need n_samples >= 10^4");
  ErgodicReport rep;
  const double c = ctx.c_const();
  int fn = 0;
  for (const auto& f : f_grid) {
    const double qnz = forms::q_nonzero_continuum(f, ctx).value;
    const double qb = qnz + forms::q_zero(f, ctx).value;
    const cplx z = f.f_hat_zero;
    const double sigma = std::sqrt(0.5 * qnz);
    auto integrand = [&](double r, double theta, num::Rng& rng) -> cplx {
      const cplx rot(std::cos(theta), std::sin(theta));
      const double ell = std::sqrt(c * r) * (rot * z).real();
      const double x = sigma * rng.normal() + ell;
      return cplx(std::cos(x), std::sin(x));
    };
    // two-stage sampling with fixed shard layout
    constexpr int kShards = 16;
    const std::uint64_t per = n_samples / kShards;
    const std::uint64_t rem = n_samples % kShards;
    std::vector<double> sr(kShards), si(kShards), s2(kShards);
    auto job = [&](int shard) -> double {
      num::Rng rng(num::substream_seed(seed + 977 * fn, shard));
      const std::uint64_t m = per + (std::uint64_t(shard) < rem ? 1 : 0);
      double a = 0.0, b = 0.0, q2 = 0.0;
      for (std::uint64_t i = 0; i < m; ++i) {
        const double r = rng.exponential();
        const double theta = num::two_pi * rng.uniform();
        const cplx v = integrand(r, theta, rng);
        a += v.real();
        b += v.imag();
        q2 += std::norm(v);
      }
      sr[shard] = a;
      si[shard] = b;
      s2[shard] = q2;
      return 0.0;
    };
    num::run_shards(kShards, job);
    ErgodicFunctionReport fr;
    fr.empirical = cplx(num::pairwise_sum(std::span<const double>(sr)) / n_samples,
                        num::pairwise_sum(std::span<const double>(si)) / n_samples);
    fr.analytic = cplx(std::exp(-0.25 * qb), 0.0);
    const double var = std::max(
        0.0, num::pairwise_sum(std::span<const double>(s2)) / n_samples -
                 std::norm(fr.empirical));
    fr.standard_error = std::sqrt(var / double(n_samples));
    fr.gap = std::abs(fr.empirical - fr.analytic);
    fr.within_4se = fr.gap <= 4.0 * std::max(fr.standard_error, 1e-300);
    rep.all_within_4se &= fr.within_4se;
    rep.per_function.push_back(fr);
    ++fn;
  }
  return rep;
}

}  // namespace bosegas::decomposition

#include "bosegas/suite.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <chrono>
#include <cmath>
#include <sstream>

#include "bosegas/decomposition.hpp"
#include "bosegas/order_param.hpp"
#include "bosegas/quasilocal.hpp"

namespace bosegas::suite {

namespace {

using clock_t_ = std::chrono::steady_clock;

double elapsed(clock_t_::time_point t0) {
  return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

TestFunction gauss(double c_re, double c_im, double sigma, double cx = 0.0,
                   double cy = 0.0, double cz = 0.0) {
  return TestFunction::from_gaussians(
      {GaussianTerm{cplx(c_re, c_im), sigma, {cx, cy, cz}}});
}

// series value of the critical density for h = |k|^s in d dimensions:
// Gamma(d/s) zeta(d/s) S_{d-1} / (s (2 pi)^d beta^{d/s})
double critical_density_series(double beta, int d, double s) {
  const double a = d / s;
  const double surface = d == 3   ? 4.0 * num::pi
                         : d == 2 ? num::two_pi
                                  : 2.0;
  return surface * std::tgamma(a) * boost::math::zeta(a) /
         (s * std::pow(num::two_pi, d) * std::pow(beta, a));
}

CheckResult check_matsubara() {
  const auto t0 = clock_t_::now();
  CheckResult res{"matsubara-identity", false, 0.0, 1e-4, "", 0.0};
  double worst = 0.0;
  bool halving = true;
  std::ostringstream detail;
  for (double t : {0.0, 0.25, 0.5}) {
    const auto m1 = pathspace::matsubara_sum(t, 1.0, 1.0, 10000);
    const auto m2 = pathspace::matsubara_sum(t, 1.0, 1.0, 20000);
    worst = std::max(worst, m1.gap / std::abs(m1.closed_form));
    halving = halving && (m2.gap <= 0.6 * m1.gap);
  }
  // closed forms against their elementary expressions
  const double g0 = pathspace::sharp_time_kernel(0.0, 1.0, 1.0);
  const double coth_half = (1.0 + std::exp(-1.0)) / (1.0 - std::exp(-1.0));
  const double g_half = pathspace::sharp_time_kernel(0.5, 1.0, 1.0);
  const double ref_half = std::exp(-0.5) / (1.0 - std::exp(-1.0));
  const double closed_gap = std::max(std::abs(g0 - 0.5 * coth_half),
                                     std::abs(g_half - ref_half));
  detail << "max rel gap at N=1e4: " << worst
         << ", doubled-N halving: " << (halving ? "yes" : "no")
         << ", closed-form check: " << closed_gap;
  res.metric = worst;
  res.passed = worst <= res.tolerance && halving && closed_gap < 1e-14;
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_critical_density() {
  const auto t0 = clock_t_::now();
  CheckResult res{"critical-density", false, 0.0, 1e-6, "", 0.0};
  const double q2 = thermo::critical_density(1.0, 3, 2.0).value;
  const double o2 = critical_density_series(1.0, 3, 2.0);
  const double q1 = thermo::critical_density(1.0, 3, 1.0).value;
  const double o1 = critical_density_series(1.0, 3, 1.0);
  const double rel2 = std::abs(q2 - o2) / o2;
  const double rel1 = std::abs(q1 - o1) / o1;
  res.metric = std::max(rel1, rel2);
  res.passed = res.metric <= res.tolerance;
  std::ostringstream detail;
  detail << "s=2: " << q2 << " vs " << o2 << " (rel " << rel2
         << "); s=1: " << q1 << " vs " << o1 << " (rel " << rel1 << ")";
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_order_parameter() {
  const auto t0 = clock_t_::now();
  CheckResult res{"order-parameter-equivalence", false, 0.0, 1e-6, "", 0.0};
  const double rho_c_oracle = critical_density_series(1.0, 3, 2.0);
  const std::vector<double> chain{4.0, 8.0, 16.0};
  bool verdicts_ok = true;
  std::ostringstream detail;

  ModelParams low;
  low.d = 3;
  low.s = 2.0;
  low.beta = 1.0;
  low.rho_bar = 0.5 * rho_c_oracle;
  const auto trace_low = order_param::detect_bec(low, chain);
  verdicts_ok &= trace_low.verdict == order_param::Verdict::no_bec;

  ModelParams high = low;
  high.rho_bar = 2.0 * rho_c_oracle;
  const auto trace_high = order_param::detect_bec(high, chain);
  verdicts_ok &= trace_high.verdict == order_param::Verdict::bec;

  const double o1_ref =
      order_param::order_parameter_integral(2.0 * (high.rho_bar - rho_c_oracle));
  const double gap = std::abs(trace_high.o1_limit - o1_ref);
  res.metric = gap;
  res.passed = verdicts_ok && gap <= res.tolerance;
  detail << "verdicts: " << order_param::to_string(trace_low.verdict) << "/"
         << order_param::to_string(trace_high.verdict)
         << ", o1-limit " << trace_high.o1_limit << " vs erfc form " << o1_ref
         << " (gap " << gap << ")";
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

forms::FormContext condensed_context() {
  // d=3, s=2, beta=1, rho_bar = 2 rho_c: the workhorse condensed phase
  const auto crit = thermo::condensate_density(
      1.0, 2.0 * thermo::critical_density(1.0, 3, 2.0).value, 3, 2.0);
  forms::FormContext ctx;
  ctx.beta = 1.0;
  ctx.mu = 0.0;
  ctx.d = 3;
  ctx.s = 2.0;
  ctx.n0 = crit.n0;
  return ctx;
}

std::vector<TestFunction> mixing_grid() {
  std::vector<TestFunction> grid;
  grid.push_back(gauss(1.0, 0.0, 1.0));
  grid.push_back(gauss(0.5, 0.0, 2.0));
  grid.push_back(gauss(0.0, 1.0, 1.0));
  grid.push_back(gauss(0.3, 0.4, 0.7));
  grid.push_back(gauss(-0.8, 0.2, 1.5));
  grid.push_back(gauss(0.05, 0.0, 0.4));
  grid.push_back(gauss(1.3, -0.7, 2.5));
  grid.push_back(gauss(0.0, -0.6, 1.1));
  grid.push_back(gauss(0.9, 0.9, 3.0));
  grid.push_back(TestFunction::from_gaussians(
      {GaussianTerm{cplx(0.6, 0.0), 1.0, {0.0, 0.0, 0.0}},
       GaussianTerm{cplx(0.2, -0.3), 2.0, {0.5, 0.0, 0.0}}}));
  return grid;
}

CheckResult check_mixing(std::uint64_t seed) {
  const auto t0 = clock_t_::now();
  CheckResult res{"chi-mixing-identity", false, 0.0, 1e-8, "", 0.0};
  const auto ctx = condensed_context();
  double worst_quad = 0.0, worst_mc_pulls = 0.0;
  bool mc_ok = true;
  int idx = 0;
  for (const auto& f : mixing_grid()) {
    const auto rep = decomposition::verify_mixing_identity(
        f, ctx, 1000000, seed + idx);
    worst_quad = std::max(worst_quad, rep.abs_gap);
    const double pulls = rep.mc_gap / std::max(rep.mc_standard_error, 1e-300);
    worst_mc_pulls = std::max(worst_mc_pulls, pulls);
    mc_ok &= pulls <= 4.0;
    ++idx;
  }
  res.metric = worst_quad;
  res.passed = worst_quad <= res.tolerance && mc_ok;
  std::ostringstream detail;
  detail << "worst quadrature gap " << worst_quad << ", worst MC pull "
         << worst_mc_pulls << " se";
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_decomposition() {
  const auto t0 = clock_t_::now();
  CheckResult res{"direct-integral-decomposition", false, 0.0, 1e-5, "", 0.0};
  const auto ctx = condensed_context();
  struct Config {
    TestFunction f, g;
    double lambda, mu;
  };
  std::vector<Config> configs;
  configs.push_back({gauss(1.0, 0.0, 1.0), gauss(1.0, 0.0, 1.0), 1.0, 1.0});
  configs.push_back({gauss(0.7, 0.0, 1.5), gauss(0.4, 0.3, 0.8), 1.0, 2.0});
  configs.push_back({gauss(0.5, 0.5, 1.0), gauss(0.6, 0.0, 2.0), 0.7, 1.3});
  configs.push_back(
      {gauss(0.8, 0.0, 1.2, 0.4), gauss(0.5, -0.2, 0.9), 2.0, 0.5});
  configs.push_back({gauss(0.6, 0.0, 1.0), gauss(0.6, 0.0, 1.0), -1.0, 1.0});
  double worst = 0.0;
  bool all_converged = true;
  for (const auto& c : configs) {
    const auto gap =
        decomposition::decompose_two_point(c.lambda, c.f, c.mu, c.g, ctx);
    worst = std::max(worst, gap.gap);
    all_converged &= gap.direct.converged && gap.decomposed.converged;
  }
  res.metric = worst;
  res.passed = worst <= res.tolerance && all_converged;
  std::ostringstream detail;
  detail << "worst |direct - decomposed| over " << configs.size()
         << " configurations: " << worst;
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_gauge_orbit() {
  const auto t0 = clock_t_::now();
  CheckResult res{"gauge-orbit", false, 0.0, 1e-12, "", 0.0};
  const auto ctx = condensed_context();
  const auto grid = mixing_grid();
  double worst_orbit = 0.0;
  for (double r : {0.3, 1.0, 2.7})
    for (double theta : {0.0, 1.1, 4.0})
      for (double theta0 : {0.0, 0.7, num::pi, num::two_pi})
        worst_orbit = std::max(
            worst_orbit,
            decomposition::gauge_orbit_check(r, theta, theta0, grid, ctx));
  double worst_avg = 0.0;
  for (double theta0 : {0.9, 2.4})
    worst_avg = std::max(worst_avg, decomposition::gauge_invariance_of_mixture(
                                        theta0, grid[0], ctx));
  res.metric = worst_orbit;
  res.passed = worst_orbit <= res.tolerance && worst_avg <= 1e-10;
  std::ostringstream detail;
  detail << "orbit deviation " << worst_orbit << ", chi-averaged invariance "
         << worst_avg;
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_clustering() {
  const auto t0 = clock_t_::now();
  CheckResult res{"clustering-dichotomy", false, 0.0, 1e-2, "", 0.0};
  const auto ctx = condensed_context();
  const std::vector<double> u_list{0.0, 10.0, 100.0, 1000.0};
  std::ostringstream detail;
  bool ok = true;

  // component state: factorization tail decays
  const auto f = gauss(1.0, 0.0, 1.0);
  const auto g = gauss(0.8, 0.0, 1.3);
  const auto comp = decomposition::clustering_scan(
      f, g, states::ComponentLabel(1.2, 0.6), u_list, ctx);
  const double comp_ratio = comp.table.back().gap / comp.table[0].gap;
  ok &= comp_ratio < 1e-2;
  detail << "component gap ratio u=1e3/u=0: " << comp_ratio;

  // mixed state: the zero-mode cross term persists
  const auto mixed =
      decomposition::clustering_scan(f, g, states::Bec{}, u_list, ctx);
  ok &= mixed.asymptotic_gap > 1e-3;
  const double limit_match =
      std::abs(mixed.table.back().gap - mixed.asymptotic_gap);
  ok &= limit_match <= 1e-4;
  detail << "; mixed asymptotic gap " << mixed.asymptotic_gap
         << ", u=1e3 vs limit " << limit_match;

  // kernel of the zero-mode form: clustering restored
  auto f0 = TestFunction::from_gaussians(
      {GaussianTerm{cplx(1.0, 0.0), 1.0, {0.0, 0.0, 0.0}},
       GaussianTerm{cplx(-1.0, 0.0), 2.0, {0.0, 0.0, 0.0}}});
  auto g0 = TestFunction::from_gaussians(
      {GaussianTerm{cplx(0.7, 0.0), 0.8, {0.0, 0.0, 0.0}},
       GaussianTerm{cplx(-0.7, 0.0), 1.6, {0.0, 0.0, 0.0}}});
  const auto ker = decomposition::clustering_scan(f0, g0, states::Bec{},
                                                  u_list, ctx);
  bool decreasing = true;
  for (std::size_t i = 1; i < ker.table.size(); ++i)
    decreasing &= ker.table[i].gap < ker.table[i - 1].gap;
  const double ker_ratio = ker.table.back().gap / ker.table[0].gap;
  ok &= decreasing && ker_ratio < 1e-2;
  detail << "; kernel-case ratio " << ker_ratio;

  res.metric = comp_ratio;
  res.passed = ok;
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_markov() {
  const auto t0 = clock_t_::now();
  CheckResult res{"markov-structure", false, 0.0, 1e-10, "", 0.0};
  double worst = 0.0;
  for (int n : {1, 2}) {
    for (double eps : {0.9, 1.7}) {
      const auto path = pathspace::Path::matsubara_mode(1.0, eps, n);
      const auto rep = pathspace::markov_identity_check(path, 512);
      worst = std::max({worst, rep.projection_composition_gap,
                        rep.q_identity_gap, rep.idempotency_gap,
                        rep.reflection_gap});
    }
  }
  res.metric = worst;
  res.passed = worst <= res.tolerance;
  std::ostringstream detail;
  detail << "worst of composition/q-identity/idempotency/reflection: "
         << worst;
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_trace_condition() {
  const auto t0 = clock_t_::now();
  CheckResult res{"trace-condition", false, 0.0, 0.0, "", 0.0};
  using pathspace::TraceVerdict;
  const auto a = pathspace::trace_condition_check(3, 1.0, 1.0, 2.0, 0.0);
  const auto b = pathspace::trace_condition_check(3, 2.0, 1.0, 2.0, 1.0);
  const auto c = pathspace::trace_condition_check(3, 2.0, 1.0, 2.0, 0.5);
  const bool ok = a.verdict == TraceVerdict::converged &&
                  b.verdict == TraceVerdict::converged &&
                  c.verdict == TraceVerdict::diverging;
  res.passed = ok;
  res.metric = ok ? 0.0 : 1.0;
  std::ostringstream detail;
  detail << "(s=1,a=0): " << (a.verdict == TraceVerdict::converged ? "converged" : "diverging")
         << ", (s=2,a=1): " << (b.verdict == TraceVerdict::converged ? "converged" : "diverging")
         << ", boundary a=1/2: " << (c.verdict == TraceVerdict::diverging ? "diverging" : "converged");
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

pathspace::PathSpaceSpec small_spec() {
  pathspace::PathSpaceSpec spec;
  spec.beta = 1.0;
  spec.s = 2.0;
  spec.d = 3;
  spec.n_mats = 3;
  spec.lattice = build_lattice(2.0 * num::pi, 1.5, 3);  // 7 modes, 6 nonzero
  spec.r_reg = 1.0;
  spec.u_reg = 2.0;
  spec.a_reg = 1.0;
  return spec;
}

CheckResult check_euclidean() {
  const auto t0 = clock_t_::now();
  CheckResult res{"euclidean-correlation", false, 0.0, 1e-10, "", 0.0};
  const auto spec = small_spec();
  const auto modes = pathspace::sharp_time_modes(spec);
  const std::size_t M = modes.size();
  std::vector<double> g1(M, 0.0), g2(M, 0.0), g3(M, 0.0);
  g1[0] = 1.0;
  g1[M - 1] = 1.0;  // pairs under negation keep vectors real
  g2[1] = 0.7;
  g2[M - 2] = 0.7;
  g3[2] = -0.4;
  g3[M - 3] = -0.4;
  double worst = 0.0;
  const auto r1 = pathspace::euclidean_correlation({0.2}, {g1}, spec);
  worst = std::max(worst, r1.gap);
  const auto r2 =
      pathspace::euclidean_correlation({0.1, 0.35}, {g1, g2}, spec);
  worst = std::max(worst, r2.gap);
  const auto r3 = pathspace::euclidean_correlation({0.05, 0.2, 0.45},
                                                   {g1, g2, g3}, spec);
  worst = std::max(worst, r3.gap);
  res.metric = worst;
  res.passed = worst <= res.tolerance;
  std::ostringstream detail;
  detail << "worst |gaussian - thermal| over n=1,2,3 insertions: " << worst;
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_quasilocal(std::uint64_t seed) {
  const auto t0 = clock_t_::now();
  CheckResult res{"quasi-local-consistency", false, 0.0, 1e-14, "", 0.0};
  quasilocal::ProjectiveChain chain;
  chain.L0 = num::two_pi;
  chain.ratios = {2, 2};
  chain.beta = 1.0;
  chain.s = 2.0;
  chain.d = 3;
  chain.n_mats = 2;
  chain.k_max = 1.5;
  // real-constrained cylinder vectors at the base level
  const auto spec0 = chain.spec_at(0);
  std::vector<quasilocal::Coefficients> grid;
  {
    quasilocal::Coefficients f;
    ModeIndex k{{1, 0, 0}};
    f[{1, k}] = cplx(0.5, 0.25);
    f[{-1, k.negated()}] = std::conj(cplx(0.5, 0.25));
    grid.push_back(f);
  }
  {
    quasilocal::Coefficients f;
    ModeIndex k{{0, 1, 0}};
    f[{0, k}] = cplx(1.0, -0.5);
    f[{0, k.negated()}] = std::conj(cplx(1.0, -0.5));
    f[{2, k}] = cplx(0.25, 0.0);
    f[{-2, k.negated()}] = cplx(0.25, 0.0);
    grid.push_back(f);
  }
  const auto rep =
      quasilocal::consistency_check(chain, grid, 100000, seed + 31);
  const double worst_algebraic =
      std::max({rep.composition_gap, rep.adjoint_gap, rep.intertwining_gap,
                rep.char_functional_gap, rep.translation_commute_gap,
                rep.reflection_commute_gap});
  const auto marg = quasilocal::projective_marginals(chain, grid);
  res.metric = std::max(worst_algebraic, marg.max_covariance_gap);
  res.passed = res.metric <= res.tolerance && rep.empirical_within_4se;
  std::ostringstream detail;
  detail << "worst algebraic gap " << worst_algebraic << ", marginals "
         << marg.max_covariance_gap << ", empirical pull "
         << rep.empirical_gap_over_se << " se";
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_sampler(std::uint64_t seed) {
  const auto t0 = clock_t_::now();
  CheckResult res{"sampler-validation", false, 0.0, 4.0, "", 0.0};
  const auto spec = small_spec();
  const auto modes = spec.gaussian_modes();
  // real-constrained test vectors
  auto real_vec = [&](const pathspace::NK& nk, cplx c) {
    std::vector<cplx> v(modes.size(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (modes[i] == nk) v[i] += c;
      if (modes[i] == nk.negated()) v[i] += std::conj(c);
    }
    return v;
  };
  const auto f = real_vec({1, ModeIndex{{1, 0, 0}}}, cplx(0.8, 0.3));
  const auto g = real_vec({0, ModeIndex{{0, 1, 0}}}, cplx(1.0, 0.0));
  const std::uint64_t n = 100000;
  double worst_pull = 0.0;
  auto pull = [&](const pathspace::SamplerCheck& chk) {
    return std::abs(chk.empirical - chk.analytic) /
           std::max(chk.standard_error, 1e-300);
  };
  const auto cov_ff = pathspace::sampler_covariance_check(spec, seed + 1, n, f, f);
  const auto cov_fg = pathspace::sampler_covariance_check(spec, seed + 2, n, f, g);
  const auto chf = pathspace::sampler_char_check(spec, seed + 3, n, f);
  const auto chu = pathspace::sampler_char_check(
      spec, seed + 3, n, f, pathspace::SampleTransform::time_translation, 0.31);
  const auto chr = pathspace::sampler_char_check(
      spec, seed + 3, n, f, pathspace::SampleTransform::reflection);
  for (const auto& chk : {cov_ff, cov_fg, chf, chu, chr})
    worst_pull = std::max(worst_pull, pull(chk));
  res.metric = worst_pull;
  res.passed = worst_pull <= res.tolerance;
  std::ostringstream detail;
  detail << "worst pull over covariance/characteristic/invariance checks: "
         << worst_pull << " se at n=" << n;
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

CheckResult check_regularity(std::uint64_t seed) {
  const auto t0 = clock_t_::now();
  CheckResult res{"regularity-positivity", false, 0.0, 0.0, "", 0.0};
  const auto ctx = condensed_context();
  num::Rng rng(seed + 4242);
  bool ok = true;
  double min_value = 1e300, min_third = 1e300;
  for (int i = 0; i < 10; ++i) {
    const auto f = gauss(0.3 + rng.uniform(), rng.uniform() - 0.5,
                         0.5 + 2.0 * rng.uniform(), rng.uniform() - 0.5);
    const auto g = gauss(0.3 + rng.uniform(), rng.uniform() - 0.5,
                         0.5 + 2.0 * rng.uniform());
    const double lambda = 0.5 + rng.uniform();
    const double mu = 0.5 + rng.uniform();
    const auto fp = states::fourpoint_positivity(lambda, f, mu, g,
                                                 states::Bec{}, ctx);
    min_value = std::min(min_value, fp.value);
    min_third = std::min(min_third, fp.third_term);
    ok &= fp.value >= 0.0 && fp.third_term > 0.0 && fp.converged;
  }
  res.metric = min_value;
  res.passed = ok;
  std::ostringstream detail;
  detail << "min combination " << min_value << ", min third term "
         << min_third << " over 10 random configurations";
  res.detail = detail.str();
  res.seconds = elapsed(t0);
  return res;
}

}  // namespace

std::vector<CheckResult> run_full_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_matsubara());
  out.push_back(check_critical_density());
  out.push_back(check_order_parameter());
  out.push_back(check_mixing(seed));
  out.push_back(check_decomposition());
  out.push_back(check_gauge_orbit());
  out.push_back(check_clustering());
  out.push_back(check_markov());
  out.push_back(check_trace_condition());
  out.push_back(check_euclidean());
  out.push_back(check_quasilocal(seed));
  out.push_back(check_sampler(seed));
  out.push_back(check_regularity(seed));
  return out;
}

}  // namespace bosegas::suite

#include "bosegas/order_param.hpp"

#include <cmath>
#include <stdexcept>

namespace bosegas::order_param {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bec: return "BEC";
    case Verdict::no_bec: return "no-BEC";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

double order_parameter_integral(double A) {
  if (A < 0.0) throw std::domain_error("order_parameter_integral: A < 0");
  return num::gaussian_laplace(1.0, A);
}

double order_parameter_finite_L(int sharpness, const ModelParams& params,
                                const thermo::ThermoSolution& sol) {
  if (sharpness != 0 && sharpness != 1)
    throw std::invalid_argument("order parameter sharpness must be 0 or 1");
  if (!(sol.y_V > 1.0))
    throw std::domain_error("order_parameter_finite_L: y_V <= 1");
  const double V = params.volume();
  const double A = sharpness == 0
                       ? (sol.y_V + 1.0) / (sol.y_V - 1.0)
                       : (sol.y_V + 1.0) * sol.N_0 / V;
  return order_parameter_integral(A);
}

double order_parameter_finite_L(int sharpness, const ModelParams& params,
                                const LatticeModes& lattice) {
  const auto sol = thermo::solve_fugacity(params, lattice);
  return order_parameter_finite_L(sharpness, params, sol);
}

OrderParameterTrace detect_bec(const ModelParams& params,
                               const std::vector<double>& L_chain,
                               double k_max) {
  if (L_chain.size() < 3)
    throw std::invalid_argument("detect_bec: need a chain of >= 3 volumes");
  if (k_max <= 0.0) k_max = thermo::default_k_max(params.beta, params.s);

  OrderParameterTrace tr;
  for (double L : L_chain) {
    ModelParams p = params;
    p.L = L;
    const auto lattice = build_lattice(L, k_max, params.d);
    const auto sol = thermo::solve_fugacity(p, lattice);
    ChainPoint pt;
    pt.L = L;
    pt.y_V = sol.y_V;
    pt.o0 = order_parameter_finite_L(0, p, sol);
    pt.o1 = order_parameter_finite_L(1, p, sol);
    tr.points.push_back(pt);
  }

  const auto crit =
      thermo::condensate_density(params.beta, params.rho_bar, params.d, params.s);
  tr.n0 = crit.n0;
  tr.rho_c = crit.rho_c;
  tr.y_inf = crit.y_inf;
  const bool thermo_bec = crit.n0 > 0.0;

  // limits of the defining integrals: in the condensed phase the o0
  // coefficient diverges with V and the o1 coefficient tends to 2 n0;
  // otherwise y_V -> y_inf > 1 pins o0 and sends the o1 coefficient to 0.
  if (thermo_bec) {
    tr.o0_limit = 0.0;
    tr.o1_limit = order_parameter_integral(2.0 * crit.n0);
  } else {
    tr.o0_limit =
        order_parameter_integral((crit.y_inf + 1.0) / (crit.y_inf - 1.0));
    tr.o1_limit = 1.0;
  }

  // trend checks on the finite chain
  const auto& p0 = tr.points;
  bool o0_decreasing = true, o1_decreasing = true, o1_increasing = true;
  for (std::size_t i = 1; i < p0.size(); ++i) {
    o0_decreasing &= p0[i].o0 < p0[i - 1].o0;
    o1_decreasing &= p0[i].o1 < p0[i - 1].o1;
    o1_increasing &= p0[i].o1 > p0[i - 1].o1;
  }
  // in the condensed phase o0 falls like V^{-1/2}; without condensation it
  // stabilizes at a positive value
  const double last_ratio = p0.back().o0 / p0[p0.size() - 2].o0;
  const bool o0_collapsing = o0_decreasing && last_ratio < 0.75;
  const bool o0_stabilizing = last_ratio > 0.75;

  if (thermo_bec) {
    tr.o0_consistent = o0_collapsing;
    tr.o1_consistent = o1_decreasing && p0.back().o1 < 1.0;
  } else {
    tr.o0_consistent = o0_stabilizing && p0.back().o0 > 0.0;
    tr.o1_consistent = o1_increasing && p0.back().o1 < 1.0;
  }

  if (tr.o0_consistent && tr.o1_consistent)
    tr.verdict = thermo_bec ? Verdict::bec : Verdict::no_bec;
  else
    tr.verdict = Verdict::inconclusive;
  return tr;
}

double commutator_bound(double L, const TestFunction& f, double lambda,
                        int d) {
  if (lambda == 0.0)
    throw std::domain_error("commutator_bound: lambda must be nonzero");
  const double V = std::pow(L, d);
  return forms::l1_norm_bound(f, d) / (std::sqrt(V) * lambda * lambda);
}

double fiber_norm_bound(double r, double theta, double L,
                        const forms::FormContext& ctx) {
  const double V = std::pow(L, ctx.d);
  const double ell = std::sqrt(ctx.c_const() * r) * std::cos(theta) *
                     std::pow(num::two_pi, -0.5 * ctx.d) * std::sqrt(V);
  return 1.0 / std::sqrt(1.0 + ell * ell);
}

double fiber_norm_bound_chi_average(double L, const forms::FormContext& ctx) {
  // Gauss-Laguerre in r, trapezoid in theta
  const auto& q = num::gauss_laguerre(96);
  std::vector<double> terms(q.x.size());
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const double r = q.x[i];
    const auto th = num::trapezoid_periodic(
        [&](double theta) {
          return cplx(fiber_norm_bound(r, theta, L, ctx), 0.0);
        },
        256);
    terms[i] = q.w[i] * th.real() / num::two_pi;
  }
  return num::pairwise_sum(std::span<const double>(terms));
}

cplx central_element(double r, double theta, const forms::FormContext& ctx) {
  if (r < 0.0) throw std::invalid_argument("central_element: r must be >= 0");
  const double a = 2.0 * std::sqrt(ctx.c_const());
  const cplx z(1.0, -a * std::sqrt(r) * std::cos(theta));
  return 1.0 / (cplx(0.0, 1.0) * z);
}

}  // namespace bosegas::order_param

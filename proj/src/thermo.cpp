#include "bosegas/thermo.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace bosegas::thermo {

namespace {

double surface_area(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return num::two_pi;
    case 3: return 4.0 * num::pi;
  }
  throw std::invalid_argument("surface_area: d must be 1, 2 or 3");
}

// int_{r0}^inf r^{d-1} e^{-m beta r^s} dr = Gamma(d/s, m beta r0^s) / (s (m beta)^{d/s})
double radial_exp_tail(int d, double s, double mbeta, double r0) {
  const double a = d / s;
  const double x = mbeta * std::pow(r0, s);
  return boost::math::tgamma(a, x) / (s * std::pow(mbeta, a));
}

}  // namespace

double default_k_max(double beta, double s, double target) {
  return std::pow(target / beta, 1.0 / s);
}

ParticleNumber mean_particle_number(const ModelParams& params,
                                    const LatticeModes& lattice, double y) {
  if (!(y > 1.0))
    throw std::domain_error(
        "mean_particle_number: y <= 1 makes the zero mode diverge");
  ParticleNumber out;
  std::vector<double> terms;
  terms.reserve(lattice.modes.size());
  for (const auto& m : lattice.modes) {
    const double h = dispersion_radial(lattice.mode_norm(m), params.s);
    terms.push_back(1.0 / (y * std::exp(params.beta * h) - 1.0));
  }
  out.N_V = num::pairwise_sum(std::span<const double>(terms));
  out.N_0 = 1.0 / (y - 1.0);
  out.N_remainder = out.N_V - out.N_0;
  // modes beyond the cutoff: first term of the geometric series, continuum
  // approximation of the lattice sum
  const double V = params.volume();
  out.tail_estimate = V * std::pow(num::two_pi, -params.d) *
                      surface_area(params.d) / y *
                      radial_exp_tail(params.d, params.s, params.beta,
                                      lattice.k_max);
  return out;
}

ThermoSolution solve_fugacity(const ModelParams& params,
                              const LatticeModes& lattice, double rho_tol) {
  params.validate();
  if (!lattice.contains_zero())
    throw std::invalid_argument("solve_fugacity: lattice must contain k = 0");
  const double V = params.volume();
  // cache dispersion factors once; bisection only re-evaluates the sum
  std::vector<double> boltz;
  boltz.reserve(lattice.modes.size());
  for (const auto& m : lattice.modes)
    boltz.push_back(
        std::exp(params.beta *
                 dispersion_radial(lattice.mode_norm(m), params.s)));
  auto rho_of = [&](double y) {
    std::vector<double> terms(boltz.size());
    for (std::size_t i = 0; i < boltz.size(); ++i)
      terms[i] = 1.0 / (y * boltz[i] - 1.0);
    return num::pairwise_sum(std::span<const double>(terms)) / V;
  };
  double lo = 1.0 + 1e-15;
  double hi = 2.0;
  while (rho_of(hi) > params.rho_bar) {
    hi *= 2.0;
    if (hi > 1e12)
      throw std::runtime_error("solve_fugacity: bracketing overflow");
  }
  // rho(lo) > rho_bar is guaranteed: the zero mode alone gives 1/(V(y-1))
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r = rho_of(mid);
    if (r > params.rho_bar)
      lo = mid;
    else
      hi = mid;
    if (std::abs(r - params.rho_bar) <= rho_tol * params.rho_bar) break;
  }
  ThermoSolution sol;
  sol.y_V = 0.5 * (lo + hi);
  const auto pn = mean_particle_number(params, lattice, sol.y_V);
  sol.N_V = pn.N_V;
  sol.N_0 = pn.N_0;
  sol.rho_V = pn.N_V / V;
  sol.residual = std::abs(sol.rho_V - params.rho_bar);
  sol.tail_estimate = pn.tail_estimate;
  return sol;
}

Density continuum_density(double beta, double y, int d, double s) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (y < 1.0) throw std::domain_error("continuum_density: y < 1");
  if (y == 1.0 && !(double(d) / s > 1.0))
    throw std::domain_error(
        "continuum_density: integral diverges at y = 1 unless d/s > 1");
  const double pref = std::pow(num::two_pi, -d) * surface_area(d);
  const double r_star = std::pow(30.0 / beta, 1.0 / s);

  // near region [0, r_star]: subtract the y = 1 small-k singular part
  // 1/(y e^x - 1) with x = beta r^s; for y = 1 split off r^{d-1-s}/beta.
  auto integrand = [&](double r) {
    const double x = beta * dispersion_radial(r, s);
    return std::pow(r, d - 1) / (y * std::exp(x) - 1.0);
  };
  double near = 0.0;
  if (y == 1.0) {
    // r^{d-1} [1/(e^x - 1) - 1/x] is smooth in r^s; add the analytic part.
    auto smooth = [&](double r) {
      const double x = beta * dispersion_radial(r, s);
      double core;
      if (x < 1e-4) {
        // 1/(e^x-1) - 1/x = -1/2 + x/12 - x^3/720 + ...
        core = -0.5 + x / 12.0 - x * x * x / 720.0;
      } else {
        core = 1.0 / std::expm1(x) - 1.0 / x;
      }
      return std::pow(r, d - 1) * core;
    };
    const int panels = 64;
    std::vector<double> vals(panels);
    for (int p = 0; p < panels; ++p) {
      const double a = r_star * p / panels, b = r_star * (p + 1) / panels;
      vals[p] = num::integrate_gl(smooth, a, b, 24);
    }
    near = num::pairwise_sum(std::span<const double>(vals));
    near += std::pow(r_star, d - s) / (beta * (d - s));
  } else {
    const int panels = 64;
    std::vector<double> vals(panels);
    for (int p = 0; p < panels; ++p) {
      const double a = r_star * p / panels, b = r_star * (p + 1) / panels;
      vals[p] = num::integrate_gl(integrand, a, b, 24);
    }
    near = num::pairwise_sum(std::span<const double>(vals));
  }

  // far region: geometric series sum_m y^{-m} e^{-m beta r^s}; two terms
  // suffice beyond beta h = 30.
  double far = 0.0;
  for (int m = 1; m <= 3; ++m)
    far += std::pow(y, -m) * radial_exp_tail(d, s, m * beta, r_star);

  Density out;
  out.value = pref * (near + far);
  // error gauge: refine the near region once
  double near2 = 0.0;
  {
    const int panels = 128;
    std::vector<double> vals(panels);
    if (y == 1.0) {
      auto smooth = [&](double r) {
        const double x = beta * dispersion_radial(r, s);
        double core;
        if (x < 1e-4)
          core = -0.5 + x / 12.0 - x * x * x / 720.0;
        else
          core = 1.0 / std::expm1(x) - 1.0 / x;
        return std::pow(r, d - 1) * core;
      };
      for (int p = 0; p < panels; ++p) {
        const double a = r_star * p / panels, b = r_star * (p + 1) / panels;
        vals[p] = num::integrate_gl(smooth, a, b, 24);
      }
      near2 = num::pairwise_sum(std::span<const double>(vals)) +
              std::pow(r_star, d - s) / (beta * (d - s));
    } else {
      for (int p = 0; p < panels; ++p) {
        const double a = r_star * p / panels, b = r_star * (p + 1) / panels;
        vals[p] = num::integrate_gl(integrand, a, b, 24);
      }
      near2 = num::pairwise_sum(std::span<const double>(vals));
    }
  }
  out.error_estimate = pref * std::abs(near2 - near);
  out.value = pref * (near2 + far);
  return out;
}

Density critical_density(double beta, int d, double s) {
  if (!(double(d) / s > 1.0))
    throw std::domain_error(
        "critical_density: requires d/s > 1 for convergence");
  return continuum_density(beta, 1.0, d, s);
}

CriticalData condensate_density(double beta, double rho_bar, int d, double s) {
  CriticalData out;
  const Density rc = critical_density(beta, d, s);
  out.rho_c = rc.value;
  out.rho_c_error = rc.error_estimate;
  out.n0 = std::max(0.0, rho_bar - rc.value);
  out.y_inf = 1.0;
  if (out.n0 == 0.0 && rho_bar < rc.value) {
    // dilute phase: y_inf solves rho(beta, y) = rho_bar
    double lo = 1.0, hi = 2.0;
    while (continuum_density(beta, hi, d, s).value > rho_bar) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (continuum_density(beta, mid, d, s).value > rho_bar)
        lo = mid;
      else
        hi = mid;
    }
    out.y_inf = 0.5 * (lo + hi);
  }
  // beta_c solves rho_c(beta_c) = rho_bar; rho_c is decreasing in beta
  double blo = beta, bhi = beta;
  if (critical_density(beta, d, s).value > rho_bar) {
    // need larger beta to reduce rho_c
    while (critical_density(bhi, d, s).value > rho_bar) {
      bhi *= 2.0;
      if (bhi > 1e9)
        throw std::runtime_error(
            "condensate_density: beta_c bracket failed on [beta, 1e9]");
    }
  } else {
    while (critical_density(blo, d, s).value < rho_bar) {
      blo *= 0.5;
      if (blo < 1e-9)
        throw std::runtime_error(
            "condensate_density: beta_c bracket failed on [1e-9, beta]");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (blo + bhi);
    if (critical_density(mid, d, s).value > rho_bar)
      blo = mid;
    else
      bhi = mid;
  }
  out.beta_c = 0.5 * (blo + bhi);
  return out;
}

}  // namespace bosegas::thermo

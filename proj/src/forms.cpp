#include "bosegas/forms.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <stdexcept>

namespace bosegas::forms {

namespace {

// e^{-S(r^2+m^2)} times the angular average of e^{2 S r m cos(angle)} over
// S^{d-1} (surface measure included), combined so that separated centers
// never overflow: the product collapses to e^{-S(r -+ m)^2} terms.
double envelope_kernel(int d, double S, double r, double m) {
  const double x = 2.0 * S * r * m;
  switch (d) {
    case 1:
      return std::exp(-S * (r - m) * (r - m)) +
             std::exp(-S * (r + m) * (r + m));
    case 2: {
      if (x < 30.0)
        return num::two_pi * boost::math::cyl_bessel_i(0, x) *
               std::exp(-S * (r * r + m * m));
      // I0(x) e^{-x} asymptotics for large argument
      const double scaled =
          (1.0 + 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x)) /
          std::sqrt(num::two_pi * x);
      return num::two_pi * scaled * std::exp(-S * (r - m) * (r - m));
    }
    case 3:
      if (x < 1e-8)
        return 4.0 * num::pi * std::exp(-S * (r * r + m * m)) *
               (1.0 + x * x / 6.0);
      return num::pi / (S * r * m) *
             (std::exp(-S * (r - m) * (r - m)) -
              std::exp(-S * (r + m) * (r + m)));
  }
  throw std::invalid_argument("envelope_kernel: d must be 1, 2 or 3");
}

struct PairTerm {
  cplx amp;        // conj(c_f) c_g * exp(-sigma_f sigma_g |a-b|^2 / S)
  double S;        // sigma_f + sigma_g
  double m_norm;   // |(sigma_f a + sigma_g b) / S|
};

std::vector<PairTerm> gaussian_pairs(const TestFunction& f,
                                     const TestFunction& g) {
  if (!f.has_continuum() || !g.has_continuum())
    throw std::invalid_argument("continuum descriptor required");
  std::vector<PairTerm> out;
  for (const auto& tf : f.continuum)
    for (const auto& tg : g.continuum) {
      PairTerm p;
      p.S = tf.sigma + tg.sigma;
      double dist2 = 0.0, m2 = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double dx = tf.center[a] - tg.center[a];
        dist2 += dx * dx;
        const double m = (tf.sigma * tf.center[a] + tg.sigma * tg.center[a]) / p.S;
        m2 += m * m;
      }
      p.amp = std::conj(tf.c) * tg.c *
              std::exp(-tf.sigma * tg.sigma * dist2 / p.S);
      p.m_norm = std::sqrt(m2);
      out.push_back(p);
    }
  return out;
}

// sum over Gaussian pair terms of
//   amp * int_0^inf r^{d-1} W(r) e^{-S(r^2+|m|^2)} A_d(2 S r |m|) e^{i u r^s} dr
// Radial workhorse shared by q_nonzero_continuum, q_cross, inner_shifted.
CrossValue radial_pair_integral(const std::vector<PairTerm>& pairs, int d,
                                double s,
                                const std::function<double(double)>& weight,
                                double u, double abs_tol) {
  CrossValue out;
  cplx total{0.0, 0.0};
  double tail = 0.0;
  for (const auto& p : pairs) {
    if (std::abs(p.amp) == 0.0) continue;
    const double r_max = std::sqrt(45.0 / p.S) + p.m_norm;
    auto integrand = [&](double r) -> cplx {
      const double env = envelope_kernel(d, p.S, r, p.m_norm);
      if (env == 0.0) return {0.0, 0.0};
      const double w = weight(r);
      cplx phase{1.0, 0.0};
      if (u != 0.0) {
        const double arg = u * dispersion_radial(r, s);
        phase = cplx(std::cos(arg), std::sin(arg));
      }
      return std::pow(r, d - 1) * w * env * phase;
    };
    const auto q = num::panel_integrate(integrand, 0.0, r_max, abs_tol);
    if (!q.converged) out.converged = false;
    // doubled-range check stands in for the truncation tail
    const auto qt = num::panel_integrate(integrand, r_max, 2.0 * r_max,
                                         abs_tol, 4000);
    total += p.amp * (q.value + qt.value);
    tail += std::abs(p.amp) * (std::abs(qt.value) + q.error + qt.error);
  }
  out.value = total;
  out.tail_estimate = tail;
  return out;
}

}  // namespace

double thermal_weight(double h, double beta, double mu) {
  const double x = beta * (h - mu);
  if (x <= 0.0)
    throw std::domain_error("thermal_weight: beta (h - mu) must be > 0");
  // coth(x/2) = (1 + e^{-x}) / (1 - e^{-x}) = -(1 + e^{-x}) / expm1(-x)
  return -(1.0 + std::exp(-x)) / std::expm1(-x);
}

FormValue q_zero(const TestFunction& f, const FormContext& ctx) {
  if (!f.in_L1)
    throw std::domain_error(
        "q_zero: f is not in L1, the zero-mode form is undefined on it");
  FormValue v;
  v.value = ctx.c_const() * std::norm(f.f_hat_zero);
  return v;
}

cplx q_zero_cross(const TestFunction& f, const TestFunction& g,
                  const FormContext& ctx) {
  if (!f.in_L1 || !g.in_L1)
    throw std::domain_error("q_zero_cross: arguments must be in L1");
  return ctx.c_const() * std::conj(f.f_hat_zero) * g.f_hat_zero;
}

FormValue q_nonzero_lattice(const std::map<ModeIndex, cplx>& coeffs,
                            const LatticeModes& lattice,
                            const ModelParams& params,
                            bool include_zero_mode) {
  const double V = params.volume();
  const double pref = std::pow(num::two_pi, params.d) / V;
  if (params.mu == 0.0 && include_zero_mode) {
    auto it = coeffs.find(ModeIndex{});
    if (it != coeffs.end() && std::abs(it->second) != 0.0)
      throw std::domain_error(
          "q_nonzero_lattice: zero mode is singular at mu = 0");
  }
  std::vector<double> terms;
  terms.reserve(coeffs.size());
  for (const auto& [m, c] : coeffs) {
    if (m.is_zero() && !(include_zero_mode && params.mu < 0.0)) continue;
    const double h = dispersion_radial(lattice.mode_norm(m), params.s);
    terms.push_back(thermal_weight(h, params.beta, params.mu) * std::norm(c));
  }
  FormValue v;
  v.value = pref * num::pairwise_sum(std::span<const double>(terms));
  // coefficients are given only inside the cutoff, so the truncation tail
  // is not knowable here; callers with a continuum descriptor refine the
  // lattice instead.
  v.tail_estimate = 0.0;
  return v;
}

FormValue q_nonzero_continuum(const TestFunction& f, const FormContext& ctx) {
  if (!f.has_continuum())
    throw std::invalid_argument("q_nonzero_continuum: continuum required");
  if (ctx.mu == 0.0 && !(ctx.d - ctx.s > 0.0) &&
      std::abs(f.f_hat_zero) != 0.0)
    throw std::domain_error(
        "q_nonzero_continuum: divergent at k = 0 for d <= s with f_hat(0) != 0");
  const auto pairs = gaussian_pairs(f, f);
  auto weight = [&](double r) {
    return thermal_weight(dispersion_radial(r, ctx.s), ctx.beta, ctx.mu);
  };
  const auto res =
      radial_pair_integral(pairs, ctx.d, ctx.s, weight, 0.0, 1e-12);
  FormValue v;
  v.value = res.value.real();
  v.tail_estimate = res.tail_estimate;
  return v;
}

CrossValue q_cross(const TestFunction& f, const TestFunction& g,
                   const FormContext& ctx, double u) {
  const auto pairs = gaussian_pairs(f, g);
  auto weight = [&](double r) {
    return thermal_weight(dispersion_radial(r, ctx.s), ctx.beta, ctx.mu);
  };
  return radial_pair_integral(pairs, ctx.d, ctx.s, weight, u, 1e-12);
}

FormValue q_bec(const TestFunction& f, const FormContext& ctx) {
  const FormValue z = q_zero(f, ctx);
  const FormValue nz = q_nonzero_continuum(f, ctx);
  return FormValue{z.value + nz.value, z.tail_estimate + nz.tail_estimate};
}

cplx inner(const TestFunction& f, const TestFunction& g, int d) {
  // closed Gaussian-product formula
  if (!f.has_continuum() || !g.has_continuum())
    throw std::invalid_argument("inner: continuum descriptors required");
  cplx total{0.0, 0.0};
  for (const auto& tf : f.continuum)
    for (const auto& tg : g.continuum) {
      const double S = tf.sigma + tg.sigma;
      double dist2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const double dx = tf.center[a] - tg.center[a];
        dist2 += dx * dx;
      }
      total += std::conj(tf.c) * tg.c *
               std::exp(-tf.sigma * tg.sigma * dist2 / S) *
               std::pow(num::pi / S, 0.5 * d);
    }
  return total;
}

CrossValue inner_shifted(const TestFunction& f, const TestFunction& g,
                         const FormContext& ctx, double u) {
  const auto pairs = gaussian_pairs(f, g);
  auto weight = [](double) { return 1.0; };
  return radial_pair_integral(pairs, ctx.d, ctx.s, weight, u, 1e-12);
}

double l1_norm_bound(const TestFunction& f, int d) {
  if (!f.has_continuum())
    throw std::invalid_argument("l1_norm_bound: continuum required");
  // one centered term: |c| (2 pi)^{d/2}, independent of sigma; shifts only
  // add a phase in position space. Sums get the triangle bound.
  double total = 0.0;
  for (const auto& t : f.continuum)
    total += std::abs(t.c) * std::pow(num::two_pi, 0.5 * d);
  return total;
}

}  // namespace bosegas::forms

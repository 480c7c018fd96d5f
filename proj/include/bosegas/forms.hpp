#pragma once

#include "bosegas/model.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas::forms {

// Everything the sesquilinear forms need: parameters plus the condensate
// density feeding the zero-mode form.
struct FormContext {
  double beta = 1.0;
  double mu = 0.0;
  int d = 3;
  double s = 2.0;
  double n0 = 0.0;  // condensate density from thermo

  double c_const() const { return 2.0 * std::pow(num::two_pi, d) * n0; }

  static FormContext from(const ModelParams& p, double n0_value) {
    return FormContext{p.beta, p.mu, p.d, p.s, n0_value};
  }
};

struct FormValue {
  double value = 0.0;
  double tail_estimate = 0.0;
};

struct CrossValue {
  cplx value{0.0, 0.0};
  double tail_estimate = 0.0;
  bool converged = true;
};

// coth(beta (h - mu) / 2) evaluated expm1-stably.
double thermal_weight(double h, double beta, double mu);

// Zero-mode form 2 (2 pi)^d n0 |f_hat(0)|^2. Rejects f outside L1.
FormValue q_zero(const TestFunction& f, const FormContext& ctx);
// Polarized zero-mode cross term 2 (2 pi)^d n0 conj(f_hat(0)) g_hat(0).
cplx q_zero_cross(const TestFunction& f, const TestFunction& g,
                  const FormContext& ctx);

// Lattice form ((2 pi)^d / V) sum_{k != 0} coth(beta(h(k)-mu)/2) |f_k|^2.
// With mu < 0 the k = 0 term is included as well (the full local form);
// with mu = 0 a nonzero f_0 is rejected.
FormValue q_nonzero_lattice(const std::map<ModeIndex, cplx>& coeffs,
                            const LatticeModes& lattice,
                            const ModelParams& params, bool include_zero_mode);

// Continuum form int coth(beta(h(k)-mu)/2) |f_hat(k)|^2 dk for the Gaussian
// family, reduced to radial quadrature.
FormValue q_nonzero_continuum(const TestFunction& f, const FormContext& ctx);

// Time-shifted K-weighted cross term
// int coth(beta(h-mu)/2) conj(f_hat) g_hat e^{i u h(k)} dk.
CrossValue q_cross(const TestFunction& f, const TestFunction& g,
                   const FormContext& ctx, double u);

// q_bec = q_zero + q_nonzero (continuum route).
FormValue q_bec(const TestFunction& f, const FormContext& ctx);

// L2 pairing <f, g> for the Gaussian family (closed form).
cplx inner(const TestFunction& f, const TestFunction& g, int d);
// Time-shifted pairing <f, e^{i u h} g> (oscillatory quadrature for u != 0).
CrossValue inner_shifted(const TestFunction& f, const TestFunction& g,
                         const FormContext& ctx, double u);

// Position-space L1 norm: exact for a single Gaussian term,
// term-wise triangle bound for sums.
double l1_norm_bound(const TestFunction& f, int d);

}  // namespace bosegas::forms

#pragma once

#include <string>
#include <vector>

#include "bosegas/forms.hpp"
#include "bosegas/thermo.hpp"

namespace bosegas::order_param {

enum class Verdict { bec, no_bec, inconclusive };
std::string to_string(Verdict v);

// Closed form of int_0^inf e^{-t} exp(-A t^2 / 4) dt.
double order_parameter_integral(double A);

// Finite-volume order parameter for probe sharpness # in {0,1}:
// A_0 = (y_V+1)/(y_V-1), A_1 = (y_V+1) N_0(y_V) / V.
double order_parameter_finite_L(int sharpness, const ModelParams& params,
                                const LatticeModes& lattice);
double order_parameter_finite_L(int sharpness, const ModelParams& params,
                                const thermo::ThermoSolution& sol);

struct ChainPoint {
  double L = 0.0;
  double y_V = 0.0;
  double o0 = 0.0;
  double o1 = 0.0;
};

struct OrderParameterTrace {
  std::vector<ChainPoint> points;
  double o0_limit = 0.0;       // thermodynamic-limit value via thermo
  double o1_limit = 0.0;
  double n0 = 0.0;
  double rho_c = 0.0;
  double y_inf = 1.0;
  Verdict verdict = Verdict::inconclusive;
  bool o0_consistent = false;  // finite-L trend agrees with the limit claim
  bool o1_consistent = false;
};

// Runs the chain of volumes, forms the three-way verdict (o0 -> 0,
// o1-limit < 1, n0 > 0) and cross-checks trends; disagreement degrades the
// verdict to inconclusive.
OrderParameterTrace detect_bec(const ModelParams& params,
                               const std::vector<double>& L_chain,
                               double k_max = 0.0);

// Norm bound V^{-1/2} ||f||_1 / lambda^2 for the commutator with the probe.
double commutator_bound(double L, const TestFunction& f, double lambda, int d);

// Fiber norm bound 1/sqrt(1 + ell^2) with
// ell = sqrt(c r) cos(theta) (2 pi)^{-d/2} V^{1/2}.
double fiber_norm_bound(double r, double theta, double L,
                        const forms::FormContext& ctx);

// chi-average of the fiber norm bound over (r, theta); the pointwise bound
// stalls at 1 on cos(theta) = 0, the average still decays.
double fiber_norm_bound_chi_average(double L, const forms::FormContext& ctx);

// Central multiplication function F(r,theta) = 1/(i z), z = 1 - i a sqrt(r)
// cos(theta), a = 2 sqrt(c).
cplx central_element(double r, double theta, const forms::FormContext& ctx);

}  // namespace bosegas::order_param

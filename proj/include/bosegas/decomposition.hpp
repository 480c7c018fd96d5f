#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bosegas/states.hpp"

namespace bosegas::decomposition {

using states::Expectation;
using states::StateChoice;
using forms::FormContext;

// Product measure e^{-r} dr x dtheta/(2 pi) on [0,inf) x [0,2 pi).
struct ChiValue {
  cplx value{0.0, 0.0};
  double error = 0.0;  // quadrature gauge or MC standard error
  bool converged = true;
};

// Quadrature: Gauss-Laguerre in r (order doubling) tensor trapezoid in
// theta (count doubling), two successive grids must agree.
ChiValue chi_expect_quadrature(const std::function<cplx(double, double)>& f,
                               double rel_tol = 1e-10, int max_r_order = 256);

// Monte Carlo with n iid samples (r = Exp(1), theta uniform), sharded with
// substreams so the result is independent of thread count. n >= 100.
ChiValue chi_expect_mc(const std::function<cplx(double, double)>& f,
                       std::uint64_t n, std::uint64_t seed);

struct MixingReport {
  cplx lhs{0.0, 0.0};       // chi-integral of e^{i ell(f)}
  double rhs = 0.0;         // exp(-q_zero(f)/4)
  double abs_gap = 0.0;
  double mc_value_re = 0.0; // MC estimate (when requested)
  double mc_gap = 0.0;
  double mc_standard_error = 0.0;
  bool quadrature_converged = true;
};

// Both sides of exp(-q_zero(f)/4) = int e^{i ell_{r,theta}(f)} dchi,
// computed independently. mc_samples = 0 skips the MC column.
MixingReport verify_mixing_identity(const TestFunction& f,
                                    const FormContext& ctx,
                                    std::uint64_t mc_samples = 0,
                                    std::uint64_t seed = 1);

struct DecompositionGap {
  Expectation direct;      // two-point in the condensed state
  Expectation decomposed;  // chi-average of component two-points
  double gap = 0.0;
};

DecompositionGap decompose_two_point(double lambda, const TestFunction& f,
                                     double mu_scalar, const TestFunction& g,
                                     const FormContext& ctx,
                                     double tol = 1e-8);

// Max over the grid of |psi_{r,theta}(W(e^{i theta0} f)) -
// psi_{r,theta+theta0}(W(f))| at Weyl scale t = 1.
double gauge_orbit_check(double r, double theta, double theta0,
                         const std::vector<TestFunction>& f_grid,
                         const FormContext& ctx);

// chi-average of the gauge deviation of the mixed state; vanishes because
// the angular measure is rotation invariant.
double gauge_invariance_of_mixture(double theta0, const TestFunction& f,
                                   const FormContext& ctx);

struct ClusteringPoint {
  double u = 0.0;
  double gap = 0.0;       // |two-point(f, shifted g) - product of one-points|
  bool converged = true;
};

struct ClusteringReport {
  std::vector<ClusteringPoint> table;
  cplx product{0.0, 0.0};        // one-point(f) * one-point(g)
  cplx limit_value{0.0, 0.0};    // u -> inf two-point (cross terms dropped,
                                 // zero-mode cross kept for the mixed state)
  double asymptotic_gap = 0.0;   // |limit_value - product|
};

ClusteringReport clustering_scan(const TestFunction& f, const TestFunction& g,
                                 const StateChoice& state,
                                 const std::vector<double>& u_list,
                                 const FormContext& ctx, double lambda = 1.0,
                                 double mu_scalar = 1.0);

struct ErgodicFunctionReport {
  cplx empirical{0.0, 0.0};
  cplx analytic{0.0, 0.0};
  double standard_error = 0.0;
  double gap = 0.0;
  bool within_4se = false;
};

struct ErgodicReport {
  std::vector<ErgodicFunctionReport> per_function;
  bool all_within_4se = true;
};

// Two-stage sampling ((r,theta) ~ chi, then the Gaussian field paired with
// f) against the analytic characteristic functional exp(-q_bec(f)/4).
ErgodicReport ergodic_mc_check(const std::vector<TestFunction>& f_grid,
                               const FormContext& ctx, std::uint64_t n_samples,
                               std::uint64_t seed);

}  // namespace bosegas::decomposition

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "bosegas/model.hpp"

namespace bosegas::pathspace {

// Indexed Matsubara/momentum mode pair; frequencies omega_n = 2 pi n / beta.
struct NK {
  int n = 0;
  ModeIndex k;
  auto operator<=>(const NK&) const = default;
  NK negated() const { return {-n, k.negated()}; }
};

struct PathSpaceSpec {
  double beta = 1.0;
  double s = 2.0;
  int d = 3;
  int n_mats = 8;          // |n| <= n_mats
  LatticeModes lattice;    // k grid; the zero mode is skipped everywhere
  double r_reg = 1.0, u_reg = 2.0, a_reg = 1.0;

  double omega(int n) const { return num::two_pi * n / beta; }
  double eps(const ModeIndex& k) const {
    return dispersion_radial(lattice.mode_norm(k), s);
  }
  double covariance(int n, const ModeIndex& k) const {
    const double e = eps(k);
    return 1.0 / (omega(n) * omega(n) + e * e);
  }
  bool trace_exponents_ok() const {
    return r_reg > 0.5 && 2.0 * (u_reg + s) > d && a_reg > s - 0.5 * d;
  }
  // all (n, k) with |n| <= n_mats, k != 0
  std::vector<NK> gaussian_modes() const;
};

// ---- Matsubara sum and sharp-time kernel ----

// beta-periodized thermal kernel
// G(delta; eps, beta) = (e^{-|d| eps} + e^{-(beta-|d|) eps}) / (2 eps (1 - e^{-beta eps})).
double sharp_time_kernel(double delta, double eps, double beta);

struct MatsubaraResult {
  double truncated = 0.0;
  double closed_form = 0.0;
  double gap = 0.0;
};

// (1/beta) sum_{|n| <= N} e^{i omega_n t} / (omega_n^2 + eps^2) against the
// closed form; the gap shrinks like O(1/N).
MatsubaraResult matsubara_sum(double t, double eps, double beta, int N);

// <j_{t1} g1, C j_{t2} g2> = sum_k G(|t1-t2|; eps(k)) conj(g1_k) g2_k over
// the spec's momentum grid (coefficients aligned with gaussian momenta).
cplx sharp_time_inner(double t1, const std::vector<cplx>& g1, double t2,
                      const std::vector<cplx>& g2, const PathSpaceSpec& spec);

// Momenta used for sharp-time coefficient vectors (all nonzero modes).
std::vector<ModeIndex> sharp_time_modes(const PathSpaceSpec& spec);

// ---- Trace condition ----

enum class TraceVerdict { converged, diverging };

struct TraceCheck {
  TraceVerdict verdict = TraceVerdict::diverging;
  std::vector<double> partial_sums;  // along the refinement sequence
  std::vector<double> increments;
};

// Partial sums of sum_n int T(omega_n, k) dk over a doubling frequency and
// outer-momentum sequence with a shrinking inner cutoff; geometric decay of
// the increments certifies convergence.
TraceCheck trace_condition_check(int d, double s, double r_reg, double u_reg,
                                 double a_reg, double beta = 1.0,
                                 int levels = 6);

// ---- Single-mode paths and interval projections ----

// Piecewise-analytic complex path on the circle [-beta/2, beta/2] with
// analytic derivative per segment (exact Dirichlet forms).
class Path {
 public:
  struct Segment {
    double a, b;
    std::function<cplx(double)> val;
    std::function<cplx(double)> dval;
  };

  Path(double beta, double eps, std::vector<Segment> segs);
  double beta() const { return beta_; }
  double eps() const { return eps_; }
  const std::vector<Segment>& segments() const { return segs_; }

  cplx value(double t) const;
  cplx deriv(double t) const;

  // e^{i omega_n t} on the whole circle
  static Path matsubara_mode(double beta, double eps, int n);

 private:
  double beta_;
  double eps_;
  std::vector<Segment> segs_;
};

// Keeps the path on [t1, t2] and replaces it on the complementary arc by
// the sinh-weighted interpolation of the boundary values; t1 == t2 routes
// to the point projection.
Path interval_projection(const Path& f, double t1, double t2);

// Point projection at time t (the degenerate interval): value
// (e^{-|t-s| eps} + e^{-(beta-|t-s|) eps}) / (1 + e^{-beta eps}) * f(t).
Path point_projection(const Path& f, double t);

// Two-point projection at {0, beta/2}: sinh bridges on both arcs.
Path pair_projection(const Path& f);

// Difference path (left - right), partition refined.
Path path_difference(const Path& p, const Path& q);

// Dirichlet form int (|f'|^2 + eps^2 |f|^2) dt, integrated per smooth piece.
double dirichlet_form(const Path& f);

struct MarkovReport {
  double projection_composition_gap = 0.0;  // max |e_J e_I f - e_K f| on grid
  double q_identity_gap = 0.0;              // relative gap of the form identity
  double idempotency_gap = 0.0;             // e_[a,b] applied twice vs once
  double reflection_gap = 0.0;              // max |R e_0 f - e_0 f| on grid
  int grid_points = 0;
};

// Checks e_J e_I = e_K on I = [-beta/2, 0], J = [0, beta/2],
// K = {0, beta/2}, and the quadratic-form bookkeeping
// q((1-e_I) f) + q((1-e_J) e_I f) = q((1-e_K) f).
MarkovReport markov_identity_check(const Path& f, int grid_points = 512);

// ---- Gaussian field sampling ----

class FieldSampler {
 public:
  FieldSampler(const PathSpaceSpec& spec, std::uint64_t seed);

  // one realization of the coefficients a_{n,k} (reality constraint built
  // in), aligned with spec.gaussian_modes()
  std::vector<cplx> sample();

  // pairing Phi(f) = sum conj(f_{n,k}) a_{n,k}; real for real test vectors
  static double pairing(const std::vector<cplx>& f,
                        const std::vector<cplx>& a);

  const std::vector<NK>& modes() const { return modes_; }

 private:
  PathSpaceSpec spec_;
  std::vector<NK> modes_;
  std::vector<int> partner_;    // index of (-n,-k)
  std::vector<double> scale_;   // sqrt(C(n,k))
  num::Rng rng_;
};

// q_C(f) = sum C(omega_n, k) |f_{n,k}|^2 over the gaussian modes.
double covariance_form(const std::vector<cplx>& f, const PathSpaceSpec& spec);

// Enforce / check the reality constraint f_{-n,-k} = conj(f_{n,k}).
bool is_real_vector(const std::vector<cplx>& f, const PathSpaceSpec& spec,
                    double tol = 1e-12);

// Coefficient action of time translation and reflection.
std::vector<cplx> time_translate(const std::vector<cplx>& f, double t,
                                 const PathSpaceSpec& spec);
std::vector<cplx> reflect(const std::vector<cplx>& f,
                          const PathSpaceSpec& spec);

struct SamplerCheck {
  double empirical = 0.0;
  double analytic = 0.0;
  double standard_error = 0.0;
  bool within_4se = false;
};

// Empirical covariance E[Phi(f) Phi(g)] vs (1/2) q_C(f, g).
SamplerCheck sampler_covariance_check(const PathSpaceSpec& spec,
                                      std::uint64_t seed, std::uint64_t n,
                                      const std::vector<cplx>& f,
                                      const std::vector<cplx>& g);

// Empirical characteristic functional vs exp(-q_C(f)/4); optional point
// transformation applied to the samples first.
enum class SampleTransform { none, time_translation, reflection };
SamplerCheck sampler_char_check(const PathSpaceSpec& spec, std::uint64_t seed,
                                std::uint64_t n, const std::vector<cplx>& f,
                                SampleTransform transform = SampleTransform::none,
                                double t_shift = 0.0);

// ---- Euclidean correlation ----

struct EuclideanResult {
  double gaussian_side = 0.0;
  double thermal_side = 0.0;
  double gap = 0.0;
};

// Gaussian moment of sharp-time insertions vs the thermal-state route
// computed from Bose occupation factors. times must increase inside
// [0, beta/2]; g_list are real coefficient vectors on the momentum grid.
EuclideanResult euclidean_correlation(const std::vector<double>& times,
                                      const std::vector<std::vector<double>>& g_list,
                                      const PathSpaceSpec& spec);

}  // namespace bosegas::pathspace

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bosegas/pathspace.hpp"

namespace bosegas::quasilocal {

using pathspace::NK;
using pathspace::PathSpaceSpec;

// One refinement step L -> ratio * L; divisibility keeps mode inclusion
// exact in integer arithmetic.
struct EmbeddingStep {
  double L_from = 1.0;
  int ratio = 2;  // >= 1
  double L_to() const { return ratio * L_from; }
};

// Coefficient vector of a level, keyed by (Matsubara n, momentum index).
using Coefficients = std::map<NK, cplx>;

struct ProjectiveChain {
  double L0 = 1.0;
  std::vector<int> ratios;  // per-step refinement factors
  double beta = 1.0;
  double s = 2.0;
  int d = 3;
  int n_mats = 4;
  double k_max = 6.0;

  std::size_t levels() const { return ratios.size() + 1; }
  double L_at(std::size_t level) const;
  PathSpaceSpec spec_at(std::size_t level) const;
  EmbeddingStep step_at(std::size_t level) const;  // level -> level + 1
};

// Zero extension onto the finer lattice; momentum indices scale by ratio.
Coefficients embed(const Coefficients& f, const EmbeddingStep& step);

// Restriction onto the coarser lattice (adjoint of embed); indices not
// divisible by ratio are dropped.
Coefficients project(const Coefficients& g, const EmbeddingStep& step);

// l2 pairing of coefficient vectors at one level.
cplx pairing(const Coefficients& f, const Coefficients& g);

// q_C at a given level (diagonal covariance).
double covariance_form(const Coefficients& f, const PathSpaceSpec& spec);

struct ConsistencyReport {
  double composition_gap = 0.0;       // pi-composition across two steps
  double adjoint_gap = 0.0;           // <iota f, g> - <f, pi g>
  double intertwining_gap = 0.0;      // q_{C,n+1}(iota f) - q_{C,n}(f)
  double char_functional_gap = 0.0;   // pushforward characteristic functionals
  double translation_commute_gap = 0.0;  // U_t iota - iota U_t on coefficients
  double reflection_commute_gap = 0.0;
  double empirical_gap_over_se = 0.0;    // MC marginal check, |gap| / s.e.
  bool empirical_within_4se = true;
  bool all_exact = false;  // algebraic gaps at fp zero
};

ConsistencyReport consistency_check(const ProjectiveChain& chain,
                                    const std::vector<Coefficients>& f_grid,
                                    std::uint64_t mc_samples = 0,
                                    std::uint64_t seed = 1);

struct MarginalReport {
  // max over level pairs and mode pairs of the covariance-matrix deviation
  double max_covariance_gap = 0.0;
  std::vector<std::vector<double>> base_covariance;  // at the lowest level
};

// Finite-dimensional distributions along the chain: centered Gaussian with
// covariance (1/2) q_C(f_i, f_j) on shared modes, compared across levels.
MarginalReport projective_marginals(const ProjectiveChain& chain,
                                    const std::vector<Coefficients>& cylinder);

}  // namespace bosegas::quasilocal

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bosegas/numerics.hpp"

namespace bosegas {

using num::cplx;

// Physical configuration shared by every computation.
struct ModelParams {
  int d = 3;              // spatial dimension
  double s = 2.0;         // dispersion exponent, h(k) = |k|^s
  double beta = 1.0;      // inverse temperature
  double mu = 0.0;        // chemical potential, <= 0
  double rho_bar = 0.1;   // target particle density
  double L = 8.0;         // box side length

  double volume() const { return std::pow(L, d); }
  void validate() const;  // throws std::invalid_argument on violation

  std::string to_json() const;
  static ModelParams from_json(const std::string& text);
};

// h(k) = |k|^s with h(0) = 0.
double dispersion(const std::array<double, 3>& k, double s);
double dispersion_radial(double r, double s);

// Momentum lattice point stored as an integer multi-index; the physical
// momentum is (2*pi/L) * idx. Integer storage keeps mode identity exact.
struct ModeIndex {
  std::array<int, 3> idx{0, 0, 0};
  auto operator<=>(const ModeIndex&) const = default;
  ModeIndex negated() const { return {{-idx[0], -idx[1], -idx[2]}}; }
  bool is_zero() const { return idx[0] == 0 && idx[1] == 0 && idx[2] == 0; }
};

struct LatticeModes {
  double L = 0.0;
  int d = 3;
  double k_max = 0.0;
  std::vector<ModeIndex> modes;  // sorted; contains 0; closed under negation

  double spacing() const { return num::two_pi / L; }
  std::array<double, 3> momentum(const ModeIndex& m) const {
    return {spacing() * m.idx[0], spacing() * m.idx[1], spacing() * m.idx[2]};
  }
  double mode_norm(const ModeIndex& m) const {
    double r2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double v = spacing() * m.idx[a];
      r2 += v * v;
    }
    return std::sqrt(r2);
  }
  bool contains_zero() const;
};

// All modes of (2*pi/L) Z^d with |k| <= k_max. k_max < 0 is rejected; a
// cutoff below the lattice spacing yields the zero-only lattice.
LatticeModes build_lattice(double L, double k_max, int d);

// Gaussian bump in momentum space: c * exp(-sigma |k - center|^2).
struct GaussianTerm {
  cplx c{1.0, 0.0};
  double sigma = 1.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};
};

// Momentum-space test function carrying lattice coefficients and/or a
// closed analytic continuum descriptor (finite sum of Gaussians).
struct TestFunction {
  std::optional<std::map<ModeIndex, cplx>> lattice_coeffs;
  std::vector<GaussianTerm> continuum;
  cplx f_hat_zero{0.0, 0.0};
  bool in_L1 = true;

  bool has_continuum() const { return !continuum.empty(); }
  bool has_lattice() const { return lattice_coeffs.has_value(); }

  // f_hat evaluated from the continuum descriptor.
  cplx continuum_at(const std::array<double, 3>& k) const;

  static TestFunction from_gaussians(std::vector<GaussianTerm> terms);
  static TestFunction from_lattice(std::map<ModeIndex, cplx> coeffs,
                                   cplx at_zero);
  // Sample the continuum descriptor onto lattice points within the cutoff.
  TestFunction sampled_on(const LatticeModes& lattice) const;

  std::string to_json() const;
  static TestFunction gaussians_from_json(const std::string& text);
};

// Normalized indicator probe of the box: sharpness # in {0,1}. The lattice
// Fourier coefficients vanish away from k = 0 and
// fourier_at_zero = (2*pi)^{-d/2} V^{(1-#)/2}.
struct ZeroModeProbe {
  int sharpness = 0;
  double L = 1.0;
  int d = 3;
  double fourier_at_zero = 0.0;
};

ZeroModeProbe probe(int sharpness, double L, int d);

}  // namespace bosegas

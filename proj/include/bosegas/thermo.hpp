#pragma once

#include <vector>

#include "bosegas/model.hpp"

namespace bosegas::thermo {

// Grand-canonical occupation sum over a finite lattice at fugacity y > 1.
struct ParticleNumber {
  double N_V = 0.0;         // total over the lattice
  double N_0 = 0.0;         // zero-mode occupation 1/(y-1)
  double N_remainder = 0.0; // N_V - N_0
  double tail_estimate = 0.0;
};

ParticleNumber mean_particle_number(const ModelParams& params,
                                    const LatticeModes& lattice, double y);

struct ThermoSolution {
  double y_V = 0.0;
  double N_V = 0.0;
  double N_0 = 0.0;
  double rho_V = 0.0;
  double residual = 0.0;
  double tail_estimate = 0.0;
};

// Unique y_V > 1 with rho_V(beta, y_V) = rho_bar, by bisection on the
// strictly decreasing density map. Tolerance is on the density residual.
ThermoSolution solve_fugacity(const ModelParams& params,
                              const LatticeModes& lattice,
                              double rho_tol = 1e-12);

struct Density {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Continuum density rho(beta, y) = (2 pi)^{-d} int (y e^{beta h} - 1)^{-1} dk
// for y >= 1 (y = 1 needs d > s). Radial quadrature below beta*h = 30,
// geometric-series tail above.
Density continuum_density(double beta, double y, int d, double s);

// Critical density rho_c(beta) = rho(beta, 1); requires d/s > 1.
Density critical_density(double beta, int d, double s);

struct CriticalData {
  double rho_c = 0.0;
  double rho_c_error = 0.0;
  double beta_c = 0.0;
  double n0 = 0.0;      // condensate density max(0, rho_bar - rho_c)
  double y_inf = 1.0;   // limit fugacity (1 in the condensed phase)
};

CriticalData condensate_density(double beta, double rho_bar, int d, double s);

// Default radial cutoff: beta * h(k_max) = target (momenta beyond it are
// exponentially dead in every occupation sum).
double default_k_max(double beta, double s, double target = 40.0);

}  // namespace bosegas::thermo

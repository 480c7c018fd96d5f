#include "bosegas/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace bosegas {

void ModelParams::validate() const {
  if (d < 1 || d > 3) throw std::invalid_argument("d must be 1, 2 or 3");
  if (!(s > 0.0)) throw std::invalid_argument("s must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (mu > 0.0) throw std::invalid_argument("mu must be <= 0");
  if (!(rho_bar > 0.0)) throw std::invalid_argument("rho_bar must be > 0");
  if (!(L > 0.0)) throw std::invalid_argument("L must be > 0");
}

std::string ModelParams::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d;
  j["s"] = s;
  j["beta"] = beta;
  j["mu"] = mu;
  j["rho_bar"] = rho_bar;
  j["L"] = L;
  return j.dump();
}

ModelParams ModelParams::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ModelParams p;
  p.d = j.at("d").get<int>();
  p.s = j.at("s").get<double>();
  p.beta = j.at("beta").get<double>();
  p.mu = j.at("mu").get<double>();
  p.rho_bar = j.at("rho_bar").get<double>();
  p.L = j.at("L").get<double>();
  p.validate();
  return p;
}

double dispersion(const std::array<double, 3>& k, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("dispersion: s must be > 0");
  const double r2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  if (r2 == 0.0) return 0.0;
  return std::pow(std::sqrt(r2), s);
}

double dispersion_radial(double r, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("dispersion: s must be > 0");
  if (r == 0.0) return 0.0;
  return std::pow(r, s);
}

bool LatticeModes::contains_zero() const {
  return std::any_of(modes.begin(), modes.end(),
                     [](const ModeIndex& m) { return m.is_zero(); });
}

LatticeModes build_lattice(double L, double k_max, int d) {
  if (!(L > 0.0)) throw std::invalid_argument("build_lattice: L must be > 0");
  if (k_max < 0.0)
    throw std::invalid_argument("build_lattice: k_max must be >= 0");
  if (d < 1 || d > 3)
    throw std::invalid_argument("build_lattice: d must be 1, 2 or 3");
  LatticeModes lat;
  lat.L = L;
  lat.d = d;
  lat.k_max = k_max;
  const double sp = num::two_pi / L;
  const int M = static_cast<int>(std::floor(k_max / sp + 1e-12));
  const int lo1 = d >= 1 ? -M : 0, hi1 = d >= 1 ? M : 0;
  const int lo2 = d >= 2 ? -M : 0, hi2 = d >= 2 ? M : 0;
  const int lo3 = d >= 3 ? -M : 0, hi3 = d >= 3 ? M : 0;
  const double r2max = k_max * k_max * (1.0 + 1e-12);
  for (int i = lo1; i <= hi1; ++i)
    for (int j = lo2; j <= hi2; ++j)
      for (int k = lo3; k <= hi3; ++k) {
        const double r2 = sp * sp * (double(i) * i + double(j) * j + double(k) * k);
        if (r2 <= r2max) lat.modes.push_back({{i, j, k}});
      }
  std::sort(lat.modes.begin(), lat.modes.end());
  return lat;
}

cplx TestFunction::continuum_at(const std::array<double, 3>& k) const {
  cplx v{0.0, 0.0};
  for (const auto& t : continuum) {
    double r2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double dx = k[a] - t.center[a];
      r2 += dx * dx;
    }
    v += t.c * std::exp(-t.sigma * r2);
  }
  return v;
}

TestFunction TestFunction::from_gaussians(std::vector<GaussianTerm> terms) {
  for (const auto& t : terms)
    if (!(t.sigma > 0.0))
      throw std::invalid_argument("GaussianTerm: sigma must be > 0");
  TestFunction f;
  f.continuum = std::move(terms);
  f.f_hat_zero = f.continuum_at({0.0, 0.0, 0.0});
  f.in_L1 = true;  // finite Gaussian sums are in L1 and L2
  return f;
}

TestFunction TestFunction::from_lattice(std::map<ModeIndex, cplx> coeffs,
                                        cplx at_zero) {
  TestFunction f;
  f.lattice_coeffs = std::move(coeffs);
  f.f_hat_zero = at_zero;
  return f;
}

TestFunction TestFunction::sampled_on(const LatticeModes& lattice) const {
  if (!has_continuum())
    throw std::invalid_argument("sampled_on: no continuum descriptor");
  std::map<ModeIndex, cplx> coeffs;
  for (const auto& m : lattice.modes)
    coeffs[m] = continuum_at(lattice.momentum(m));
  TestFunction f = *this;
  f.lattice_coeffs = std::move(coeffs);
  return f;
}

std::string TestFunction::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& t : continuum) {
    nlohmann::ordered_json j;
    j["re_c"] = t.c.real();
    j["im_c"] = t.c.imag();
    j["sigma"] = t.sigma;
    j["center"] = {t.center[0], t.center[1], t.center[2]};
    arr.push_back(j);
  }
  return arr.dump();
}

TestFunction TestFunction::gaussians_from_json(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<GaussianTerm> terms;
  for (const auto& j : arr) {
    GaussianTerm t;
    t.c = cplx(j.at("re_c").get<double>(), j.at("im_c").get<double>());
    t.sigma = j.at("sigma").get<double>();
    const auto c = j.at("center");
    for (std::size_t a = 0; a < 3 && a < c.size(); ++a)
      t.center[a] = c[a].get<double>();
    terms.push_back(t);
  }
  return from_gaussians(std::move(terms));
}

ZeroModeProbe probe(int sharpness, double L, int d) {
  if (sharpness != 0 && sharpness != 1)
    throw std::invalid_argument("probe: sharpness must be 0 or 1");
  if (!(L > 0.0)) throw std::invalid_argument("probe: L must be > 0");
  ZeroModeProbe p;
  p.sharpness = sharpness;
  p.L = L;
  p.d = d;
  const double V = std::pow(L, d);
  p.fourier_at_zero =
      std::pow(num::two_pi, -0.5 * d) * std::pow(V, 0.5 * (1 - sharpness));
  return p;
}

}  // namespace bosegas

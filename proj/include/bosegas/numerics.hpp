#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bosegas::num {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// Deterministic pairwise reduction; result does not depend on how the
// input was produced (shards, threads).
double pairwise_sum(std::span<const double> v);
cplx pairwise_sum(std::span<const cplx> v);

// Quadrature rule: nodes and weights.
struct Quad {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [-1,1]; cached per order, thread-safe.
const Quad& gauss_legendre(int n);
// Gauss-Laguerre with weight e^{-x} on [0,inf); cached per order.
const Quad& gauss_laguerre(int n);

// Integrate f over [a,b] with an n-point Gauss-Legendre rule.
template <typename F>
auto integrate_gl(F&& f, double a, double b, int n) {
  const Quad& q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  using R = decltype(f(mid));
  std::vector<R> terms(q.x.size());
  for (std::size_t i = 0; i < q.x.size(); ++i)
    terms[i] = half * q.w[i] * f(mid + half * q.x[i]);
  return pairwise_sum(std::span<const R>(terms));
}

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;  // estimate from the last refinement step
  bool converged = false;
  int evals = 0;
};

// Adaptive evaluation of int_0^inf e^{-u} g(u) du by Gauss-Laguerre order
// doubling until two successive orders agree to rel_tol.
QuadResult laguerre_transform(const std::function<cplx(double)>& g,
                              double rel_tol, int max_order = 512);

// Tensor version for int_0^inf int_0^inf e^{-u-v} g(u,v) du dv.
QuadResult laguerre_transform_2d(const std::function<cplx(double, double)>& g,
                                 double rel_tol, int max_order = 256);

// Adaptive panel integration of f on [a,b]: each panel is accepted when
// GL(12) and GL(24) agree; otherwise it is bisected. Hard panel budget,
// never silently truncated: converged=false when the budget runs out.
QuadResult panel_integrate(const std::function<cplx(double)>& f, double a,
                           double b, double abs_tol, int panel_budget = 20000);

// Closed form of int_0^inf e^{-lambda t - A t^2/4} dt for lambda > 0, A >= 0,
// evaluated with erfcx for stability at large lambda^2/A.
double gaussian_laplace(double lambda, double A);

// Trapezoid rule for a 2*pi-periodic function (spectrally accurate).
template <typename F>
auto trapezoid_periodic(F&& f, int n) {
  using R = decltype(f(0.0));
  std::vector<R> terms(n);
  for (int i = 0; i < n; ++i) terms[i] = f(two_pi * i / n) * (two_pi / n);
  return pairwise_sum(std::span<const R>(terms));
}

// splitmix64: used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Small deterministic RNG (xorshift-based state from splitmix64 seeding,
// Box-Muller normals). Identical output on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();      // (0,1)
  double normal();       // N(0,1)
  double exponential();  // Exp(1)

 private:
  std::uint64_t next_u64();
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Substream seed for shard k of a master seed.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t shard);

// Number of worker threads for shard execution (BOSEGAS_THREADS, default 4).
// Shard layout is fixed by the caller, so results never depend on this.
int worker_threads();

// Run n_shards jobs (possibly in parallel) and collect results in shard
// order. job(shard_index) must be independent of execution order.
std::vector<double> run_shards(int n_shards,
                               const std::function<double(int)>& job);

}  // namespace bosegas::num

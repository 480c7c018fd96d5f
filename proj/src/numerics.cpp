#include "bosegas/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bosegas::num {

namespace {

template <typename T>
T pairwise_sum_impl(std::span<const T> v) {
  if (v.size() <= 8) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum_impl(v.subspan(0, half)) +
         pairwise_sum_impl(v.subspan(half));
}

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)^2.
Quad golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                  double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub);
  const int n = static_cast<int>(diag.size());
  Quad q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < n; ++i) {
    q.x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    q.w[i] = mu0 * v0 * v0;
  }
  return q;
}

const Quad& cached_rule(int n, bool laguerre) {
  static std::mutex mtx;
  static std::map<std::pair<int, bool>, Quad> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find({n, laguerre});
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  Eigen::VectorXd diag(n), sub(n - 1 > 0 ? n - 1 : 0);
  if (laguerre) {
    for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
    for (int i = 1; i < n; ++i) sub(i - 1) = static_cast<double>(i);
    auto [pos, ok] = cache.emplace(std::make_pair(n, laguerre),
                                   golub_welsch(diag, sub, 1.0));
    return pos->second;
  }
  diag.setZero();
  for (int i = 1; i < n; ++i)
    sub(i - 1) = i / std::sqrt(4.0 * i * i - 1.0);
  auto [pos, ok] =
      cache.emplace(std::make_pair(n, laguerre), golub_welsch(diag, sub, 2.0));
  return pos->second;
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v); }
cplx pairwise_sum(std::span<const cplx> v) { return pairwise_sum_impl(v); }

const Quad& gauss_legendre(int n) { return cached_rule(n, false); }
const Quad& gauss_laguerre(int n) { return cached_rule(n, true); }

QuadResult laguerre_transform(const std::function<cplx(double)>& g,
                              double rel_tol, int max_order) {
  QuadResult res;
  cplx prev{0.0, 0.0};
  bool have_prev = false;
  for (int n = 16; n <= max_order; n *= 2) {
    const Quad& q = gauss_laguerre(n);
    std::vector<cplx> terms(q.x.size());
    for (std::size_t i = 0; i < q.x.size(); ++i)
      terms[i] = q.w[i] * g(q.x[i]);
    const cplx val = pairwise_sum(std::span<const cplx>(terms));
    res.evals += n;
    if (have_prev) {
      res.error = std::abs(val - prev);
      if (res.error <= rel_tol * std::max(1.0, std::abs(val))) {
        res.value = val;
        res.converged = true;
        return res;
      }
    }
    prev = val;
    have_prev = true;
  }
  res.value = prev;
  res.converged = false;
  return res;
}

QuadResult laguerre_transform_2d(const std::function<cplx(double, double)>& g,
                                 double rel_tol, int max_order) {
  QuadResult res;
  cplx prev{0.0, 0.0};
  bool have_prev = false;
  for (int n = 16; n <= max_order; n *= 2) {
    const Quad& q = gauss_laguerre(n);
    std::vector<cplx> rows(q.x.size());
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      std::vector<cplx> terms(q.x.size());
      for (std::size_t j = 0; j < q.x.size(); ++j)
        terms[j] = q.w[j] * g(q.x[i], q.x[j]);
      rows[i] = q.w[i] * pairwise_sum(std::span<const cplx>(terms));
    }
    const cplx val = pairwise_sum(std::span<const cplx>(rows));
    res.evals += n * n;
    if (have_prev) {
      res.error = std::abs(val - prev);
      if (res.error <= rel_tol * std::max(1.0, std::abs(val))) {
        res.value = val;
        res.converged = true;
        return res;
      }
    }
    prev = val;
    have_prev = true;
  }
  res.value = prev;
  res.converged = false;
  return res;
}

namespace {

cplx gl_fixed(const std::function<cplx(double)>& f, double a, double b,
              int n) {
  const Quad& q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<cplx> terms(q.x.size());
  for (std::size_t i = 0; i < q.x.size(); ++i)
    terms[i] = half * q.w[i] * f(mid + half * q.x[i]);
  return pairwise_sum(std::span<const cplx>(terms));
}

}  // namespace

QuadResult panel_integrate(const std::function<cplx(double)>& f, double a,
                           double b, double abs_tol, int panel_budget) {
  QuadResult res;
  if (!(a < b)) {
    res.converged = true;
    return res;
  }
  struct Panel {
    double a, b;
    cplx coarse;
    double err;
  };
  std::vector<Panel> accepted;
  std::vector<Panel> stack;
  auto make_panel = [&](double lo, double hi) {
    const cplx c = gl_fixed(f, lo, hi, 12);
    const cplx fine = gl_fixed(f, lo, hi, 24);
    return Panel{lo, hi, fine, std::abs(fine - c)};
  };
  stack.push_back(make_panel(a, b));
  int used = 1;
  double total_err = 0.0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double local_tol = abs_tol * (p.b - p.a) / (b - a);
    if (p.err <= std::max(local_tol, 1e-300) || used >= panel_budget) {
      if (p.err > std::max(local_tol, 1e-300)) res.converged = false;
      accepted.push_back(p);
      total_err += p.err;
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    stack.push_back(make_panel(p.a, mid));
    stack.push_back(make_panel(mid, p.b));
    used += 2;
  }
  // deterministic summation order: sort panels by left endpoint
  std::sort(accepted.begin(), accepted.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  std::vector<cplx> vals(accepted.size());
  for (std::size_t i = 0; i < accepted.size(); ++i) vals[i] = accepted[i].coarse;
  res.value = pairwise_sum(std::span<const cplx>(vals));
  res.error = total_err;
  res.evals = used * 36;
  if (used < panel_budget) res.converged = true;
  return res;
}

double gaussian_laplace(double lambda, double A) {
  if (lambda <= 0.0) throw std::domain_error("gaussian_laplace: lambda <= 0");
  if (A < 0.0) throw std::domain_error("gaussian_laplace: A < 0");
  if (A == 0.0) return 1.0 / lambda;
  // sqrt(pi/A) e^{lambda^2/A} erfc(lambda/sqrt(A)), via erfcx to avoid overflow
  const double z = lambda / std::sqrt(A);
  // erfcx(z) = e^{z^2} erfc(z); continued-fraction-free evaluation using
  // std::erfc when safe, else asymptotic series.
  double erfcx;
  if (z < 25.0) {
    erfcx = std::exp(z * z) * std::erfc(z);
  } else {
    const double inv2z2 = 1.0 / (2.0 * z * z);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
      term *= -(2.0 * k - 1.0) * inv2z2;
      sum += term;
    }
    erfcx = sum / (z * std::sqrt(pi));
  }
  return std::sqrt(pi / A) * erfcx;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  // xoshiro256**
  auto rotl = [](std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  // 53-bit mantissa in (0,1)
  return ((next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform(), u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(two_pi * u2);
  have_spare_ = true;
  return r * std::cos(two_pi * u2);
}

double Rng::exponential() { return -std::log(uniform()); }

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t shard) {
  std::uint64_t s = master ^ (0xA02BDBF7BB3C0A7ULL * (shard + 1));
  splitmix64(s);
  return splitmix64(s);
}

int worker_threads() {
  if (const char* env = std::getenv("BOSEGAS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 4;
}

std::vector<double> run_shards(int n_shards,
                               const std::function<double(int)>& job) {
  std::vector<double> out(n_shards);
  const int workers = std::min(worker_threads(), n_shards);
  if (workers <= 1) {
    for (int i = 0; i < n_shards; ++i) out[i] = job(i);
    return out;
  }
  std::vector<std::future<void>> futs;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&]() {
      for (int i = next.fetch_add(1); i < n_shards; i = next.fetch_add(1))
        out[i] = job(i);
    }));
  }
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace bosegas::num

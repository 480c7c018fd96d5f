#include "bosegas/pathspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace bosegas::pathspace {

std::vector<NK> PathSpaceSpec::gaussian_modes() const {
  std::vector<NK> out;
  for (int n = -n_mats; n <= n_mats; ++n)
    for (const auto& k : lattice.modes) {
      if (k.is_zero()) continue;  // singular mode lives in the chi fiber
      out.push_back({n, k});
    }
  std::sort(out.begin(), out.end());
  return out;
}

double sharp_time_kernel(double delta, double eps, double beta) {
  if (!(eps > 0.0))
    throw std::domain_error("sharp_time_kernel: eps must be > 0");
  double d = std::fmod(std::abs(delta), beta);
  const double den = -std::expm1(-beta * eps);  // 1 - e^{-beta eps}
  return (std::exp(-d * eps) + std::exp(-(beta - d) * eps)) /
         (2.0 * eps * den);
}

MatsubaraResult matsubara_sum(double t, double eps, double beta, int N) {
  if (!(eps > 0.0))
    throw std::domain_error(
        "matsubara_sum: eps = 0 is the singular zero mode, not summable");
  if (std::abs(t) > beta)
    throw std::invalid_argument("matsubara_sum: |t| must be <= beta");
  MatsubaraResult res;
  std::vector<double> terms(N);
  for (int n = 1; n <= N; ++n) {
    const double w = num::two_pi * n / beta;
    terms[n - 1] = 2.0 * std::cos(w * t) / (w * w + eps * eps);
  }
  res.truncated =
      (1.0 / (eps * eps) + num::pairwise_sum(std::span<const double>(terms))) /
      beta;
  res.closed_form = sharp_time_kernel(t, eps, beta);
  res.gap = std::abs(res.truncated - res.closed_form);
  return res;
}

std::vector<ModeIndex> sharp_time_modes(const PathSpaceSpec& spec) {
  std::vector<ModeIndex> out;
  for (const auto& k : spec.lattice.modes)
    if (!k.is_zero()) out.push_back(k);
  return out;
}

cplx sharp_time_inner(double t1, const std::vector<cplx>& g1, double t2,
                      const std::vector<cplx>& g2,
                      const PathSpaceSpec& spec) {
  const auto modes = sharp_time_modes(spec);
  if (g1.size() != modes.size() || g2.size() != modes.size())
    throw std::invalid_argument(
        "sharp_time_inner: coefficient size does not match the grid");
  std::vector<cplx> terms(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double e = spec.eps(modes[i]);
    if (!(e > 0.0))
      throw std::domain_error("sharp_time_inner: support touches eps = 0");
    terms[i] =
        sharp_time_kernel(t1 - t2, e, spec.beta) * std::conj(g1[i]) * g2[i];
  }
  return num::pairwise_sum(std::span<const cplx>(terms));
}

TraceCheck trace_condition_check(int d, double s, double r_reg, double u_reg,
                                 double a_reg, double beta, int levels) {
  TraceCheck out;
  auto surface = [&]() {
    switch (d) {
      case 1: return 2.0;
      case 2: return num::two_pi;
      case 3: return 4.0 * num::pi;
    }
    throw std::invalid_argument("trace_condition_check: d must be 1..3");
  }();
  auto T = [&](double omega, double r) {
    const double k2a = std::min(std::pow(r, 2.0 * a_reg), 1.0);
    return k2a / ((omega * omega + std::pow(r, 2.0 * s)) *
                  std::pow(1.0 + omega * omega, r_reg) *
                  std::pow(1.0 + r * r, u_reg));
  };
  auto level_sum = [&](int Nmats, double Kout, double delta) {
    std::vector<double> terms;
    for (int n = -Nmats; n <= Nmats; ++n) {
      const double omega = num::two_pi * n / beta;
      auto integrand = [&](double r) {
        return std::pow(r, d - 1) * T(omega, r);
      };
      // graded panels toward the inner cutoff
      double acc = 0.0;
      double lo = delta;
      while (lo < Kout) {
        const double hi = std::min(Kout, lo * 2.0);
        acc += num::integrate_gl(integrand, lo, hi, 32);
        lo = hi;
      }
      terms.push_back(acc);
    }
    return surface * num::pairwise_sum(std::span<const double>(terms));
  };
  for (int j = 0; j < levels; ++j) {
    const int Nmats = 8 << j;
    const double Kout = 4.0 * (1 << j);
    const double delta = 0.5 / (1 << j);
    out.partial_sums.push_back(level_sum(Nmats, Kout, delta));
  }
  for (std::size_t j = 1; j < out.partial_sums.size(); ++j)
    out.increments.push_back(out.partial_sums[j] - out.partial_sums[j - 1]);
  // converged when the increments keep shrinking geometrically
  const std::size_t m = out.increments.size();
  const double r1 = out.increments[m - 1] / out.increments[m - 2];
  const double r2 = out.increments[m - 2] / out.increments[m - 3];
  out.verdict = (r1 < 0.8 && r2 < 0.8 && out.increments[m - 1] >= 0.0)
                    ? TraceVerdict::converged
                    : TraceVerdict::diverging;
  return out;
}

// ---- paths ----

Path::Path(double beta, double eps, std::vector<Segment> segs)
    : beta_(beta), eps_(eps), segs_(std::move(segs)) {
  if (segs_.empty()) throw std::invalid_argument("Path: no segments");
}

namespace {

double wrap_to_circle(double t, double beta) {
  double x = std::fmod(t + 0.5 * beta, beta);
  if (x < 0.0) x += beta;
  return x - 0.5 * beta;
}

}  // namespace

cplx Path::value(double t) const {
  const double x = wrap_to_circle(t, beta_);
  for (const auto& s : segs_)
    if (x >= s.a - 1e-14 && x <= s.b + 1e-14) return s.val(x);
  throw std::logic_error("Path::value: uncovered point");
}

cplx Path::deriv(double t) const {
  const double x = wrap_to_circle(t, beta_);
  for (const auto& s : segs_)
    if (x >= s.a - 1e-14 && x <= s.b + 1e-14) return s.dval(x);
  throw std::logic_error("Path::deriv: uncovered point");
}

Path Path::matsubara_mode(double beta, double eps, int n) {
  const double w = num::two_pi * n / beta;
  Segment s;
  s.a = -0.5 * beta;
  s.b = 0.5 * beta;
  s.val = [w](double t) { return cplx(std::cos(w * t), std::sin(w * t)); };
  s.dval = [w](double t) {
    return cplx(-w * std::sin(w * t), w * std::cos(w * t));
  };
  return Path(beta, eps, {s});
}

namespace {

// sinh bridge through (ta, fa) and (tb, fb) on [lo, hi]: the unique
// solution of -f'' + eps^2 f = 0 with those boundary values, where the arc
// runs from tb to ta + beta on the covering line when wrapping.
Path::Segment sinh_bridge(double lo, double hi, double eps, double t_left,
                          cplx f_left, double t_right, cplx f_right) {
  // f(sigma) = [f_left sinh((t_right - sigma) eps) +
  //             f_right sinh((sigma - t_left) eps)] / sinh((t_right-t_left) eps)
  const double den = std::sinh((t_right - t_left) * eps);
  Path::Segment s;
  s.a = lo;
  s.b = hi;
  s.val = [=](double t) {
    return (f_left * std::sinh((t_right - t) * eps) +
            f_right * std::sinh((t - t_left) * eps)) /
           den;
  };
  s.dval = [=](double t) {
    return (-f_left * eps * std::cosh((t_right - t) * eps) +
            f_right * eps * std::cosh((t - t_left) * eps)) /
           den;
  };
  return s;
}

std::vector<Path::Segment> restrict_segments(const Path& f, double lo,
                                             double hi) {
  std::vector<Path::Segment> out;
  for (const auto& s : f.segments()) {
    const double a = std::max(s.a, lo), b = std::min(s.b, hi);
    if (a < b - 1e-15) {
      Path::Segment r = s;
      r.a = a;
      r.b = b;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

Path interval_projection(const Path& f, double t1, double t2) {
  const double beta = f.beta(), eps = f.eps();
  if (!(eps > 0.0))
    throw std::domain_error("interval_projection: eps must be > 0");
  if (t1 < -0.5 * beta - 1e-14 || t2 > 0.5 * beta + 1e-14 || t1 > t2)
    throw std::invalid_argument("interval_projection: need -b/2 <= t1 <= t2 <= b/2");
  if (t1 == t2) return point_projection(f, t1);
  const cplx f1 = f.value(t1), f2 = f.value(t2);
  std::vector<Path::Segment> segs = restrict_segments(f, t1, t2);
  // complementary arc runs t2 -> t1 + beta on the covering line; a point
  // s in [-beta/2, t1] sits at s + beta, a point in [t2, beta/2] at s.
  if (t2 < 0.5 * beta - 1e-15) {
    // left endpoint of the arc is t2 (value f2), right endpoint is the
    // wrapped copy of t1 at t1 + beta (value f1)
    segs.push_back(sinh_bridge(t2, 0.5 * beta, eps, t2, f2, t1 + beta, f1));
  }
  if (t1 > -0.5 * beta + 1e-15) {
    // same bridge evaluated at sigma = s + beta
    auto base = sinh_bridge(-0.5 * beta, t1, eps, t2, f2, t1 + beta, f1);
    Path::Segment shifted;
    shifted.a = -0.5 * beta;
    shifted.b = t1;
    shifted.val = [base, beta](double t) { return base.val(t + beta); };
    shifted.dval = [base, beta](double t) { return base.dval(t + beta); };
    segs.push_back(shifted);
  }
  std::sort(segs.begin(), segs.end(),
            [](const Path::Segment& l, const Path::Segment& r) {
              return l.a < r.a;
            });
  return Path(beta, eps, std::move(segs));
}

Path point_projection(const Path& f, double t) {
  const double beta = f.beta(), eps = f.eps();
  const cplx ft = f.value(t);
  const double den = 1.0 + std::exp(-beta * eps);
  Path::Segment s;
  s.a = -0.5 * beta;
  s.b = 0.5 * beta;
  s.val = [=](double x) {
    double dlt = std::abs(x - t);
    dlt = std::min(dlt, beta - dlt);
    return ft * ((std::exp(-dlt * eps) + std::exp(-(beta - dlt) * eps)) / den);
  };
  s.dval = [=](double x) {
    double raw = x - t;
    // derivative of the periodized kernel in x
    double dlt = std::abs(raw);
    double sign = raw >= 0.0 ? 1.0 : -1.0;
    if (dlt > 0.5 * beta) {
      dlt = beta - dlt;
      sign = -sign;
    }
    const double dk = sign * eps *
                      (-std::exp(-dlt * eps) + std::exp(-(beta - dlt) * eps)) /
                      den;
    return ft * dk;
  };
  return Path(beta, eps, {s});
}

Path pair_projection(const Path& f) {
  const double beta = f.beta(), eps = f.eps();
  const cplx f0 = f.value(0.0), fb = f.value(0.5 * beta);
  std::vector<Path::Segment> segs;
  // arc [0, beta/2]: boundary values f0 at 0, fb at beta/2
  segs.push_back(sinh_bridge(0.0, 0.5 * beta, eps, 0.0, f0, 0.5 * beta, fb));
  // arc [-beta/2, 0]: boundary values fb at -beta/2 (the identified point)
  // and f0 at 0
  segs.push_back(sinh_bridge(-0.5 * beta, 0.0, eps, -0.5 * beta, fb, 0.0, f0));
  std::sort(segs.begin(), segs.end(),
            [](const Path::Segment& l, const Path::Segment& r) {
              return l.a < r.a;
            });
  return Path(beta, eps, std::move(segs));
}

Path path_difference(const Path& p, const Path& q) {
  if (std::abs(p.beta() - q.beta()) > 1e-14)
    throw std::invalid_argument("path_difference: mismatched circles");
  std::set<double> cuts;
  for (const auto& s : p.segments()) {
    cuts.insert(s.a);
    cuts.insert(s.b);
  }
  for (const auto& s : q.segments()) {
    cuts.insert(s.a);
    cuts.insert(s.b);
  }
  const auto pp = std::make_shared<Path>(p);
  const auto qq = std::make_shared<Path>(q);
  std::vector<Path::Segment> segs;
  auto it = cuts.begin();
  double prev = *it;
  for (++it; it != cuts.end(); ++it) {
    const double a = prev, b = *it;
    prev = *it;
    if (b - a < 1e-15) continue;
    Path::Segment s;
    s.a = a;
    s.b = b;
    s.val = [pp, qq](double t) { return pp->value(t) - qq->value(t); };
    s.dval = [pp, qq](double t) { return pp->deriv(t) - qq->deriv(t); };
    segs.push_back(s);
  }
  return Path(p.beta(), p.eps(), std::move(segs));
}

double dirichlet_form(const Path& f) {
  const double eps = f.eps();
  std::vector<double> parts;
  for (const auto& s : f.segments()) {
    auto integrand = [&](double t) {
      return std::norm(s.dval(t)) + eps * eps * std::norm(s.val(t));
    };
    // panels per segment keep entire pieces at machine precision
    const int panels = 8;
    for (int p = 0; p < panels; ++p) {
      const double a = s.a + (s.b - s.a) * p / panels;
      const double b = s.a + (s.b - s.a) * (p + 1) / panels;
      parts.push_back(num::integrate_gl(integrand, a, b, 32));
    }
  }
  return num::pairwise_sum(std::span<const double>(parts));
}

MarkovReport markov_identity_check(const Path& f, int grid_points) {
  if (grid_points < 64)
    throw std::invalid_argument("markov_identity_check: grid too coarse");
  const double beta = f.beta();
  MarkovReport rep;
  rep.grid_points = grid_points;

  const Path eI = interval_projection(f, -0.5 * beta, 0.0);
  const Path eJeI = interval_projection(eI, 0.0, 0.5 * beta);
  const Path eK = pair_projection(f);

  for (int i = 0; i < grid_points; ++i) {
    const double t = -0.5 * beta + beta * i / grid_points;
    rep.projection_composition_gap = std::max(
        rep.projection_composition_gap, std::abs(eJeI.value(t) - eK.value(t)));
  }

  const double qa = dirichlet_form(path_difference(f, eI));
  const double qb = dirichlet_form(path_difference(eI, eJeI));
  const double qc = dirichlet_form(path_difference(f, eK));
  rep.q_identity_gap = std::abs(qa + qb - qc) / std::max(1.0, std::abs(qc));

  // idempotency on a generic interval
  const double t1 = -0.3 * beta, t2 = 0.2 * beta;
  const Path once = interval_projection(f, t1, t2);
  const Path twice = interval_projection(once, t1, t2);
  for (int i = 0; i < grid_points; ++i) {
    const double t = -0.5 * beta + beta * i / grid_points;
    rep.idempotency_gap =
        std::max(rep.idempotency_gap, std::abs(twice.value(t) - once.value(t)));
  }

  // reflection fixes the time-zero projection
  const Path e0 = point_projection(f, 0.0);
  for (int i = 0; i < grid_points; ++i) {
    const double t = -0.5 * beta + beta * i / grid_points;
    rep.reflection_gap =
        std::max(rep.reflection_gap, std::abs(e0.value(-t) - e0.value(t)));
  }
  return rep;
}

// ---- sampling ----

FieldSampler::FieldSampler(const PathSpaceSpec& spec, std::uint64_t seed)
    : spec_(spec), modes_(spec.gaussian_modes()), rng_(seed) {
  if (!spec.trace_exponents_ok())
    throw std::domain_error(
        "FieldSampler: regularizer exponents violate the trace condition");
  std::map<NK, int> index;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    index[modes_[i]] = static_cast<int>(i);
  partner_.resize(modes_.size());
  scale_.resize(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto it = index.find(modes_[i].negated());
    if (it == index.end())
      throw std::logic_error("FieldSampler: grid not symmetric");
    partner_[i] = it->second;
    scale_[i] = std::sqrt(spec.covariance(modes_[i].n, modes_[i].k));
  }
}

std::vector<cplx> FieldSampler::sample() {
  std::vector<cplx> a(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const int j = partner_[i];
    if (static_cast<int>(i) < j) {
      const double xi = rng_.normal(), eta = rng_.normal();
      a[i] = 0.5 * scale_[i] * cplx(xi, eta);
      a[j] = std::conj(a[i]);
    } else if (static_cast<int>(i) == j) {
      // self-paired mode (cannot happen with k != 0, kept for safety)
      a[i] = cplx(std::sqrt(0.5) * scale_[i] * rng_.normal(), 0.0);
    }
  }
  return a;
}

double FieldSampler::pairing(const std::vector<cplx>& f,
                             const std::vector<cplx>& a) {
  if (f.size() != a.size())
    throw std::invalid_argument("pairing: size mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i) acc += std::conj(f[i]) * a[i];
  return acc.real();
}

double covariance_form(const std::vector<cplx>& f, const PathSpaceSpec& spec) {
  const auto modes = spec.gaussian_modes();
  if (f.size() != modes.size())
    throw std::invalid_argument("covariance_form: size mismatch");
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    terms[i] = spec.covariance(modes[i].n, modes[i].k) * std::norm(f[i]);
  return num::pairwise_sum(std::span<const double>(terms));
}

bool is_real_vector(const std::vector<cplx>& f, const PathSpaceSpec& spec,
                    double tol) {
  const auto modes = spec.gaussian_modes();
  std::map<NK, int> index;
  for (std::size_t i = 0; i < modes.size(); ++i)
    index[modes[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const int j = index.at(modes[i].negated());
    if (std::abs(f[i] - std::conj(f[j])) > tol) return false;
  }
  return true;
}

std::vector<cplx> time_translate(const std::vector<cplx>& f, double t,
                                 const PathSpaceSpec& spec) {
  const auto modes = spec.gaussian_modes();
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double w = spec.omega(modes[i].n);
    out[i] = f[i] * cplx(std::cos(w * t), -std::sin(w * t));
  }
  return out;
}

std::vector<cplx> reflect(const std::vector<cplx>& f,
                          const PathSpaceSpec& spec) {
  const auto modes = spec.gaussian_modes();
  std::map<NK, int> index;
  for (std::size_t i = 0; i < modes.size(); ++i)
    index[modes[i]] = static_cast<int>(i);
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    NK src{-modes[i].n, modes[i].k};
    out[i] = f[index.at(src)];
  }
  return out;
}

SamplerCheck sampler_covariance_check(const PathSpaceSpec& spec,
                                      std::uint64_t seed, std::uint64_t n,
                                      const std::vector<cplx>& f,
                                      const std::vector<cplx>& g) {
  FieldSampler sampler(spec, seed);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto a = sampler.sample();
    const double prod =
        FieldSampler::pairing(f, a) * FieldSampler::pairing(g, a);
    sum += prod;
    sum2 += prod * prod;
  }
  SamplerCheck chk;
  chk.empirical = sum / n;
  const auto modes = spec.gaussian_modes();
  cplx qfg{0.0, 0.0};
  for (std::size_t i = 0; i < modes.size(); ++i)
    qfg += spec.covariance(modes[i].n, modes[i].k) * std::conj(f[i]) * g[i];
  chk.analytic = 0.5 * qfg.real();
  const double var = std::max(0.0, sum2 / n - chk.empirical * chk.empirical);
  chk.standard_error = std::sqrt(var / double(n));
  chk.within_4se = std::abs(chk.empirical - chk.analytic) <=
                   4.0 * std::max(chk.standard_error, 1e-300);
  return chk;
}

SamplerCheck sampler_char_check(const PathSpaceSpec& spec, std::uint64_t seed,
                                std::uint64_t n, const std::vector<cplx>& f,
                                SampleTransform transform, double t_shift) {
  FieldSampler sampler(spec, seed);
  double sum_re = 0.0, sum_im = 0.0, sum2 = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto a = sampler.sample();
    if (transform == SampleTransform::time_translation)
      a = time_translate(a, -t_shift, spec);
    else if (transform == SampleTransform::reflection)
      a = reflect(a, spec);
    const double phi = FieldSampler::pairing(f, a);
    sum_re += std::cos(phi);
    sum_im += std::sin(phi);
    sum2 += 1.0;  // |e^{i phi}|^2
  }
  SamplerCheck chk;
  const cplx mean(sum_re / n, sum_im / n);
  chk.empirical = mean.real();
  chk.analytic = std::exp(-0.25 * covariance_form(f, spec));
  const double var = std::max(0.0, sum2 / n - std::norm(mean));
  chk.standard_error = std::sqrt(var / double(n));
  chk.within_4se =
      std::abs(mean - cplx(chk.analytic, 0.0)) <=
      4.0 * std::max(chk.standard_error, 1e-300);
  return chk;
}

EuclideanResult euclidean_correlation(
    const std::vector<double>& times,
    const std::vector<std::vector<double>>& g_list,
    const PathSpaceSpec& spec) {
  if (times.size() != g_list.size())
    throw std::invalid_argument("euclidean_correlation: size mismatch");
  for (std::size_t j = 1; j < times.size(); ++j)
    if (!(times[j] >= times[j - 1]))
      throw std::invalid_argument("euclidean_correlation: times must increase");
  for (double t : times)
    if (t < 0.0 || t > 0.5 * spec.beta)
      throw std::invalid_argument(
          "euclidean_correlation: times must lie in [0, beta/2]");
  const auto modes = sharp_time_modes(spec);
  for (const auto& g : g_list)
    if (g.size() != modes.size())
      throw std::invalid_argument("euclidean_correlation: bad vector size");

  // Gaussian route: exp(-1/4 sum_{j,l} <j_{t_j} g_j, C j_{t_l} g_l>)
  double gauss_exp = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j)
    for (std::size_t l = 0; l < times.size(); ++l) {
      std::vector<cplx> gj(modes.size()), gl(modes.size());
      for (std::size_t i = 0; i < modes.size(); ++i) {
        gj[i] = g_list[j][i];
        gl[i] = g_list[l][i];
      }
      gauss_exp +=
          sharp_time_inner(times[j], gj, times[l], gl, spec).real();
    }
  EuclideanResult out;
  out.gaussian_side = std::exp(-0.25 * gauss_exp);

  // Thermal route: ordered-product contractions from Bose occupation,
  // (1/(2 eps)) [ e^{-|dt| eps} (1 + rho) + e^{|dt| eps} rho ].
  double therm_exp = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j)
    for (std::size_t l = 0; l < times.size(); ++l) {
      const double dt = std::abs(times[j] - times[l]);
      double acc = 0.0;
      for (std::size_t i = 0; i < modes.size(); ++i) {
        const double e = spec.eps(modes[i]);
        const double rho = 1.0 / std::expm1(spec.beta * e);
        acc += g_list[j][i] * g_list[l][i] *
               (std::exp(-dt * e) * (1.0 + rho) + std::exp(dt * e) * rho) /
               (2.0 * e);
      }
      therm_exp += acc;
    }
  out.thermal_side = std::exp(-0.25 * therm_exp);
  out.gap = std::abs(out.gaussian_side - out.thermal_side);
  return out;
}

}  // namespace bosegas::pathspace

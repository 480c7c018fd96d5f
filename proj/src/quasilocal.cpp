#include "bosegas/quasilocal.hpp"

#include <cmath>
#include <stdexcept>

namespace bosegas::quasilocal {

double ProjectiveChain::L_at(std::size_t level) const {
  double L = L0;
  for (std::size_t i = 0; i < level; ++i) L *= ratios.at(i);
  return L;
}

PathSpaceSpec ProjectiveChain::spec_at(std::size_t level) const {
  PathSpaceSpec spec;
  spec.beta = beta;
  spec.s = s;
  spec.d = d;
  spec.n_mats = n_mats;
  spec.lattice = build_lattice(L_at(level), k_max, d);
  // exponents per the trace lemma for the supported s range
  spec.r_reg = 1.0;
  spec.u_reg = 2.0;
  spec.a_reg = std::max(0.0, s - 0.5 * d) + 0.5;
  return spec;
}

EmbeddingStep ProjectiveChain::step_at(std::size_t level) const {
  if (level + 1 >= levels())
    throw std::out_of_range("ProjectiveChain::step_at");
  return EmbeddingStep{L_at(level), ratios.at(level)};
}

Coefficients embed(const Coefficients& f, const EmbeddingStep& step) {
  if (step.ratio < 1)
    throw std::invalid_argument("embed: ratio must be a positive integer");
  Coefficients out;
  for (const auto& [nk, c] : f) {
    NK scaled = nk;
    for (int a = 0; a < 3; ++a) scaled.k.idx[a] = nk.k.idx[a] * step.ratio;
    out[scaled] = c;
  }
  return out;
}

Coefficients project(const Coefficients& g, const EmbeddingStep& step) {
  Coefficients out;
  for (const auto& [nk, c] : g) {
    bool divisible = true;
    NK scaled = nk;
    for (int a = 0; a < 3; ++a) {
      if (nk.k.idx[a] % step.ratio != 0) {
        divisible = false;
        break;
      }
      scaled.k.idx[a] = nk.k.idx[a] / step.ratio;
    }
    if (divisible) out[scaled] = c;
  }
  return out;
}

cplx pairing(const Coefficients& f, const Coefficients& g) {
  cplx acc{0.0, 0.0};
  for (const auto& [nk, c] : f) {
    const auto it = g.find(nk);
    if (it != g.end()) acc += std::conj(c) * it->second;
  }
  return acc;
}

double covariance_form(const Coefficients& f, const PathSpaceSpec& spec) {
  std::vector<double> terms;
  terms.reserve(f.size());
  for (const auto& [nk, c] : f) {
    if (nk.k.is_zero())
      throw std::domain_error("covariance_form: zero momentum mode present");
    terms.push_back(spec.covariance(nk.n, nk.k) * std::norm(c));
  }
  return num::pairwise_sum(std::span<const double>(terms));
}

ConsistencyReport consistency_check(const ProjectiveChain& chain,
                                    const std::vector<Coefficients>& f_grid,
                                    std::uint64_t mc_samples,
                                    std::uint64_t seed) {
  if (chain.levels() < 3)
    throw std::invalid_argument("consistency_check: chain length >= 2 steps");
  ConsistencyReport rep;
  const auto step01 = chain.step_at(0);
  const auto step12 = chain.step_at(1);
  const auto spec0 = chain.spec_at(0);
  const auto spec1 = chain.spec_at(1);

  num::Rng rng(num::substream_seed(seed, 7));
  for (const auto& f : f_grid) {
    // (a) pi composition across two steps, probed against a random level-2
    // vector built over the embedded support plus fresh fine modes
    Coefficients g2;
    for (const auto& [nk, c] : embed(embed(f, step01), step12))
      g2[nk] = c + cplx(std::round(4.0 * rng.uniform()) / 2.0,
                        std::round(4.0 * rng.uniform()) / 2.0);
    const auto spec2 = chain.spec_at(2);
    for (const auto& k : spec2.lattice.modes) {
      if (k.is_zero()) continue;
      g2[NK{1, k}] = cplx(1.0, -0.5);
      break;
    }
    const auto direct = project(g2, EmbeddingStep{chain.L0, step01.ratio * step12.ratio});
    const auto staged = project(project(g2, step12), step01);
    double gap = 0.0;
    for (const auto& [nk, c] : direct) {
      const auto it = staged.find(nk);
      gap = std::max(gap, it == staged.end() ? std::abs(c)
                                             : std::abs(c - it->second));
    }
    for (const auto& [nk, c] : staged)
      if (direct.find(nk) == direct.end()) gap = std::max(gap, std::abs(c));
    rep.composition_gap = std::max(rep.composition_gap, gap);

    // (b) adjointness <iota f, g> = <f, pi g> with half-integer data
    Coefficients g1;
    for (const auto& [nk, c] : embed(f, step01)) {
      g1[nk] = c + cplx(std::round(2.0 * rng.uniform()),
                        std::round(2.0 * rng.uniform())) *
                       0.5;
    }
    for (const auto& k : spec1.lattice.modes) {
      if (k.is_zero()) continue;
      bool shared = true;
      for (int a = 0; a < 3; ++a) shared &= (k.idx[a] % step01.ratio == 0);
      if (!shared) {
        g1[NK{0, k}] = cplx(0.5, 1.0);
        break;
      }
    }
    const cplx lhs = pairing(embed(f, step01), g1);
    const cplx rhs = pairing(f, project(g1, step01));
    rep.adjoint_gap = std::max(rep.adjoint_gap, std::abs(lhs - rhs));

    // (c) covariance intertwining and characteristic functionals
    const double q0v = covariance_form(f, spec0);
    const double q1v = covariance_form(embed(f, step01), spec1);
    rep.intertwining_gap = std::max(rep.intertwining_gap, std::abs(q1v - q0v));
    rep.char_functional_gap =
        std::max(rep.char_functional_gap,
                 std::abs(std::exp(-0.25 * q1v) - std::exp(-0.25 * q0v)));

    // (d) U_t and R commute with the embedding
    const double t = 0.37 * chain.beta;
    auto u_t = [&](const Coefficients& h, const PathSpaceSpec& spec) {
      Coefficients out;
      for (const auto& [nk, c] : h) {
        const double w = spec.omega(nk.n);
        out[nk] = c * cplx(std::cos(w * t), -std::sin(w * t));
      }
      return out;
    };
    auto refl = [&](const Coefficients& h) {
      Coefficients out;
      for (const auto& [nk, c] : h) out[NK{-nk.n, nk.k}] = c;
      return out;
    };
    auto diff = [](const Coefficients& x, const Coefficients& y) {
      double g = 0.0;
      for (const auto& [nk, c] : x) {
        const auto it = y.find(nk);
        g = std::max(g, it == y.end() ? std::abs(c) : std::abs(c - it->second));
      }
      for (const auto& [nk, c] : y)
        if (x.find(nk) == x.end()) g = std::max(g, std::abs(c));
      return g;
    };
    rep.translation_commute_gap =
        std::max(rep.translation_commute_gap,
                 diff(embed(u_t(f, spec0), step01), u_t(embed(f, step01), spec1)));
    rep.reflection_commute_gap =
        std::max(rep.reflection_commute_gap,
                 diff(embed(refl(f), step01), refl(embed(f, step01))));
  }
  rep.all_exact = rep.composition_gap == 0.0 && rep.adjoint_gap == 0.0 &&
                  rep.intertwining_gap <= 1e-14 &&
                  rep.char_functional_gap <= 1e-14 &&
                  rep.translation_commute_gap <= 1e-14 &&
                  rep.reflection_commute_gap <= 1e-14;

  // empirical marginal: sample at level 1, pull back, compare with the
  // level-0 characteristic functional
  if (mc_samples > 0 && !f_grid.empty()) {
    const auto& f = f_grid.front();
    pathspace::FieldSampler sampler(spec1, num::substream_seed(seed, 11));
    const auto modes1 = spec1.gaussian_modes();
    std::map<NK, int> index1;
    for (std::size_t i = 0; i < modes1.size(); ++i)
      index1[modes1[i]] = static_cast<int>(i);
    const auto fe = embed(f, step01);
    double sum_re = 0.0, sum_im = 0.0;
    for (std::uint64_t i = 0; i < mc_samples; ++i) {
      const auto a = sampler.sample();
      cplx phi{0.0, 0.0};
      for (const auto& [nk, c] : fe) phi += std::conj(c) * a[index1.at(nk)];
      sum_re += std::cos(phi.real());
      sum_im += std::sin(phi.real());
    }
    const cplx mean(sum_re / mc_samples, sum_im / mc_samples);
    const double analytic = std::exp(-0.25 * covariance_form(f, spec0));
    const double var = std::max(0.0, 1.0 - std::norm(mean));
    const double se = std::sqrt(var / double(mc_samples));
    rep.empirical_gap_over_se =
        std::abs(mean - cplx(analytic, 0.0)) / std::max(se, 1e-300);
    rep.empirical_within_4se = rep.empirical_gap_over_se <= 4.0;
  }
  return rep;
}

MarginalReport projective_marginals(const ProjectiveChain& chain,
                                    const std::vector<Coefficients>& cylinder) {
  MarginalReport rep;
  const std::size_t J = cylinder.size();
  std::vector<std::vector<double>> base(J, std::vector<double>(J, 0.0));
  for (std::size_t lvl = 0; lvl < chain.levels(); ++lvl) {
    const auto spec = chain.spec_at(lvl);
    // push the cylinder functions up to this level
    std::vector<Coefficients> lifted = cylinder;
    for (std::size_t step = 0; step < lvl; ++step)
      for (auto& f : lifted) f = embed(f, chain.step_at(step));
    std::vector<std::vector<double>> cov(J, std::vector<double>(J, 0.0));
    for (std::size_t i = 0; i < J; ++i)
      for (std::size_t j = 0; j < J; ++j) {
        cplx acc{0.0, 0.0};
        for (const auto& [nk, c] : lifted[i]) {
          const auto it = lifted[j].find(nk);
          if (it != lifted[j].end())
            acc += spec.covariance(nk.n, nk.k) * std::conj(c) * it->second;
        }
        cov[i][j] = 0.5 * acc.real();
      }
    if (lvl == 0) {
      base = cov;
      rep.base_covariance = cov;
    } else {
      for (std::size_t i = 0; i < J; ++i)
        for (std::size_t j = 0; j < J; ++j)
          rep.max_covariance_gap = std::max(rep.max_covariance_gap,
                                            std::abs(cov[i][j] - base[i][j]));
    }
  }
  return rep;
}

}  // namespace bosegas::quasilocal

#include "bosegas/states.hpp"

#include <cmath>
#include <stdexcept>

namespace bosegas::states {

namespace {

cplx g_prefactor{0.0, 1.0};

}  // namespace

TwoPointKernel two_point_kernel(const TestFunction& f, const TestFunction& g,
                                const StateChoice& state,
                                const FormContext& ctx, double u) {
  TwoPointKernel d;
  const bool bec = std::holds_alternative<Bec>(state);
  d.qf = forms::q_nonzero_continuum(f, ctx).value;
  d.qg = forms::q_nonzero_continuum(g, ctx).value;
  d.cross_re = forms::q_cross(f, g, ctx, u).value.real();
  if (u == 0.0) {
    d.symplectic = forms::inner(f, g, ctx.d).imag();
  } else {
    d.symplectic = forms::inner_shifted(f, g, ctx, u).value.imag();
  }
  if (bec) {
    d.qf += forms::q_zero(f, ctx).value;
    d.qg += forms::q_zero(g, ctx).value;
    // h(0) = 0: the time shift leaves the zero-mode cross term in place
    d.cross_re += forms::q_zero_cross(f, g, ctx).real();
  }
  if (const auto* lbl = std::get_if<ComponentLabel>(&state)) {
    d.ell_f = mean_functional(*lbl, f.f_hat_zero, ctx);
    d.ell_g = mean_functional(*lbl, g.f_hat_zero, ctx);
  }
  return d;
}

ComponentLabel::ComponentLabel(double r_in, double theta_in) {
  if (r_in < 0.0) throw std::invalid_argument("ComponentLabel: r must be >= 0");
  r = r_in;
  theta = std::fmod(theta_in, num::two_pi);
  if (theta < 0.0) theta += num::two_pi;
}

double mean_functional(const ComponentLabel& lbl, cplx f_hat_zero,
                       const FormContext& ctx) {
  const cplx rotated = cplx(std::cos(lbl.theta), std::sin(lbl.theta)) *
                       f_hat_zero;
  return std::sqrt(ctx.c_const() * lbl.r) * rotated.real();
}

cplx resolvent_prefactor() { return g_prefactor; }

void set_resolvent_prefactor(cplx p) {
  if (std::abs(p - cplx(0.0, 1.0)) > 1e-15 &&
      std::abs(p - cplx(0.0, -1.0)) > 1e-15)
    throw std::invalid_argument("resolvent prefactor must be +i or -i");
  g_prefactor = p;
}

StateData prepare(const TestFunction& f, const StateChoice& state,
                  const FormContext& ctx) {
  StateData d;
  if (std::holds_alternative<Bec>(state)) {
    d.q = forms::q_bec(f, ctx).value;
  } else {
    d.q = forms::q_nonzero_continuum(f, ctx).value;
  }
  if (const auto* lbl = std::get_if<ComponentLabel>(&state))
    d.ell = mean_functional(*lbl, f.f_hat_zero, ctx);
  return d;
}

Expectation weyl_expectation(const TestFunction& f, const StateChoice& state,
                             double t, const FormContext& ctx) {
  const StateData d = prepare(f, state, ctx);
  Expectation e;
  const double mod = std::exp(-0.25 * t * t * d.q);
  const double phase = t * d.ell;
  e.value = mod * cplx(std::cos(phase), std::sin(phase));
  return e;
}

Expectation resolvent_one_point(double lambda, const TestFunction& f,
                                const StateChoice& state,
                                const FormContext& ctx, double tol) {
  if (lambda == 0.0)
    throw std::domain_error("resolvent_one_point: lambda must be nonzero");
  const StateData d = prepare(f, state, ctx);
  const double sgn = lambda > 0.0 ? 1.0 : -1.0;
  const double al = std::abs(lambda);
  auto integrand = [&](double uvar) -> cplx {
    const double t = sgn * uvar / al;
    const double mod = std::exp(-0.25 * t * t * d.q);
    const double phase = t * d.ell;
    return mod * cplx(std::cos(phase), std::sin(phase));
  };
  const auto q = num::laguerre_transform(integrand, tol);
  Expectation e;
  e.value = g_prefactor * sgn * q.value / al;
  e.quadrature_error = q.error / al;
  e.converged = q.converged;
  return e;
}

Expectation resolvent_two_point_from_kernel(double lambda, double mu_scalar,
                                            const TwoPointKernel& d,
                                            double tol) {
  if (lambda == 0.0 || mu_scalar == 0.0)
    throw std::domain_error("resolvent_two_point: scalars must be nonzero");
  const double sgs = lambda > 0.0 ? 1.0 : -1.0;
  const double sgt = mu_scalar > 0.0 ? 1.0 : -1.0;
  const double al = std::abs(lambda), am = std::abs(mu_scalar);
  auto integrand = [&](double uvar, double vvar) -> cplx {
    const double s = sgs * uvar / al;
    const double t = sgt * vvar / am;
    const double quad =
        0.25 * (s * s * d.qf + t * t * d.qg + 2.0 * s * t * d.cross_re);
    const double phase =
        -0.5 * s * t * d.symplectic + s * d.ell_f + t * d.ell_g;
    return std::exp(-quad) * cplx(std::cos(phase), std::sin(phase));
  };
  const auto q = num::laguerre_transform_2d(integrand, tol);
  Expectation e;
  e.value = g_prefactor * g_prefactor * sgs * sgt * q.value / (al * am);
  e.quadrature_error = q.error / (al * am);
  e.converged = q.converged;
  return e;
}

Expectation resolvent_two_point(double lambda, const TestFunction& f,
                                double mu_scalar, const TestFunction& g,
                                const StateChoice& state,
                                const FormContext& ctx, double tol) {
  return resolvent_two_point_from_kernel(
      lambda, mu_scalar, two_point_kernel(f, g, state, ctx, 0.0), tol);
}

Expectation resolvent_two_point_shifted(double lambda, const TestFunction& f,
                                        double mu_scalar,
                                        const TestFunction& g,
                                        const StateChoice& state,
                                        const FormContext& ctx, double u,
                                        double tol) {
  return resolvent_two_point_from_kernel(
      lambda, mu_scalar, two_point_kernel(f, g, state, ctx, u), tol);
}

FourPoint fourpoint_positivity(double lambda, const TestFunction& f,
                               double mu_scalar, const TestFunction& g,
                               const StateChoice& state,
                               const FormContext& ctx, double tol) {
  // |psi(R(l,f) R(m,g))|^2 + |psi(R(l,f)* R(m,g))|^2
  //   + psi(R(m,g)* R(m,g)) psi(R(l,f)* R(l,f)),  R(l,f)* = R(-l,f)
  const auto a = resolvent_two_point(lambda, f, mu_scalar, g, state, ctx, tol);
  const auto b = resolvent_two_point(-lambda, f, mu_scalar, g, state, ctx, tol);
  const auto cg = resolvent_two_point(-mu_scalar, g, mu_scalar, g, state, ctx, tol);
  const auto cf = resolvent_two_point(-lambda, f, lambda, f, state, ctx, tol);
  FourPoint out;
  out.third_term = (cg.value * cf.value).real();
  out.value = std::norm(a.value) + std::norm(b.value) + out.third_term;
  out.converged = a.converged && b.converged && cg.converged && cf.converged;
  return out;
}

}  // namespace bosegas::states

#include "gasbound/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace gasbound {

double unit_ball_volume(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return M_PI;
    case 3: return 4.0 * M_PI / 3.0;
    default: return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  }
}

double sphere_surface(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    default: return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
  }
}

QuadratureResult<double> radial_integral(const std::function<double(double)>& f, int dimension,
                                         double r_max, const std::vector<double>& breakpoints,
                                         const RadialQuadratureConfig& cfg) {
  if (dimension < 1) throw std::invalid_argument("radial_integral: dimension < 1");
  if (!(r_max > 0)) throw std::invalid_argument("radial_integral: r_max must be positive");
  double surf = sphere_surface(dimension);
  auto g = [&](double r) { return surf * std::pow(r, dimension - 1) * f(r); };
  auto res = integrate_real(g, 0.0, r_max, breakpoints, cfg.rel_tol, 0.0, cfg.max_panels);
  if (!res.converged && res.error > 1e-6 * (1.0 + std::abs(res.value)))
    throw std::runtime_error("radial_integral: quadrature failed to converge");
  return res;
}

TemperednessConstants temperedness_constants(const PairPotential& p, const ThermoState& t,
                                             const RadialQuadratureConfig& cfg) {
  if (!(t.beta > 0)) throw std::invalid_argument("temperedness_constants: beta <= 0");
  TemperednessConstants k;
  k.beta = t.beta;
  double R = p.core_radius;
  int d = p.dimension;
  double core = unit_ball_volume(d) * std::pow(R, d);  // Mayer magnitude 1 inside the core
  double r_max = p.tail_extent(t.beta, cfg.tail_eps);
  auto bps = p.tail_breakpoints();

  double err = 0.0;
  auto tail_part = [&](auto integrand) {
    if (r_max <= R) return 0.0;
    double surf = sphere_surface(d);
    auto g = [&](double r) { return surf * std::pow(r, d - 1) * integrand(r); };
    auto res = integrate_real(g, R, r_max, bps, cfg.rel_tol, 0.0, cfg.max_panels);
    if (!res.converged && res.error > 1e-6 * (1.0 + std::abs(res.value)))
      throw std::runtime_error("temperedness_constants: quadrature failed to converge");
    err += res.error;
    return res.value;
  };

  double c_tail = tail_part([&](double r) { return mayer_abs(p, t, r); });
  double a_tail = tail_part([&](double r) {
    double phi = p.evaluate(r);
    return phi < 0 ? std::exp(-t.beta * phi) - 1.0 : 0.0;
  });
  double p_tail = tail_part([&](double r) {
    double phi = p.evaluate(r);
    return phi >= 0 ? 1.0 - std::exp(-t.beta * phi) : 0.0;
  });
  double chat_tail = tail_part([&](double r) {
    return 1.0 - std::exp(-t.beta * std::abs(p.evaluate(r)));
  });

  k.c_phi = core + c_tail;
  k.a_phi = p.purely_repulsive() ? 0.0 : a_tail;
  k.p_phi = core + p_tail;
  k.c_hat_phi = core + chat_tail;
  k.quad_error = err + cfg.tail_eps * core;
  return k;
}

double stability_constant(const PairPotential& p, const ThermoState& t) {
  return 0.5 * t.beta * p.local_stability_unit;
}

}  // namespace gasbound

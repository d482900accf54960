#ifndef GASBOUND_CONSTANTS_HPP
#define GASBOUND_CONSTANTS_HPP

#include <functional>

#include "gasbound/potential.hpp"
#include "gasbound/quadrature.hpp"

namespace gasbound {

struct RadialQuadratureConfig {
  double rel_tol = 1e-10;
  int max_panels = 8000;
  double tail_eps = 1e-12;  // truncation budget relative to the running integral
};

// Temperedness constants at a given inverse temperature, in volume units.
//   c_phi  = integral of |1 - e^{-beta phi}|
//   a_phi  = integral of (e^{-beta phi} - 1) over the attractive set {phi < 0}
//   p_phi  = integral of (1 - e^{-beta phi}) over {phi >= 0} (incl. the core)
//   c_hat  = integral of (1 - e^{-beta |phi|})
struct TemperednessConstants {
  double c_phi = 0.0;
  double a_phi = 0.0;
  double p_phi = 0.0;
  double c_hat_phi = 0.0;
  double beta = 0.0;
  double quad_error = 0.0;
};

double unit_ball_volume(int dimension);
double sphere_surface(int dimension);  // area of the unit (d-1)-sphere

// Integrates f over R^d assuming radial symmetry:
//   S_{d-1} * int_0^r_max r^{d-1} f(r) dr.
// Callers supply a finite truncation radius; breakpoints become panel
// boundaries.
QuadratureResult<double> radial_integral(const std::function<double(double)>& f, int dimension,
                                         double r_max, const std::vector<double>& breakpoints,
                                         const RadialQuadratureConfig& cfg = {});

TemperednessConstants temperedness_constants(const PairPotential& p, const ThermoState& t,
                                             const RadialQuadratureConfig& cfg = {});

// B = beta * C0 / 2, the stability constant implied by local stability.
double stability_constant(const PairPotential& p, const ThermoState& t);

}  // namespace gasbound

#endif

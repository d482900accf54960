#ifndef GASBOUND_ACTIVITY_HPP
#define GASBOUND_ACTIVITY_HPP

#include <complex>
#include <functional>
#include <vector>

#include "gasbound/potential.hpp"
#include "gasbound/region1d.hpp"

namespace gasbound {

using complexd = std::complex<double>;

// One Boltzmann-type factor 1 + (e^{-beta phi(center - .)} - 1) 1_{|. - center| < radius}.
struct ModFactor {
  double center = 0.0;
  double radius = 0.0;  // in [R, inf]; inf means the factor applies everywhere
};

// An activity function in modulation form (1D oracle):
//   lambda^m(y) = alpha * 1_A(y) * prod_i factor_i(y) * base(y),
// with pairwise factor centers at hard-core-admissible distances and the
// support A avoiding every open core ball around them.
struct ActivityField {
  const PairPotential* pot = nullptr;
  ThermoState thermo{1.0};

  complexd base = 1.0;
  std::function<complexd(double)> base_fn;  // optional position-dependent base
  double base_sup = 1.0;                    // sup |base|

  double alpha = 1.0;
  Region1D support = Region1D::all();
  std::vector<ModFactor> factors;

  complexd base_at(double y) const { return base_fn ? base_fn(y) : base; }
  complexd eval(double y) const;
  void check_invariants() const;  // throws on violation
};

ActivityField constant_activity(const PairPotential& p, const ThermoState& t, complexd lambda);

// Composition of modulations: scales alpha, intersects the support, appends
// factors; the composed field is checked against the modulation invariants.
ActivityField modulate(const ActivityField& a, double alpha2, const std::vector<ModFactor>& factors,
                       const Region1D& region);

// The one-step recursion modulation lambda_{v -> w}:
//   d(v,w) <  R: support gains {|. - v| >= d(v,w)}, no new factor
//   d(v,w) >= R: support gains {|. - v| >= R}, new factor (v, d(v,w))
ActivityField modulate_step(const ActivityField& a, double v, double w);

}  // namespace gasbound

#endif

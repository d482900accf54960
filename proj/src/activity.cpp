#include "gasbound/activity.hpp"

#include <cmath>
#include <stdexcept>

namespace gasbound {

complexd ActivityField::eval(double y) const {
  if (!support.contains(y)) return 0.0;
  complexd v = alpha * base_at(y);
  for (const auto& f : factors) {
    double d = std::abs(y - f.center);
    if (d < f.radius) v *= boltzmann(*pot, thermo, d);
  }
  return v;
}

void ActivityField::check_invariants() const {
  if (!pot) throw std::invalid_argument("activity: null potential");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("activity: alpha not in [0,1]");
  double R = pot->core_radius;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!(factors[i].radius >= R))
      throw std::invalid_argument("activity: factor radius below core radius");
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      if (std::abs(factors[i].center - factors[j].center) < R)
        throw std::invalid_argument("activity: factor centers closer than core radius");
    if (support.meets_open_ball(factors[i].center, R))
      throw std::invalid_argument("activity: support meets open core ball of a factor center");
  }
}

ActivityField constant_activity(const PairPotential& p, const ThermoState& t, complexd lambda) {
  ActivityField a;
  a.pot = &p;
  a.thermo = t;
  a.base = lambda;
  a.base_sup = std::abs(lambda);
  return a;
}

ActivityField modulate(const ActivityField& a, double alpha2, const std::vector<ModFactor>& factors,
                       const Region1D& region) {
  ActivityField out = a;
  out.alpha *= alpha2;
  out.support = a.support.intersect(region);
  out.factors.insert(out.factors.end(), factors.begin(), factors.end());
  out.check_invariants();
  return out;
}

ActivityField modulate_step(const ActivityField& a, double v, double w) {
  double R = a.pot->core_radius;
  double d = std::abs(v - w);
  if (d < R) return modulate(a, 1.0, {}, Region1D::ball_complement(v, d));
  return modulate(a, 1.0, {{v, d}}, Region1D::ball_complement(v, R));
}

}  // namespace gasbound

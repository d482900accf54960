#ifndef GASBOUND_POTENTIAL_HPP
#define GASBOUND_POTENTIAL_HPP

#include <limits>
#include <string>
#include <vector>

namespace gasbound {

// Radially symmetric hard-core pair potential.  The hard core is implicit:
// evaluate(r) returns +inf for r < core_radius, and the Boltzmann factor is
// exactly zero there.  The tail (r >= core_radius) is one of a few
// piecewise-analytic shapes or a tabulated curve.
enum class TailKind { Zero, SquareWell, KacExponential, Tabulated };

struct PairPotential {
  int dimension = 1;
  double core_radius = 1.0;
  TailKind tail = TailKind::Zero;

  // square well: phi(r) = -well_depth on [core_radius, well_range), 0 beyond
  double well_range = 0.0;
  double well_depth = 0.0;

  // Kac tail: phi(r) = -0.5 * kac_alpha * kac_gamma * exp(-kac_gamma * r)
  double kac_alpha = 0.0;
  double kac_gamma = 0.0;

  // tabulated tail: linear interpolation in r, zero beyond the last node
  std::vector<double> table_r;
  std::vector<double> table_phi;

  // energy C0 >= 0 such that beta*phi has local stability constant beta*C0
  double local_stability_unit = 0.0;

  std::string label;

  double evaluate(double r) const;  // +inf inside the core
  bool purely_repulsive() const;

  // Radii where the Mayer integrand has kinks or jumps (core edge, well
  // edge, table nodes).  Used as mandatory quadrature panel boundaries.
  std::vector<double> tail_breakpoints() const;

  // Truncation radius such that the Mayer tail beyond it integrates to less
  // than eps_rel times the hard-core contribution.
  double tail_extent(double beta, double eps_rel = 1e-12) const;
};

struct ThermoState {
  double beta = 1.0;
};

double boltzmann(const PairPotential& p, const ThermoState& t, double r);
double mayer(const PairPotential& p, const ThermoState& t, double r);      // 1 - e^{-beta phi}
double mayer_abs(const PairPotential& p, const ThermoState& t, double r);  // |1 - e^{-beta phi}|

PairPotential hard_sphere(int dimension, double core_radius);
PairPotential square_well(int dimension, double core_radius, double range, double depth);
PairPotential kac_exponential(double core_radius, double alpha, double gamma);
PairPotential tabulated_potential(double core_radius, std::vector<double> r,
                                  std::vector<double> phi, double local_stability_unit);

// Plain-text config, key = value lines.  Recognized keys: kind, dimension,
// core_radius, well_range, well_depth, kac_alpha, kac_gamma, table_file,
// local_stability_unit, label.
PairPotential load_potential(const std::string& path);

inline constexpr double kInfiniteEnergy = std::numeric_limits<double>::infinity();

}  // namespace gasbound

#endif

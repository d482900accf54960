#ifndef GASBOUND_THRESHOLD_HPP
#define GASBOUND_THRESHOLD_HPP

#include <string>
#include <vector>

#include "gasbound/constants.hpp"

namespace gasbound {

// Principal branch of the Lambert W function, Halley iteration.
// Valid for x >= -1/e; |W e^W - x| <= 1e-14 * max(|x|, 1).
double lambert_w0(double x);

enum class OptimizerBranch { Repulsive, Attractive };

// Largest admissible activity scale compatible with both the self-map and
// contraction conditions, together with the window parameter z~^2.
struct OptimizerSolution {
  double lambda_tilde = 0.0;
  double z_tilde_sq = 0.0;
  double w_value = 0.0;  // W(e * a_phi / delta)
  OptimizerBranch branch = OptimizerBranch::Repulsive;
};

// Maximum of z -> e^{-P z^2 + A z~^2} (P z^2 + A z~^2) over [0, z~],
// in closed form.
double m_max(const TemperednessConstants& k, double z_tilde_sq);

OptimizerSolution solve_optimizer(const TemperednessConstants& k, double delta);

bool self_map_holds(double lambda, double z_sq, double a_phi);

struct ContractionStatus {
  bool holds = false;     // strict inequality
  bool boundary = false;  // within 1e-12 of equality
};
ContractionStatus contraction_status(double lambda, double z_sq, double delta,
                                     const TemperednessConstants& k);
bool contraction_holds(double lambda, double z_sq, double delta, const TemperednessConstants& k);

struct ThresholdReport {
  OptimizerSolution optimizer;
  double delta_used = 0.0;
  double beta_c = 0.0;  // beta * C, the scaled local stability constant
  double new_threshold = 0.0;
  double penrose_ruelle = 0.0;
  double procacci_yuhjtman = 0.0;
  double ratio_pr = 0.0;
  double ratio_py = 0.0;
};

// Theorem-level activity threshold e^{2-2W(eA/delta)} delta^{-1} e^{-(beta C + 1)}
// plus the classical comparison bounds.
ThresholdReport analyticity_threshold(const TemperednessConstants& k, double delta, double beta_c);

struct SweepRow {
  double beta = 0.0;
  TemperednessConstants constants;
  ThresholdReport report;
  bool ok = false;
  std::string error;
};

// One threshold report per beta; per-row failures are recorded, not fatal.
// delta_policy < 0 means "use c_phi at each beta".
std::vector<SweepRow> sweep(const PairPotential& p, double delta_policy,
                            const std::vector<double>& beta_grid,
                            const RadialQuadratureConfig& cfg = {});

}  // namespace gasbound

#endif

#include "gasbound/threshold.hpp"

#include <cmath>
#include <stdexcept>

namespace gasbound {

double lambert_w0(double x) {
  constexpr double inv_e = 0.36787944117144232160;
  if (x < -inv_e - 1e-14) throw std::invalid_argument("lambert_w0: x < -1/e");
  if (x <= -inv_e) return -1.0;  // branch point; Halley's denominator vanishes
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.32) {
    // series around the branch point
    double p = std::sqrt(std::max(2.0 * (M_E * x + 1.0), 0.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < M_E) {
    w = x / (1.0 + x);
  } else {
    double l1 = std::log(x), l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int it = 0; it < 50; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double wp1 = w + 1.0;
    double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double m_max(const TemperednessConstants& k, double z_tilde_sq) {
  if (z_tilde_sq < 0) throw std::invalid_argument("m_max: z_tilde_sq < 0");
  if (k.a_phi <= 0.0) {
    double pz = k.p_phi * z_tilde_sq;
    return pz <= 1.0 ? std::exp(-pz) * pz : std::exp(-1.0);
  }
  double cz = k.c_phi * z_tilde_sq;
  if (cz <= 1.0) return cz * std::exp(-(k.p_phi - k.a_phi) * z_tilde_sq);
  return std::exp(2.0 * k.a_phi * z_tilde_sq - 1.0);
}

OptimizerSolution solve_optimizer(const TemperednessConstants& k, double delta) {
  const double slack = 1e-12 * (1.0 + k.c_phi);
  if (delta < k.a_phi - slack)
    throw std::invalid_argument("solve_optimizer: delta must be >= a_phi");
  if (delta > k.c_phi + slack + 10.0 * k.quad_error)
    throw std::invalid_argument("solve_optimizer: delta must be <= c_phi");
  OptimizerSolution s;
  if (k.a_phi <= 0.0) {
    s.branch = OptimizerBranch::Repulsive;
    s.lambda_tilde = M_E / delta;
    s.z_tilde_sq = M_E / delta;  // smallest admissible choice
    s.w_value = 0.0;
  } else {
    s.branch = OptimizerBranch::Attractive;
    s.w_value = lambert_w0(M_E * k.a_phi / delta);
    s.lambda_tilde = std::exp(1.0 - 2.0 * s.w_value) / delta;
    s.z_tilde_sq = s.w_value / k.a_phi;
  }
  return s;
}

bool self_map_holds(double lambda, double z_sq, double a_phi) {
  return lambda * std::exp(a_phi * z_sq) <= z_sq + 1e-12;
}

ContractionStatus contraction_status(double lambda, double z_sq, double delta,
                                     const TemperednessConstants& k) {
  ContractionStatus st;
  double lhs = lambda * m_max(k, z_sq) * delta;
  st.boundary = std::abs(lhs - 1.0) <= 1e-12;
  st.holds = lhs < 1.0 && !st.boundary;
  return st;
}

bool contraction_holds(double lambda, double z_sq, double delta, const TemperednessConstants& k) {
  return contraction_status(lambda, z_sq, delta, k).holds;
}

ThresholdReport analyticity_threshold(const TemperednessConstants& k, double delta, double beta_c) {
  if (beta_c < 0) throw std::invalid_argument("analyticity_threshold: beta_c < 0");
  ThresholdReport r;
  r.optimizer = solve_optimizer(k, delta);
  r.delta_used = delta;
  r.beta_c = beta_c;
  r.new_threshold = std::exp(2.0 - 2.0 * r.optimizer.w_value) / delta * std::exp(-(beta_c + 1.0));
  double b = 0.5 * beta_c;
  r.penrose_ruelle = std::exp(-(2.0 * b + 1.0)) / k.c_phi;
  r.procacci_yuhjtman = std::exp(-(b + 1.0)) / k.c_hat_phi;
  r.ratio_pr = r.new_threshold / r.penrose_ruelle;
  r.ratio_py = r.new_threshold / r.procacci_yuhjtman;
  return r;
}

std::vector<SweepRow> sweep(const PairPotential& p, double delta_policy,
                            const std::vector<double>& beta_grid,
                            const RadialQuadratureConfig& cfg) {
  std::vector<SweepRow> rows;
  rows.reserve(beta_grid.size());
  for (double beta : beta_grid) {
    SweepRow row;
    row.beta = beta;
    try {
      ThermoState t{beta};
      row.constants = temperedness_constants(p, t, cfg);
      double delta = delta_policy > 0 ? delta_policy : row.constants.c_phi;
      row.report = analyticity_threshold(row.constants, delta, beta * p.local_stability_unit);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gasbound

#ifndef GASBOUND_ORACLE_HPP
#define GASBOUND_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gasbound/activity.hpp"
#include "gasbound/region1d.hpp"

namespace gasbound {

// Brute-force 1D verification harness.  The hard core caps the particle
// number at n_max = floor(|domain| / R) + 1, so the grand-canonical series is
// a finite sum and Z is exact up to quadrature.

struct OracleConfig {
  double z_rel_tol = 1e-10;
  double z_abs_tol = 1e-13;
  int z_max_panels = 2000;
  int n_cap = 5;               // reject domains whose n_max exceeds this
  double zero_guard = 1e-12;   // |Z| below this is a zero-freeness violation
  double outer_rel_tol = 1e-7;
  double outer_abs_tol = 1e-10;
  int outer_max_panels = 400;
  double tail_eps = 1e-12;
};

struct ZResult {
  complexd value{};
  double error = 0.0;
  int n_max = 0;
};

struct IdentityCheck {
  complexd lhs{};
  complexd rhs{};
  double residual = 0.0;
  double scale = 0.0;  // magnitude of the reference side, for relative checks
};

double potential_energy(std::span<const double> points, const PairPotential& p,
                        const ThermoState& t);

// Z over `domain` with every particle additionally weighted by the Boltzmann
// factors of the fixed `extra_centers` (used for one-point densities).
ZResult partition_function(const ActivityField& a, const Region1D& domain, const OracleConfig& cfg = {},
                           std::span<const double> extra_centers = {});

// Coefficients c_n of Z(lambda) = sum_n c_n lambda^n for a constant activity.
std::vector<double> partition_polynomial(const PairPotential& p, const ThermoState& t,
                                         const Region1D& domain, const OracleConfig& cfg = {});

complexd one_point_density(const ActivityField& a, const Region1D& domain, double v,
                           const OracleConfig& cfg = {});

// |log Z(lambda) - int_domain rho_{lambda_x}(x) dx| with lambda_x the activity
// cut off outside the ball of radius |x| around the origin.
IdentityCheck check_log_z_identity(const ActivityField& a, const Region1D& domain,
                                   const OracleConfig& cfg = {});

// |rho(v) - lambda(v) exp(-int dw [1-e^{-beta phi(v-w)}] rho_{lambda_{v->w}}(w))|.
IdentityCheck check_recursion_identity(const ActivityField& a, const Region1D& domain, double v,
                                       const OracleConfig& cfg = {});

// Value returned once the recursion reaches depth k; arguments are the k+1
// path points.
using BoundaryFn = std::function<complexd(std::span<const double>)>;

// Depth-k tree recursion with the reference modulating function restricted to
// prefixes inside the support of `a`.  d = 1 and k <= 2 only.
complexd tree_recursion_eval(const ActivityField& a, const Region1D& domain, const BoundaryFn& tau,
                             int k, double v0, const OracleConfig& cfg = {});

// Tree recursion with the density boundary condition against the directly
// computed one-point density.
IdentityCheck check_density_correspondence(const ActivityField& a, const Region1D& domain, int k,
                                           double v0, const OracleConfig& cfg = {});

// Sampled assertion |gamma(prefix,.) lambda^m(.)| <= e^{beta C} sup|base| + 1e-12.
bool check_modulation_bound(const ActivityField& a, int n_samples, std::uint64_t seed);

struct ContractionCheckResult {
  bool ok = true;
  double worst_violation = 0.0;  // max over trials of lhs - rhs (<= 0 when ok)
  int trials = 0;
};

// |sqrt(pi_1(v0)) - sqrt(pi_2(v0))|^2 <= (lambda_tilde m_value)^k vk_value
// * sup|tau_1 - tau_2| for random piecewise-constant boundary pairs in
// [0, z_tilde_sq].
ContractionCheckResult check_contraction_bound(const ActivityField& a, const Region1D& domain,
                                               int k, double v0, double z_tilde_sq,
                                               double lambda_tilde, double m_value, double vk_value,
                                               int trials, std::uint64_t seed,
                                               const OracleConfig& cfg = {});

struct ZeroFreeReport {
  bool zero_found = false;
  complexd zero_location{};
  double min_abs_z = 0.0;
  double max_log_ratio = 0.0;  // max |log Z| / |domain| over the grid
};

// Polar-grid scan of Z(lambda) over |lambda| < lambda_star.
ZeroFreeReport zero_free_scan(const PairPotential& p, const ThermoState& t, const Region1D& domain,
                              double lambda_star, int n_theta, int n_r,
                              const OracleConfig& cfg = {});

// Exact Tonks (1D hard rod) pressure: beta p = W(lambda R) / R.
double tonks_reference(double core_radius, double lambda);

}  // namespace gasbound

#endif

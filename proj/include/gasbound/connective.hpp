#ifndef GASBOUND_CONNECTIVE_HPP
#define GASBOUND_CONNECTIVE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gasbound/constants.hpp"
#include "gasbound/potential.hpp"

namespace gasbound {

// Points live in at most three dimensions; coordinates beyond the potential's
// dimension are zero.
using Vec = std::array<double, 3>;

double dist(const Vec& a, const Vec& b, int dimension);

// Classification of a point sequence: Good with the set I of indices i where
// d(v_i, v_{i+1}) >= R, subject to the cross condition d(v_i, v_{i'}) >= R
// for all i in I and i < i' <= j-1; Bad otherwise.
struct SequenceClass {
  bool good = false;
  std::vector<int> index_set;  // meaningful only when good
};

SequenceClass classify_sequence(std::span<const Vec> points, double core_radius, int dimension);

// Reference modulating function evaluated at w given the prefix.  Balls are
// open; their complements contain the boundary.
double gamma_c_eval(std::span<const Vec> prefix, const Vec& w, const PairPotential& p,
                    const ThermoState& t);

// Which argument the modulating factor at level l is evaluated at:
//   Trailing: gamma_c(v_0..v_{l-1}, v_{l-1})   (the literal recursion weight)
//   Leading:  gamma_c(v_0..v_{l-1}, v_l)
enum class Convention { Trailing, Leading };

// Product over l = 1..k of gamma factor times |1 - e^{-beta phi(v_{l-1}-v_l)}|.
double vk_integrand(std::span<const Vec> path, const PairPotential& p, const ThermoState& t,
                    Convention convention);

struct VkEstimate {
  int k = 0;
  double mean = 0.0;
  double std_error = 0.0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
  Convention convention = Convention::Trailing;
};

// Importance-sampled estimate of V_k anchored at the origin.  Each step is
// drawn radially from |1 - e^{-beta phi}| / C_phi; chains are keyed by
// (seed, chain index) so the result is identical for any thread count.
VkEstimate vk_monte_carlo(const PairPotential& p, const ThermoState& t, int k,
                          long long n_samples, std::uint64_t seed, Convention convention,
                          int max_threads = 0);

struct VkQuadratureConfig {
  double rel_tol = 1e-8;
  int max_panels_per_level = 600;
};

// Deterministic nested quadrature for d = 1 and k <= 3.
double vk_quadrature_1d(const PairPotential& p, const ThermoState& t, int k,
                        Convention convention, const VkQuadratureConfig& cfg = {});

struct DeltaEstimate {
  double delta_hat = 0.0;
  int witnessing_k = 0;
  std::vector<VkEstimate> vk_values;
  std::vector<bool> admissible;  // V_k >= A_phi^k per k
  double std_error = 0.0;        // propagated onto delta_hat
  bool fallback_k1 = false;      // no admissible k under MC noise
};

DeltaEstimate delta_phi_upper(std::span<const VkEstimate> estimates, double a_phi);

}  // namespace gasbound

#endif

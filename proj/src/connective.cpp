#include "gasbound/connective.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "gasbound/quadrature.hpp"
#include "gasbound/rng.hpp"

namespace gasbound {

double dist(const Vec& a, const Vec& b, int dimension) {
  double s = 0.0;
  for (int i = 0; i < dimension; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

SequenceClass classify_sequence(std::span<const Vec> points, double core_radius, int dimension) {
  if (points.empty()) throw std::invalid_argument("classify_sequence: empty sequence");
  SequenceClass c;
  int j = static_cast<int>(points.size());
  std::vector<int> index_set;
  for (int i = 0; i + 1 < j; ++i)
    if (dist(points[i], points[i + 1], dimension) >= core_radius) index_set.push_back(i);
  for (int i : index_set)
    for (int ip = i + 1; ip < j; ++ip)
      if (dist(points[i], points[ip], dimension) < core_radius) return c;  // Bad
  c.good = true;
  c.index_set = std::move(index_set);
  return c;
}

double gamma_c_eval(std::span<const Vec> prefix, const Vec& w, const PairPotential& p,
                    const ThermoState& t) {
  auto cls = classify_sequence(prefix, p.core_radius, p.dimension);
  if (!cls.good) return 0.0;
  int j = static_cast<int>(prefix.size());
  double R = p.core_radius;
  double value = 1.0;
  auto in_set = [&](int i) {
    return std::binary_search(cls.index_set.begin(), cls.index_set.end(), i);
  };
  for (int i = 0; i + 1 < j; ++i) {
    double step = dist(prefix[i], prefix[i + 1], p.dimension);
    double dw = dist(prefix[i], w, p.dimension);
    if (in_set(i)) {
      if (dw < R) return 0.0;
      if (dw < step) value *= boltzmann(p, t, dw);  // (e^{-beta phi} - 1) + 1
    } else {
      if (dw < step) return 0.0;
    }
  }
  return value;
}

double vk_integrand(std::span<const Vec> path, const PairPotential& p, const ThermoState& t,
                    Convention convention) {
  if (path.size() < 2) throw std::invalid_argument("vk_integrand: path too short");
  double value = 1.0;
  for (size_t l = 1; l < path.size(); ++l) {
    std::span<const Vec> prefix = path.subspan(0, l);
    const Vec& at = convention == Convention::Trailing ? path[l - 1] : path[l];
    value *= gamma_c_eval(prefix, at, p, t);
    if (value == 0.0) return 0.0;
    value *= mayer_abs(p, t, dist(path[l - 1], path[l], p.dimension));
    if (value == 0.0) return 0.0;
  }
  return value;
}

namespace {

// Inverse-CDF sampler for the radial step density r^{d-1} |1 - e^{-beta phi}|.
// Cells are uniform within; the weight uses the exact piecewise-constant
// sampling density, so the estimator is unbiased whatever the table accuracy.
class StepSampler {
 public:
  StepSampler(const PairPotential& p, const ThermoState& t, int cells_total = 4096)
      : p_(p), t_(t), surf_(sphere_surface(p.dimension)) {
    double r_max = p.tail_extent(t.beta);
    std::vector<double> edges{0.0};
    for (double b : p.tail_breakpoints())
      if (b > 0 && b < r_max) edges.push_back(b);
    edges.push_back(r_max);
    std::sort(edges.begin(), edges.end());
    double total_len = r_max;
    for (size_t s = 0; s + 1 < edges.size(); ++s) {
      double a = edges[s], b = edges[s + 1];
      int n = std::max(8, static_cast<int>(cells_total * (b - a) / total_len));
      for (int i = 0; i < n; ++i) {
        lo_.push_back(a + (b - a) * i / n);
        hi_.push_back(a + (b - a) * (i + 1) / n);
      }
    }
    mass_.resize(lo_.size());
    cum_.resize(lo_.size() + 1, 0.0);
    // 8-point Gauss-Legendre per cell
    static const double gx[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                 0.9602898564975363};
    static const double gw[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                 0.1012285362903763};
    for (size_t c = 0; c < lo_.size(); ++c) {
      double a = lo_[c], b = hi_[c], m = 0.5 * (a + b), h = 0.5 * (b - a);
      double s = 0.0;
      for (int i = 0; i < 4; ++i)
        s += gw[i] * (density(m - h * gx[i]) + density(m + h * gx[i]));
      mass_[c] = s * h;
      cum_[c + 1] = cum_[c] + mass_[c];
    }
    total_ = cum_.back();
    if (!(total_ > 0)) throw std::runtime_error("StepSampler: zero total Mayer mass");
  }

  // Draws a radius; weight_out = density(r) / q(r) where q is the actual
  // sampling density.  density already carries the surface factor.
  double sample_radius(CounterRng& rng, double& weight_out) const {
    double u = rng.next_double() * total_;
    size_t c = std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin();
    c = std::min(c == 0 ? 0 : c - 1, mass_.size() - 1);
    while (c + 1 < mass_.size() && mass_[c] == 0.0) ++c;
    double r = lo_[c] + (hi_[c] - lo_[c]) * rng.next_double();
    double q = (mass_[c] / total_) / (hi_[c] - lo_[c]);
    weight_out = q > 0 ? density(r) / q : 0.0;
    return r;
  }

  double density(double r) const {
    return surf_ * std::pow(r, p_.dimension - 1) * mayer_abs(p_, t_, r);
  }

 private:
  const PairPotential& p_;
  const ThermoState& t_;
  double surf_;
  std::vector<double> lo_, hi_, mass_, cum_;
  double total_ = 0.0;
};

Vec random_direction(CounterRng& rng, int d) {
  Vec v{0.0, 0.0, 0.0};
  if (d == 1) {
    v[0] = rng.next_double() < 0.5 ? -1.0 : 1.0;
  } else if (d == 2) {
    double th = 2.0 * M_PI * rng.next_double();
    v[0] = std::cos(th);
    v[1] = std::sin(th);
  } else {
    double z = 2.0 * rng.next_double() - 1.0;
    double th = 2.0 * M_PI * rng.next_double();
    double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    v[0] = s * std::cos(th);
    v[1] = s * std::sin(th);
    v[2] = z;
  }
  return v;
}

int resolve_threads(int max_threads) {
  if (const char* env = std::getenv("GASBOUND_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) max_threads = max_threads > 0 ? std::min(max_threads, n) : n;
  }
  if (max_threads <= 0) max_threads = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, max_threads);
}

}  // namespace

VkEstimate vk_monte_carlo(const PairPotential& p, const ThermoState& t, int k,
                          long long n_samples, std::uint64_t seed, Convention convention,
                          int max_threads) {
  if (k < 1) throw std::invalid_argument("vk_monte_carlo: k < 1");
  if (n_samples < 1000) throw std::invalid_argument("vk_monte_carlo: need at least 1e3 samples");
  StepSampler sampler(p, t);

  constexpr long long kChunk = 8192;
  long long n_chains = (n_samples + kChunk - 1) / kChunk;
  std::vector<long double> sums(n_chains, 0.0L), sumsqs(n_chains, 0.0L);

  auto run_chain = [&](long long chain) {
    CounterRng rng(seed, static_cast<std::uint64_t>(chain));
    long long count = std::min(kChunk, n_samples - chain * kChunk);
    long double s = 0.0L, s2 = 0.0L;
    std::vector<Vec> path(k + 1, Vec{0.0, 0.0, 0.0});
    for (long long i = 0; i < count; ++i) {
      double w = 1.0;
      int reached = 0;
      for (int l = 1; l <= k; ++l) {
        double sw;
        double r = sampler.sample_radius(rng, sw);
        Vec dir = random_direction(rng, p.dimension);
        for (int c = 0; c < 3; ++c) path[l][c] = path[l - 1][c] + r * dir[c];
        std::span<const Vec> prefix(path.data(), static_cast<size_t>(l));
        const Vec& at = convention == Convention::Trailing ? path[l - 1] : path[l];
        double g = gamma_c_eval(prefix, at, p, t);
        w *= sw * g;
        if (w == 0.0) break;
        reached = l;
        if (!std::isfinite(w))
          throw std::runtime_error("vk_monte_carlo: non-finite weight at depth " +
                                   std::to_string(l));
      }
      (void)reached;
      s += w;
      s2 += static_cast<long double>(w) * w;
    }
    sums[chain] = s;
    sumsqs[chain] = s2;
  };

  int threads = resolve_threads(max_threads);
  if (threads <= 1 || n_chains == 1) {
    for (long long c = 0; c < n_chains; ++c) run_chain(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long long> next{0};
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&]() {
        for (;;) {
          long long c = next.fetch_add(1);
          if (c >= n_chains) return;
          run_chain(c);
        }
      });
    for (auto& th : pool) th.join();
  }

  long double sum = 0.0L, sumsq = 0.0L;  // fixed reduction order
  for (long long c = 0; c < n_chains; ++c) {
    sum += sums[c];
    sumsq += sumsqs[c];
  }

  VkEstimate est;
  est.k = k;
  est.n_samples = n_samples;
  est.seed = seed;
  est.convention = convention;
  long double n = static_cast<long double>(n_samples);
  est.mean = static_cast<double>(sum / n);
  long double var = std::max(0.0L, sumsq / n - (sum / n) * (sum / n));
  est.std_error = static_cast<double>(std::sqrt(var / n));
  return est;
}

namespace {

double vk_quad_level(const PairPotential& p, const ThermoState& t, std::vector<Vec>& path,
                     int level, int k, Convention convention, const VkQuadratureConfig& cfg,
                     double r_max) {
  double prev = path[level - 1][0];
  std::span<const Vec> prefix(path.data(), static_cast<size_t>(level));

  double trailing_factor = 1.0;
  if (convention == Convention::Trailing) {
    trailing_factor = gamma_c_eval(prefix, path[level - 1], p, t);
    if (trailing_factor == 0.0) return 0.0;
  }

  std::vector<double> bps;
  for (double b : p.tail_breakpoints()) {
    bps.push_back(prev - b);
    bps.push_back(prev + b);
  }
  for (int i = 0; i < level; ++i) {
    double c = path[i][0];
    bps.push_back(c - p.core_radius);
    bps.push_back(c + p.core_radius);
    if (i + 1 < level) {
      double step = std::abs(path[i + 1][0] - path[i][0]);
      bps.push_back(c - step);
      bps.push_back(c + step);
    }
  }

  auto f = [&](double w) {
    path[level][0] = w;
    double val = trailing_factor;
    if (convention == Convention::Leading) {
      val = gamma_c_eval(prefix, path[level], p, t);
      if (val == 0.0) return 0.0;
    }
    val *= mayer_abs(p, t, std::abs(w - prev));
    if (val == 0.0) return 0.0;
    if (level < k) val *= vk_quad_level(p, t, path, level + 1, k, convention, cfg, r_max);
    return val;
  };

  auto res = integrate_real(f, prev - r_max, prev + r_max, bps, cfg.rel_tol,
                            cfg.rel_tol * 0.01, cfg.max_panels_per_level);
  return res.value;
}

}  // namespace

double vk_quadrature_1d(const PairPotential& p, const ThermoState& t, int k,
                        Convention convention, const VkQuadratureConfig& cfg) {
  if (p.dimension != 1) throw std::invalid_argument("vk_quadrature_1d: requires d = 1");
  if (k < 1 || k > 3) throw std::invalid_argument("vk_quadrature_1d: k must be in 1..3");
  std::vector<Vec> path(k + 1, Vec{0.0, 0.0, 0.0});
  double r_max = p.tail_extent(t.beta);
  return vk_quad_level(p, t, path, 1, k, convention, cfg, r_max);
}

DeltaEstimate delta_phi_upper(std::span<const VkEstimate> estimates, double a_phi) {
  if (estimates.empty()) throw std::invalid_argument("delta_phi_upper: no estimates");
  DeltaEstimate d;
  d.vk_values.assign(estimates.begin(), estimates.end());
  d.admissible.resize(estimates.size());
  double best = kInfiniteEnergy;
  for (size_t i = 0; i < estimates.size(); ++i) {
    const auto& e = estimates[i];
    double floor = std::pow(a_phi, e.k);
    d.admissible[i] = e.mean >= floor;
    if (!d.admissible[i]) continue;
    double root = std::pow(e.mean, 1.0 / e.k);
    if (root < best) {
      best = root;
      d.witnessing_k = e.k;
      d.delta_hat = root;
      d.std_error = root / e.mean * e.std_error / e.k;  // V^{1/k-1} dV / k
    }
  }
  if (!std::isfinite(best)) {
    // possible only under MC noise; fall back to k = 1 (= C_phi estimate)
    const auto& e = estimates.front();
    d.fallback_k1 = true;
    d.witnessing_k = e.k;
    d.delta_hat = std::pow(e.mean, 1.0 / e.k);
    d.std_error = d.delta_hat / e.mean * e.std_error / e.k;
  }
  return d;
}

}  // namespace gasbound

#include "gasbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gasbound/connective.hpp"
#include "gasbound/quadrature.hpp"
#include "gasbound/rng.hpp"
#include "gasbound/threshold.hpp"

namespace gasbound {

namespace {

std::vector<double> shifted_breakpoints(double center, const std::vector<double>& radii) {
  std::vector<double> out;
  out.reserve(2 * radii.size());
  for (double r : radii) {
    out.push_back(center - r);
    out.push_back(center + r);
  }
  return out;
}

void append(std::vector<double>& dst, const std::vector<double>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

int particle_cap(const Region1D& domain, double core_radius) {
  int n = 0;
  for (const auto& part : domain.parts()) {
    double len = part.length();
    if (len <= 0.0) continue;
    n += static_cast<int>(std::floor(len / core_radius * (1 + 1e-12))) + 1;
  }
  return n;
}

struct ZContext {
  const ActivityField* a;
  const Region1D* domain;
  std::span<const double> extras;
  const OracleConfig* cfg;
  int n_max;
  std::vector<double> tbps;        // radial kink positions of the potential
  std::vector<double> static_bps;  // absolute breakpoint positions
  double err_acc = 0.0;
};

complexd particle_weight(const ZContext& c, double y, std::span<const double> prefix) {
  complexd v = c.a->eval(y);
  if (v == complexd(0.0)) return v;
  for (double e : c.extras) {
    v *= boltzmann(*c.a->pot, c.a->thermo, std::abs(y - e));
    if (v == complexd(0.0)) return v;
  }
  for (double x : prefix) {
    v *= boltzmann(*c.a->pot, c.a->thermo, std::abs(y - x));
    if (v == complexd(0.0)) return v;
  }
  return v;
}

// Sum over m >= 0 of the ordered integrals appending m particles beyond
// `lower`; equals the full series by the ordered-simplex reduction.
complexd z_tail(ZContext& c, std::vector<double>& prefix, double lower) {
  if (static_cast<int>(prefix.size()) >= c.n_max) return 1.0;
  complexd total = 1.0;
  std::vector<double> bps = c.static_bps;
  for (double x : prefix) append(bps, shifted_breakpoints(x, c.tbps));
  for (const auto& part : c.domain->parts()) {
    double lo = std::max(part.lo, lower), hi = part.hi;
    if (!(hi > lo)) continue;
    auto res = integrate<complexd>(
        [&](double y) -> complexd {
          complexd w = particle_weight(c, y, prefix);
          if (w == complexd(0.0)) return w;
          prefix.push_back(y);
          complexd t = z_tail(c, prefix, y);
          prefix.pop_back();
          return w * t;
        },
        lo, hi, bps, c.cfg->z_rel_tol, c.cfg->z_abs_tol, c.cfg->z_max_panels);
    total += res.value;
    c.err_acc += res.error;
  }
  return total;
}

std::vector<double> field_static_breakpoints(const ActivityField& a, const Region1D& domain,
                                             std::span<const double> extras,
                                             const std::vector<double>& tbps) {
  std::vector<double> bps = a.support.endpoints();
  append(bps, domain.endpoints());
  for (const auto& f : a.factors) {
    append(bps, shifted_breakpoints(f.center, tbps));
    if (std::isfinite(f.radius)) {
      bps.push_back(f.center - f.radius);
      bps.push_back(f.center + f.radius);
    }
  }
  for (double e : extras) append(bps, shifted_breakpoints(e, tbps));
  return bps;
}

bool prefix_in_support(const ActivityField& a, std::span<const double> path) {
  for (double x : path)
    if (!a.support.contains(x)) return false;
  return true;
}

double gamma_1d(std::span<const double> path, double w, const PairPotential& p,
                const ThermoState& t) {
  std::vector<Vec> pts(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) pts[i] = {path[i], 0.0, 0.0};
  return gamma_c_eval(pts, Vec{w, 0.0, 0.0}, p, t);
}

complexd tree_level(const ActivityField& a, const Region1D& domain, const BoundaryFn& tau, int k,
                    std::vector<double>& path, const OracleConfig& cfg, double r_ext,
                    const std::vector<double>& tbps, const std::vector<double>& static_bps) {
  int j = static_cast<int>(path.size());
  if (j == k + 1) return tau(path);
  double v = path.back();
  complexd lam_v = domain.contains(v) ? a.eval(v) : complexd(0.0);
  double g = prefix_in_support(a, path) ? gamma_1d(path, v, *a.pot, a.thermo) : 0.0;
  if (lam_v == complexd(0.0) || g == 0.0) return 0.0;  // finite exponent times zero

  std::vector<double> bps = static_bps;
  append(bps, shifted_breakpoints(v, tbps));
  for (int i = 0; i + 1 < j; ++i) {
    append(bps, shifted_breakpoints(path[i], tbps));
    double step = std::abs(path[i + 1] - path[i]);
    bps.push_back(path[i] - step);
    bps.push_back(path[i] + step);
  }
  auto res = integrate<complexd>(
      [&](double w) -> complexd {
        double m = mayer(*a.pot, a.thermo, std::abs(v - w));
        if (m == 0.0) return 0.0;
        path.push_back(w);
        complexd pi = tree_level(a, domain, tau, k, path, cfg, r_ext, tbps, static_bps);
        path.pop_back();
        return m * pi;
      },
      v - r_ext, v + r_ext, bps, cfg.outer_rel_tol, cfg.outer_abs_tol, cfg.outer_max_panels);
  return lam_v * g * std::exp(-res.value);
}

}  // namespace

double potential_energy(std::span<const double> points, const PairPotential& p,
                        const ThermoState& t) {
  double u = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double phi = p.evaluate(std::abs(points[i] - points[j]));
      if (std::isinf(phi)) return kInfiniteEnergy;
      u += t.beta * phi;
    }
  return u;
}

ZResult partition_function(const ActivityField& a, const Region1D& domain, const OracleConfig& cfg,
                           std::span<const double> extra_centers) {
  if (!a.pot) throw std::invalid_argument("partition_function: null potential");
  if (a.pot->dimension != 1)
    throw std::invalid_argument("partition_function: oracle supports dimension 1 only");
  ZResult out;
  out.n_max = particle_cap(domain, a.pot->core_radius);
  if (out.n_max > cfg.n_cap)
    throw std::invalid_argument("partition_function: domain admits " + std::to_string(out.n_max) +
                                " particles, cap is " + std::to_string(cfg.n_cap) +
                                " - shrink the domain");
  ZContext ctx;
  ctx.a = &a;
  ctx.domain = &domain;
  ctx.extras = extra_centers;
  ctx.cfg = &cfg;
  ctx.n_max = out.n_max;
  ctx.tbps = a.pot->tail_breakpoints();
  ctx.static_bps = field_static_breakpoints(a, domain, extra_centers, ctx.tbps);
  std::vector<double> prefix;
  out.value = z_tail(ctx, prefix, -Region1D::kInf);
  out.error = ctx.err_acc;
  return out;
}

std::vector<double> partition_polynomial(const PairPotential& p, const ThermoState& t,
                                         const Region1D& domain, const OracleConfig& cfg) {
  ActivityField unit = constant_activity(p, t, 1.0);
  int n_max = particle_cap(domain, p.core_radius);
  if (n_max > cfg.n_cap)
    throw std::invalid_argument("partition_polynomial: domain admits too many particles");
  std::vector<double> tbps = p.tail_breakpoints();
  std::vector<double> static_bps = field_static_breakpoints(unit, domain, {}, tbps);

  // ordered integral with exactly `remaining` more particles beyond `lower`
  std::function<double(std::vector<double>&, double, int)> level =
      [&](std::vector<double>& prefix, double lower, int remaining) -> double {
    if (remaining == 0) return 1.0;
    std::vector<double> bps = static_bps;
    for (double x : prefix) append(bps, shifted_breakpoints(x, tbps));
    double total = 0.0;
    for (const auto& part : domain.parts()) {
      double lo = std::max(part.lo, lower), hi = part.hi;
      if (!(hi > lo)) continue;
      auto res = integrate_real(
          [&](double y) -> double {
            double w = 1.0;
            for (double x : prefix) w *= boltzmann(p, t, std::abs(y - x));
            if (w == 0.0) return 0.0;
            prefix.push_back(y);
            double tail = level(prefix, y, remaining - 1);
            prefix.pop_back();
            return w * tail;
          },
          lo, hi, bps, cfg.z_rel_tol, cfg.z_abs_tol, cfg.z_max_panels);
      total += res.value;
    }
    return total;
  };

  std::vector<double> coeffs{1.0};
  std::vector<double> prefix;
  for (int n = 1; n <= n_max; ++n) coeffs.push_back(level(prefix, -Region1D::kInf, n));
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  return coeffs;
}

complexd one_point_density(const ActivityField& a, const Region1D& domain, double v,
                           const OracleConfig& cfg) {
  complexd lam_v = domain.contains(v) ? a.eval(v) : complexd(0.0);
  if (lam_v == complexd(0.0)) return 0.0;
  ZResult denom = partition_function(a, domain, cfg);
  if (std::abs(denom.value) <= cfg.zero_guard)
    throw std::runtime_error("one_point_density: zero-freeness violation, |Z| = " +
                             std::to_string(std::abs(denom.value)));
  double centers[1] = {v};
  ZResult numer = partition_function(a, domain, cfg, centers);
  return lam_v * numer.value / denom.value;
}

IdentityCheck check_log_z_identity(const ActivityField& a, const Region1D& domain,
                                   const OracleConfig& cfg) {
  double r_ext = a.pot->tail_extent(a.thermo.beta, cfg.tail_eps);
  double s_max = 0.0;
  for (double e : domain.endpoints()) s_max = std::max(s_max, std::abs(e));
  s_max += r_ext;
  // zero-freeness along the interpolation family (cut off outside B_s(0))
  for (int i = 0; i <= 8; ++i) {
    double s = s_max * i / 8.0;
    ActivityField cut = modulate(a, 1.0, {}, Region1D::ball_complement(0.0, s));
    ZResult z = partition_function(cut, domain, cfg);
    if (std::abs(z.value) <= cfg.zero_guard)
      throw std::runtime_error("check_log_z_identity: zero-freeness violation at s = " +
                               std::to_string(s));
  }
  IdentityCheck out;
  out.lhs = std::log(partition_function(a, domain, cfg).value);

  std::vector<double> bps = domain.endpoints();
  bps.push_back(0.0);
  for (double e : domain.endpoints()) {
    for (double s : {std::abs(e) - a.pot->core_radius, std::abs(e) + a.pot->core_radius}) {
      bps.push_back(s);
      bps.push_back(-s);
    }
  }
  bps.push_back(a.pot->core_radius);
  bps.push_back(-a.pot->core_radius);
  complexd integral = 0.0;
  for (const auto& part : domain.parts()) {
    auto res = integrate<complexd>(
        [&](double x) -> complexd {
          ActivityField cut = modulate(a, 1.0, {}, Region1D::ball_complement(0.0, std::abs(x)));
          return one_point_density(cut, domain, x, cfg);
        },
        part.lo, part.hi, bps, cfg.outer_rel_tol, cfg.outer_abs_tol, cfg.outer_max_panels);
    integral += res.value;
  }
  out.rhs = integral;
  out.residual = std::abs(out.lhs - out.rhs);
  out.scale = std::abs(out.lhs);
  return out;
}

IdentityCheck check_recursion_identity(const ActivityField& a, const Region1D& domain, double v,
                                       const OracleConfig& cfg) {
  IdentityCheck out;
  out.lhs = one_point_density(a, domain, v, cfg);
  complexd lam_v = domain.contains(v) ? a.eval(v) : complexd(0.0);
  if (lam_v == complexd(0.0)) {
    out.rhs = 0.0;
    out.residual = std::abs(out.lhs);
    return out;
  }
  double r_ext = a.pot->tail_extent(a.thermo.beta, cfg.tail_eps);
  std::vector<double> bps = shifted_breakpoints(v, a.pot->tail_breakpoints());
  append(bps, domain.endpoints());
  complexd integral = 0.0;
  for (const auto& part : domain.parts()) {
    double lo = std::max(part.lo, v - r_ext), hi = std::min(part.hi, v + r_ext);
    if (!(hi > lo)) continue;
    auto res = integrate<complexd>(
        [&](double w) -> complexd {
          double m = mayer(*a.pot, a.thermo, std::abs(v - w));
          if (m == 0.0) return 0.0;
          ActivityField stepped = modulate_step(a, v, w);
          return m * one_point_density(stepped, domain, w, cfg);
        },
        lo, hi, bps, cfg.outer_rel_tol, cfg.outer_abs_tol, cfg.outer_max_panels);
    integral += res.value;
  }
  out.rhs = lam_v * std::exp(-integral);
  out.residual = std::abs(out.lhs - out.rhs);
  out.scale = std::abs(out.lhs);
  return out;
}

complexd tree_recursion_eval(const ActivityField& a, const Region1D& domain, const BoundaryFn& tau,
                             int k, double v0, const OracleConfig& cfg) {
  if (k < 1 || k > 2) throw std::invalid_argument("tree_recursion_eval: depth must be 1 or 2");
  if (a.pot->dimension != 1)
    throw std::invalid_argument("tree_recursion_eval: dimension 1 only");
  double r_ext = a.pot->tail_extent(a.thermo.beta, cfg.tail_eps);
  std::vector<double> tbps = a.pot->tail_breakpoints();
  std::vector<double> static_bps = field_static_breakpoints(a, domain, {}, tbps);
  std::vector<double> path{v0};
  return tree_level(a, domain, tau, k, path, cfg, r_ext, tbps, static_bps);
}

IdentityCheck check_density_correspondence(const ActivityField& a, const Region1D& domain, int k,
                                           double v0, const OracleConfig& cfg) {
  BoundaryFn tau = [&](std::span<const double> path) -> complexd {
    std::vector<Vec> pts(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) pts[i] = {path[i], 0.0, 0.0};
    auto cls = classify_sequence(pts, a.pot->core_radius, 1);
    if (!cls.good) return 0.0;
    ActivityField chain = a;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      chain = modulate_step(chain, path[i], path[i + 1]);
    return one_point_density(chain, domain, path.back(), cfg);
  };
  IdentityCheck out;
  out.lhs = tree_recursion_eval(a, domain, tau, k, v0, cfg);
  out.rhs = one_point_density(a, domain, v0, cfg);
  out.residual = std::abs(out.lhs - out.rhs);
  out.scale = std::abs(out.rhs);
  return out;
}

bool check_modulation_bound(const ActivityField& a, int n_samples, std::uint64_t seed) {
  double r_ext = a.pot->tail_extent(a.thermo.beta, 1e-12);
  double lo = -4.0 * r_ext, hi = 4.0 * r_ext;
  auto ends = a.support.endpoints();
  if (!ends.empty()) {
    lo = *std::min_element(ends.begin(), ends.end()) - 2.0 * r_ext;
    hi = *std::max_element(ends.begin(), ends.end()) + 2.0 * r_ext;
  }
  double bound = std::exp(a.thermo.beta * a.pot->local_stability_unit) * a.base_sup + 1e-12;
  CounterRng rng(seed, 0);
  for (int s = 0; s < n_samples; ++s) {
    int j = 1 + static_cast<int>(rng.next_u64() % 3);
    std::vector<double> prefix(j);
    for (double& x : prefix) x = rng.uniform(lo, hi);
    double w = rng.uniform(lo, hi);
    double g = prefix_in_support(a, prefix) ? gamma_1d(prefix, w, *a.pot, a.thermo) : 0.0;
    if (g * std::abs(a.eval(w)) > bound) return false;
  }
  return true;
}

ContractionCheckResult check_contraction_bound(const ActivityField& a, const Region1D& domain,
                                               int k, double v0, double z_tilde_sq,
                                               double lambda_tilde, double m_value, double vk_value,
                                               int trials, std::uint64_t seed,
                                               const OracleConfig& cfg) {
  ContractionCheckResult out;
  out.trials = trials;
  double r_ext = a.pot->tail_extent(a.thermo.beta, cfg.tail_eps);
  double span = k * r_ext + 1.0;
  const int n_cells = 16;
  double cell = 2.0 * span / n_cells;
  for (int trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, static_cast<std::uint64_t>(trial));
    std::vector<double> v1(n_cells), v2(n_cells);
    for (int i = 0; i < n_cells; ++i) v1[i] = rng.uniform(0.0, z_tilde_sq);
    for (int i = 0; i < n_cells; ++i) v2[i] = rng.uniform(0.0, z_tilde_sq);
    auto make_tau = [&](const std::vector<double>& vals) {
      return BoundaryFn([&, vals](std::span<const double> path) -> complexd {
        double x = path.back();
        int c = static_cast<int>(std::floor((x - (v0 - span)) / cell));
        if (c < 0 || c >= n_cells) return 0.0;
        return vals[c];
      });
    };
    double sup_diff = 0.0;
    for (int i = 0; i < n_cells; ++i) sup_diff = std::max(sup_diff, std::abs(v1[i] - v2[i]));
    complexd p1 = tree_recursion_eval(a, domain, make_tau(v1), k, v0, cfg);
    complexd p2 = tree_recursion_eval(a, domain, make_tau(v2), k, v0, cfg);
    double s1 = std::sqrt(std::max(0.0, p1.real()));
    double s2 = std::sqrt(std::max(0.0, p2.real()));
    double lhs = (s1 - s2) * (s1 - s2);
    double rhs = std::pow(lambda_tilde * m_value, k) * vk_value * sup_diff + 1e-9;
    if (lhs > rhs) {
      out.ok = false;
      out.worst_violation = std::max(out.worst_violation, lhs - rhs);
    } else {
      out.worst_violation = std::max(out.worst_violation, lhs - rhs);
    }
  }
  return out;
}

ZeroFreeReport zero_free_scan(const PairPotential& p, const ThermoState& t, const Region1D& domain,
                              double lambda_star, int n_theta, int n_r, const OracleConfig& cfg) {
  std::vector<double> poly = partition_polynomial(p, t, domain, cfg);
  ZeroFreeReport out;
  out.min_abs_z = Region1D::kInf;
  double vol = domain.measure();
  for (int i = 0; i < n_r; ++i) {
    double r = lambda_star * (i + 0.5) / n_r;
    for (int j = 0; j < n_theta; ++j) {
      double th = 2.0 * M_PI * j / n_theta;
      complexd lam = std::polar(r, th);
      complexd z = poly.back();
      for (int m = static_cast<int>(poly.size()) - 2; m >= 0; --m) z = z * lam + poly[m];
      double az = std::abs(z);
      if (az < out.min_abs_z) out.min_abs_z = az;
      if (az <= 1e-8) {
        if (!out.zero_found) out.zero_location = lam;
        out.zero_found = true;
        continue;
      }
      if (vol > 0.0) out.max_log_ratio = std::max(out.max_log_ratio, std::abs(std::log(z)) / vol);
    }
  }
  return out;
}

double tonks_reference(double core_radius, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("tonks_reference: lambda must be nonnegative");
  if (lambda == 0.0) return 0.0;
  return lambert_w0(lambda * core_radius) / core_radius;
}

}  // namespace gasbound

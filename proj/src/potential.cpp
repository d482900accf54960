#include "gasbound/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gasbound {

double PairPotential::evaluate(double r) const {
  if (r < 0) throw std::invalid_argument("evaluate: r < 0");
  if (r < core_radius) return kInfiniteEnergy;
  switch (tail) {
    case TailKind::Zero:
      return 0.0;
    case TailKind::SquareWell:
      return r < well_range ? -well_depth : 0.0;
    case TailKind::KacExponential:
      return -0.5 * kac_alpha * kac_gamma * std::exp(-kac_gamma * r);
    case TailKind::Tabulated: {
      if (table_r.empty() || r >= table_r.back()) return 0.0;
      if (r <= table_r.front()) return table_phi.front();
      auto it = std::upper_bound(table_r.begin(), table_r.end(), r);
      size_t i = static_cast<size_t>(it - table_r.begin());
      double r0 = table_r[i - 1], r1 = table_r[i];
      double s = (r - r0) / (r1 - r0);
      return table_phi[i - 1] * (1.0 - s) + table_phi[i] * s;
    }
  }
  return 0.0;
}

bool PairPotential::purely_repulsive() const {
  switch (tail) {
    case TailKind::Zero:
      return true;
    case TailKind::SquareWell:
      return well_depth <= 0.0;
    case TailKind::KacExponential:
      return kac_alpha * kac_gamma <= 0.0;
    case TailKind::Tabulated:
      return std::all_of(table_phi.begin(), table_phi.end(), [](double v) { return v >= 0.0; });
  }
  return true;
}

std::vector<double> PairPotential::tail_breakpoints() const {
  std::vector<double> b{core_radius};
  if (tail == TailKind::SquareWell) b.push_back(well_range);
  if (tail == TailKind::Tabulated)
    for (double r : table_r)
      if (r > core_radius) b.push_back(r);
  std::sort(b.begin(), b.end());
  return b;
}

double PairPotential::tail_extent(double beta, double eps_rel) const {
  switch (tail) {
    case TailKind::Zero:
      return core_radius;
    case TailKind::SquareWell:
      return well_range;
    case TailKind::Tabulated:
      return table_r.empty() ? core_radius : std::max(core_radius, table_r.back());
    case TailKind::KacExponential: {
      // |mayer| ~ beta|phi| in the far tail; integrated tail beyond r_max is
      // about (beta*alpha/2) * e^{-gamma r_max} in 1D.  Solve against the
      // hard-core contribution, with generous slack.
      double core = 2.0 * core_radius;
      double budget = eps_rel * core;
      double amp = 0.5 * beta * std::abs(kac_alpha) + 1.0;
      double r = std::log(amp / budget) / kac_gamma + core_radius;
      return std::max(r, core_radius * 2.0);
    }
  }
  return core_radius;
}

double boltzmann(const PairPotential& p, const ThermoState& t, double r) {
  if (r < p.core_radius) return 0.0;
  return std::exp(-t.beta * p.evaluate(r));
}

double mayer(const PairPotential& p, const ThermoState& t, double r) {
  return 1.0 - boltzmann(p, t, r);
}

double mayer_abs(const PairPotential& p, const ThermoState& t, double r) {
  return std::abs(mayer(p, t, r));
}

PairPotential hard_sphere(int dimension, double core_radius) {
  if (dimension < 1 || core_radius <= 0) throw std::invalid_argument("hard_sphere: bad parameters");
  PairPotential p;
  p.dimension = dimension;
  p.core_radius = core_radius;
  p.tail = TailKind::Zero;
  p.local_stability_unit = 0.0;
  p.label = "hard_sphere";
  return p;
}

PairPotential square_well(int dimension, double core_radius, double range, double depth) {
  if (dimension < 1 || core_radius <= 0) throw std::invalid_argument("square_well: bad parameters");
  if (range <= core_radius) throw std::invalid_argument("square_well: range must exceed core_radius");
  PairPotential p;
  p.dimension = dimension;
  p.core_radius = core_radius;
  p.tail = TailKind::SquareWell;
  p.well_range = range;
  p.well_depth = depth;
  // In 1D with hard-core spacing, at most ceil((L-R)/R) particles fit within
  // well range on each side of a given point.
  if (depth > 0) {
    double layers = std::ceil((range - core_radius) / core_radius);
    p.local_stability_unit = 2.0 * depth * layers;
  }
  p.label = "square_well";
  return p;
}

PairPotential kac_exponential(double core_radius, double alpha, double gamma) {
  if (core_radius <= 0 || gamma <= 0) throw std::invalid_argument("kac_exponential: bad parameters");
  PairPotential p;
  p.dimension = 1;
  p.core_radius = core_radius;
  p.tail = TailKind::KacExponential;
  p.kac_alpha = alpha;
  p.kac_gamma = gamma;
  // Neighbors on a hard-core-admissible line are spaced >= R, so the worst
  // attraction seen by one point is a two-sided geometric series.
  if (alpha > 0) {
    double q = std::exp(-gamma * core_radius);
    p.local_stability_unit = alpha * gamma * q / (1.0 - q);
  }
  p.label = "kac_exponential";
  return p;
}

PairPotential tabulated_potential(double core_radius, std::vector<double> r,
                                  std::vector<double> phi, double local_stability_unit) {
  if (core_radius <= 0) throw std::invalid_argument("tabulated: core_radius <= 0");
  if (r.size() != phi.size() || r.empty()) throw std::invalid_argument("tabulated: bad table");
  if (!std::is_sorted(r.begin(), r.end())) throw std::invalid_argument("tabulated: r not sorted");
  for (double v : phi)
    if (!std::isfinite(v)) throw std::invalid_argument("tabulated: non-finite phi");
  PairPotential p;
  p.dimension = 1;
  p.core_radius = core_radius;
  p.tail = TailKind::Tabulated;
  p.table_r = std::move(r);
  p.table_phi = std::move(phi);
  p.local_stability_unit = local_stability_unit;
  p.label = "tabulated";
  return p;
}

PairPotential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open potential config: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r\"");
      size_t b = s.find_last_not_of(" \t\r\"");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto get = [&](const std::string& key, double dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : std::stod(it->second);
  };
  auto it = kv.find("kind");
  if (it == kv.end()) throw std::runtime_error("potential config missing 'kind'");
  const std::string& kind = it->second;
  int d = static_cast<int>(get("dimension", 1));
  double R = get("core_radius", 1.0);
  PairPotential p;
  if (kind == "hard_sphere" || kind == "hard_rod") {
    p = hard_sphere(d, R);
  } else if (kind == "square_well") {
    p = square_well(d, R, get("well_range", 1.5), get("well_depth", 0.0));
  } else if (kind == "kac_exponential") {
    p = kac_exponential(R, get("kac_alpha", 1.0), get("kac_gamma", 1.0));
  } else if (kind == "tabulated") {
    auto tf = kv.find("table_file");
    if (tf == kv.end()) throw std::runtime_error("tabulated potential requires table_file");
    std::ifstream tin(tf->second);
    if (!tin) throw std::runtime_error("cannot open table_file: " + tf->second);
    std::vector<double> rs, phis;
    double rv, pv;
    while (tin >> rv >> pv) {
      rs.push_back(rv);
      phis.push_back(pv);
    }
    auto c0 = kv.find("local_stability_unit");
    if (c0 == kv.end()) throw std::runtime_error("tabulated potential requires local_stability_unit");
    p = tabulated_potential(R, std::move(rs), std::move(phis), std::stod(c0->second));
  } else {
    throw std::runtime_error("unknown potential kind: " + kind);
  }
  auto lb = kv.find("label");
  if (lb != kv.end()) p.label = lb->second;
  return p;
}

}  // namespace gasbound

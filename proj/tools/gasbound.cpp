#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gasbound/connective.hpp"
#include "gasbound/constants.hpp"
#include "gasbound/oracle.hpp"
#include "gasbound/potential.hpp"
#include "gasbound/rng.hpp"
#include "gasbound/threshold.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace gasbound;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const std::vector<std::string>& args) {
  std::string canon;
  for (const auto& a : args) {
    canon += a;
    canon += '\x1f';
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(canon)));
  return buf;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
  }
}

json constants_json(const TemperednessConstants& c) {
  return {{"c_phi", c.c_phi},     {"a_phi", c.a_phi}, {"p_phi", c.p_phi},
          {"c_hat_phi", c.c_hat_phi}, {"beta", c.beta},   {"error", c.quad_error}};
}

json report_json(const ThresholdReport& r) {
  return {{"lambda_tilde", r.optimizer.lambda_tilde},
          {"z_tilde_sq", r.optimizer.z_tilde_sq},
          {"w_value", r.optimizer.w_value},
          {"branch", r.optimizer.branch == OptimizerBranch::Repulsive ? "repulsive" : "attractive"},
          {"delta", r.delta_used},
          {"beta_c", r.beta_c},
          {"new", r.new_threshold},
          {"pr", r.penrose_ruelle},
          {"py", r.procacci_yuhjtman},
          {"ratio_pr", r.ratio_pr},
          {"ratio_py", r.ratio_py}};
}

json vk_json(const VkEstimate& e) {
  return {{"k", e.k},
          {"mean", e.mean},
          {"std_error", e.std_error},
          {"samples", e.n_samples},
          {"seed", e.seed},
          {"convention", e.convention == Convention::Trailing ? "trailing" : "leading"}};
}

Convention parse_convention(const std::string& s) {
  if (s == "trailing") return Convention::Trailing;
  if (s == "leading") return Convention::Leading;
  throw CLI::ValidationError("--convention must be trailing or leading");
}

double resolve_delta(const std::string& spec, const TemperednessConstants& c) {
  if (spec == "auto") return c.c_phi;
  return std::stod(spec);
}

struct VerifyResult {
  json rows = json::array();
  bool all_pass = true;
  void add(const std::string& check, double residual, double tolerance) {
    bool pass = residual <= tolerance;
    all_pass = all_pass && pass;
    rows.push_back({{"check", check}, {"residual", residual}, {"tolerance", tolerance}, {"pass", pass}});
  }
};

int run_verify(const PairPotential& pot, double beta, std::complex<double> lambda, double volume,
               const std::string& checks_csv, std::uint64_t seed, json& out) {
  ThermoState t{beta};
  Region1D domain = Region1D::interval(0.0, volume);
  ActivityField field = constant_activity(pot, t, lambda);
  OracleConfig cfg;
  auto wants = [&](const std::string& name) {
    return checks_csv.find(name) != std::string::npos;
  };
  VerifyResult vr;

  if (wants("logz")) {
    auto r = check_log_z_identity(field, domain, cfg);
    vr.add("logz", r.residual, 1e-6 * std::max(r.scale, 1e-3));
  }
  if (wants("recursion")) {
    auto r = check_recursion_identity(field, domain, volume / 2.0, cfg);
    vr.add("recursion", r.residual, 1e-6 * std::max(r.scale, 1e-2));
  }
  if (wants("correspondence")) {
    auto r = check_density_correspondence(field, domain, 1, volume / 2.0, cfg);
    vr.add("correspondence", r.residual, 1e-5 * std::max(r.scale, 1e-2));
  }

  TemperednessConstants consts = temperedness_constants(pot, t);
  OptimizerSolution opt = solve_optimizer(consts, consts.c_phi);
  double lam_real = (lambda.imag() == 0.0 && lambda.real() > 0.0)
                        ? std::min(lambda.real(), opt.lambda_tilde)
                        : opt.lambda_tilde;
  ActivityField real_field = constant_activity(pot, t, lam_real);

  if (wants("selfmap")) {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      CounterRng rng(seed, static_cast<std::uint64_t>(trial));
      double c0 = rng.uniform(0.0, opt.z_tilde_sq);
      BoundaryFn tau = [&](std::span<const double>) { return complexd(c0); };
      complexd pi = tree_recursion_eval(real_field, domain, tau, 1, volume / 2.0, cfg);
      worst = std::max(worst, std::max(pi.real() - opt.z_tilde_sq, -pi.real()));
      worst = std::max(worst, std::abs(pi.imag()));
    }
    vr.add("selfmap", worst, 1e-10);
  }
  if (wants("contraction")) {
    double v1 = vk_quadrature_1d(pot, t, 1, Convention::Trailing);
    auto r = check_contraction_bound(real_field, domain, 1, volume / 2.0, opt.z_tilde_sq,
                                     opt.lambda_tilde, m_max(consts, opt.z_tilde_sq), v1, 20, seed,
                                     cfg);
    vr.add("contraction", std::max(0.0, r.worst_violation), 0.0);
  }
  if (wants("zerofree")) {
    double beta_c = beta * pot.local_stability_unit;
    ThresholdReport rep = analyticity_threshold(consts, consts.c_phi, beta_c);
    auto scan = zero_free_scan(pot, t, domain, rep.new_threshold, 64, 16, cfg);
    vr.add("zerofree", scan.zero_found ? 1.0 : 0.0, 0.0);
  }

  out = vr.rows;
  return vr.all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analyticity threshold toolkit for locally stable hard-core gases"};
  app.require_subcommand(1);

  std::string pot_path, out_path, delta_spec = "auto", convention = "trailing";
  std::string checks = "logz,recursion,correspondence,selfmap,contraction,zerofree";
  double beta = 1.0, samples = 1e6, lambda_re = 0.1, lambda_im = 0.0, volume = 1.5;
  double beta_min = 0.5, beta_max = 2.0;
  int k = 2, kmax = 3, steps = 10;
  std::uint64_t seed = 42;

  auto add_common = [&](CLI::App* sub, bool needs_potential = true) {
    if (needs_potential) sub->add_option("--potential", pot_path, "potential config file")->required();
    sub->add_option("--output", out_path, "output path (default: stdout)");
  };

  auto* c_cmd = app.add_subcommand("constants", "temperedness constants at a given beta");
  add_common(c_cmd);
  c_cmd->add_option("--beta", beta, "inverse temperature");

  auto* t_cmd = app.add_subcommand("threshold", "analyticity threshold report");
  add_common(t_cmd);
  t_cmd->add_option("--beta", beta, "inverse temperature");
  t_cmd->add_option("--delta", delta_spec, "connective-constant value or 'auto' (= c_phi)");

  auto* v_cmd = app.add_subcommand("vk", "Monte-Carlo estimate of V_k");
  add_common(v_cmd);
  v_cmd->add_option("--beta", beta, "inverse temperature");
  v_cmd->add_option("--k", k, "walk length");
  v_cmd->add_option("--samples", samples, "sample count");
  v_cmd->add_option("--seed", seed, "RNG seed");
  v_cmd->add_option("--convention", convention, "trailing | leading");

  auto* d_cmd = app.add_subcommand("delta", "connective-constant upper estimate from V_1..V_kmax");
  add_common(d_cmd);
  d_cmd->add_option("--beta", beta, "inverse temperature");
  d_cmd->add_option("--kmax", kmax, "largest walk length");
  d_cmd->add_option("--samples", samples, "sample count per k");
  d_cmd->add_option("--seed", seed, "RNG seed");
  d_cmd->add_option("--convention", convention, "trailing | leading");

  auto* ver_cmd = app.add_subcommand("verify", "identity checks against the 1D oracle");
  add_common(ver_cmd);
  ver_cmd->add_option("--beta", beta, "inverse temperature");
  ver_cmd->add_option("--lambda", lambda_re, "activity (real part)");
  ver_cmd->add_option("--lambda-imag", lambda_im, "activity (imaginary part)");
  ver_cmd->add_option("--volume", volume, "length of the interval [0, volume]");
  ver_cmd->add_option("--checks", checks, "comma list of checks to run");
  ver_cmd->add_option("--seed", seed, "RNG seed");

  auto* s_cmd = app.add_subcommand("sweep", "threshold CSV over a beta grid");
  add_common(s_cmd);
  s_cmd->add_option("--beta-min", beta_min, "grid start");
  s_cmd->add_option("--beta-max", beta_max, "grid end");
  s_cmd->add_option("--steps", steps, "number of grid points");
  s_cmd->add_option("--delta", delta_spec, "connective-constant value or 'auto' (= c_phi)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  std::string hash = config_hash(args);

  try {
    if (c_cmd->parsed()) {
      PairPotential pot = load_potential(pot_path);
      auto c = temperedness_constants(pot, ThermoState{beta});
      json j = constants_json(c);
      j["config_hash"] = hash;
      j["version"] = kVersion;
      emit(j, out_path);
      return 0;
    }
    if (t_cmd->parsed()) {
      PairPotential pot = load_potential(pot_path);
      auto c = temperedness_constants(pot, ThermoState{beta});
      double delta = resolve_delta(delta_spec, c);
      auto rep = analyticity_threshold(c, delta, beta * pot.local_stability_unit);
      json j = report_json(rep);
      j["constants"] = constants_json(c);
      j["config_hash"] = hash;
      j["version"] = kVersion;
      emit(j, out_path);
      return 0;
    }
    if (v_cmd->parsed()) {
      PairPotential pot = load_potential(pot_path);
      auto est = vk_monte_carlo(pot, ThermoState{beta}, k, static_cast<long long>(samples), seed,
                                parse_convention(convention));
      json j = vk_json(est);
      j["config_hash"] = hash;
      j["version"] = kVersion;
      emit(j, out_path);
      return 0;
    }
    if (d_cmd->parsed()) {
      PairPotential pot = load_potential(pot_path);
      ThermoState t{beta};
      auto c = temperedness_constants(pot, t);
      std::vector<VkEstimate> ests;
      for (int kk = 1; kk <= kmax; ++kk)
        ests.push_back(vk_monte_carlo(pot, t, kk, static_cast<long long>(samples), seed,
                                      parse_convention(convention)));
      auto d = delta_phi_upper(ests, c.a_phi);
      json j = {{"delta_hat", d.delta_hat},
                {"witnessing_k", d.witnessing_k},
                {"std_error", d.std_error},
                {"fallback_k1", d.fallback_k1},
                {"c_phi", c.c_phi},
                {"a_phi", c.a_phi}};
      j["vk"] = json::array();
      for (const auto& e : ests) j["vk"].push_back(vk_json(e));
      j["admissible"] = d.admissible;
      j["config_hash"] = hash;
      j["version"] = kVersion;
      emit(j, out_path);
      return 0;
    }
    if (ver_cmd->parsed()) {
      PairPotential pot = load_potential(pot_path);
      json rows;
      int rc = run_verify(pot, beta, {lambda_re, lambda_im}, volume, checks, seed, rows);
      json j = {{"checks", rows}, {"config_hash", hash}, {"version", kVersion}};
      emit(j, out_path);
      return rc;
    }
    if (s_cmd->parsed()) {
      PairPotential pot = load_potential(pot_path);
      std::vector<double> grid;
      for (int i = 0; i < steps; ++i)
        grid.push_back(steps == 1 ? beta_min
                                  : beta_min + (beta_max - beta_min) * i / (steps - 1));
      double policy = delta_spec == "auto" ? -1.0 : std::stod(delta_spec);
      auto rows = sweep(pot, policy, grid);
      std::string csv = "beta,c_phi,a_phi,delta,lambda_tilde,z_tilde_sq,new,pr,py,ratio_pr,ratio_py\n";
      char line[512];
      for (const auto& r : rows) {
        if (!r.ok) {
          std::cerr << "sweep: beta = " << r.beta << " failed: " << r.error << "\n";
          continue;
        }
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.beta, r.constants.c_phi, r.constants.a_phi, r.report.delta_used,
                      r.report.optimizer.lambda_tilde, r.report.optimizer.z_tilde_sq,
                      r.report.new_threshold, r.report.penrose_ruelle,
                      r.report.procacci_yuhjtman, r.report.ratio_pr, r.report.ratio_py);
        csv += line;
      }
      emit_text(csv, out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "gasbound/oracle.hpp"
#include "gasbound/threshold.hpp"

using namespace gasbound;

namespace {
const ThermoState kBeta1{1.0};

OracleConfig coarse_config() {
  OracleConfig cfg;
  cfg.z_rel_tol = 1e-7;
  cfg.z_abs_tol = 1e-10;
  cfg.z_max_panels = 200;
  cfg.outer_rel_tol = 1e-5;
  cfg.outer_abs_tol = 1e-7;
  cfg.outer_max_panels = 60;
  return cfg;
}
}  // namespace

TEST_CASE("configuration energies") {
  PairPotential rod = hard_sphere(1, 1.0);
  PairPotential sq = square_well(1, 1.0, 1.5, std::log(2.0));
  CHECK(potential_energy({}, rod, kBeta1) == 0.0);
  std::vector<double> one = {0.3};
  CHECK(potential_energy(one, rod, kBeta1) == 0.0);
  std::vector<double> overlap = {0.0, 0.5};
  CHECK(std::isinf(potential_energy(overlap, rod, kBeta1)));
  std::vector<double> well = {0.0, 1.2};
  CHECK(potential_energy(well, sq, kBeta1) == doctest::Approx(-std::log(2.0)));
  std::vector<double> apart = {0.0, 2.0};
  CHECK(potential_energy(apart, sq, kBeta1) == 0.0);
}

TEST_CASE("hard rod partition function is the exact quadratic") {
  PairPotential rod = hard_sphere(1, 1.0);
  Region1D box = Region1D::interval(0.0, 1.5);
  for (double lam : {0.2, 1.0, 3.0}) {
    auto z = partition_function(constant_activity(rod, kBeta1, lam), box);
    double exact = 1.0 + 1.5 * lam + 0.125 * lam * lam;
    CHECK(z.value.real() == doctest::Approx(exact).epsilon(1e-9));
    CHECK(std::abs(z.value.imag()) < 1e-12);
    CHECK(z.n_max == 2);
  }
  // zero activity: only the empty configuration contributes
  ActivityField off = constant_activity(rod, kBeta1, 0.4);
  off.alpha = 0.0;
  CHECK(partition_function(off, box).value.real() == doctest::Approx(1.0));
  // complex activity matches the polynomial too
  complexd lam(0.1, 0.05);
  auto zc = partition_function(constant_activity(rod, kBeta1, lam), box);
  complexd exact = 1.0 + 1.5 * lam + 0.125 * lam * lam;
  CHECK(std::abs(zc.value - exact) < 1e-9);
}

TEST_CASE("partition polynomial coefficients") {
  PairPotential rod = hard_sphere(1, 1.0);
  auto c = partition_polynomial(rod, kBeta1, Region1D::interval(0.0, 1.5));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(c[2] == doctest::Approx(0.125).epsilon(1e-8));
}

TEST_CASE("real partition function is monotone in lambda and at least one") {
  PairPotential sq = square_well(1, 1.0, 1.5, std::log(2.0));
  Region1D box = Region1D::interval(0.0, 2.0);
  double prev = 1.0 - 1e-12;
  for (double lam : {0.0, 0.1, 0.3, 0.7, 1.5}) {
    auto z = partition_function(constant_activity(sq, kBeta1, lam), box);
    CHECK(z.value.real() >= prev);
    prev = z.value.real();
  }
}

TEST_CASE("refinement keeps the reported error honest") {
  PairPotential sq = square_well(1, 1.0, 1.5, std::log(2.0));
  Region1D box = Region1D::interval(0.0, 2.5);
  ActivityField a = constant_activity(sq, kBeta1, 0.4);
  OracleConfig loose;
  loose.z_rel_tol = 1e-5;
  loose.z_abs_tol = 1e-8;
  auto rough = partition_function(a, box, loose);
  auto fine = partition_function(a, box);
  CHECK(std::abs(rough.value - fine.value) <= 10.0 * (rough.error + fine.error) + 1e-12);
  CHECK(fine.error < rough.error + 1e-15);
}

TEST_CASE("domains beyond the particle cap are rejected") {
  PairPotential rod = hard_sphere(1, 1.0);
  ActivityField a = constant_activity(rod, kBeta1, 0.1);
  CHECK_THROWS(partition_function(a, Region1D::interval(0.0, 10.0)));
}

TEST_CASE("one point density closed form") {
  PairPotential rod = hard_sphere(1, 1.0);
  Region1D box = Region1D::interval(0.0, 1.5);
  // a particle at the center blocks the whole box, so rho = lambda / Z
  auto rho = one_point_density(constant_activity(rod, kBeta1, 0.2), box, 0.75);
  CHECK(rho.real() == doctest::Approx(0.2 / 1.305).epsilon(1e-9));

  // generic bound rho <= lambda e^{beta C}
  PairPotential sq = square_well(1, 1.0, 1.5, std::log(2.0));
  double cap = 0.3 * std::exp(2.0 * std::log(2.0));
  for (double v : {0.1, 0.75, 1.4}) {
    auto r = one_point_density(constant_activity(sq, kBeta1, 0.3), box, v);
    CHECK(r.real() > 0.0);
    CHECK(r.real() <= cap + 1e-9);
  }
}

TEST_CASE("modulation algebra") {
  PairPotential rod = hard_sphere(1, 1.0);
  ActivityField a = constant_activity(rod, kBeta1, 0.3);
  // identity modulation changes nothing
  ActivityField same = modulate(a, 1.0, {}, Region1D::all());
  for (double y : {-1.0, 0.2, 3.7}) CHECK(same.eval(y) == a.eval(y));

  // a legal step survives the invariant check and caps |lambda^m|
  ActivityField stepped = modulate_step(a, 0.0, 1.4);
  CHECK(stepped.eval(0.5) == complexd(0.0));  // inside the removed core ball
  CHECK(std::abs(stepped.eval(1.4)) <= 0.3 + 1e-12);
  stepped.check_invariants();

  // violations throw: factor centers closer than the core radius
  ActivityField bad = a;
  bad.factors = {ModFactor{0.0, 1.2}, ModFactor{0.5, 1.2}};
  CHECK_THROWS(bad.check_invariants());
  // support meeting an open core ball around a factor center
  ActivityField bad2 = a;
  bad2.factors = {ModFactor{0.0, 1.5}};
  CHECK_THROWS(bad2.check_invariants());
  CHECK_THROWS(modulate(a, 1.5, {}, Region1D::all()));  // alpha outside [0,1]
}

TEST_CASE("log partition identity") {
  Region1D box = Region1D::interval(0.0, 1.5);
  PairPotential rod = hard_sphere(1, 1.0);
  auto cfg = coarse_config();
  for (complexd lam : {complexd(0.2, 0.0), complexd(0.1, 0.05)}) {
    auto chk = check_log_z_identity(constant_activity(rod, kBeta1, lam), box, cfg);
    CHECK(chk.residual <= 1e-6 * std::max(chk.scale, 1e-3));
  }
  PairPotential sq = square_well(1, 1.0, 1.5, std::log(2.0));
  auto chk = check_log_z_identity(constant_activity(sq, kBeta1, 0.2), box, cfg);
  CHECK(chk.residual <= 1e-6 * std::max(chk.scale, 1e-3));
}

TEST_CASE("density recursion identity") {
  Region1D box = Region1D::interval(0.0, 1.5);
  PairPotential rod = hard_sphere(1, 1.0);
  auto cfg = coarse_config();
  for (double v : {0.25, 0.75}) {
    auto chk = check_recursion_identity(constant_activity(rod, kBeta1, 0.2), box, v, cfg);
    CHECK(chk.residual <= 1e-6 * std::max(chk.scale, 1e-2));
  }
  auto cplx =
      check_recursion_identity(constant_activity(rod, kBeta1, complexd(0.1, 0.05)), box, 0.5, cfg);
  CHECK(cplx.residual <= 1e-6 * std::max(cplx.scale, 1e-2));
}

TEST_CASE("tree recursion with zero boundary reduces to the activity") {
  Region1D box = Region1D::interval(0.0, 1.5);
  PairPotential rod = hard_sphere(1, 1.0);
  ActivityField a = constant_activity(rod, kBeta1, 0.2);
  BoundaryFn zero = [](std::span<const double>) { return complexd(0.0); };
  auto cfg = coarse_config();
  CHECK(std::abs(tree_recursion_eval(a, box, zero, 1, 0.75, cfg) - a.eval(0.75)) < 1e-10);
  CHECK(std::abs(tree_recursion_eval(a, box, zero, 1, 5.0, cfg)) == 0.0);  // outside the box
}

TEST_CASE("depth one density correspondence") {
  Region1D box = Region1D::interval(0.0, 1.5);
  PairPotential rod = hard_sphere(1, 1.0);
  auto cfg = coarse_config();
  auto chk = check_density_correspondence(constant_activity(rod, kBeta1, 0.2), box, 1, 0.75, cfg);
  CHECK(chk.residual <= 1e-5 * std::max(chk.scale, 1e-2));
}

TEST_CASE("modulation bound holds on sampled prefixes") {
  PairPotential sq = square_well(1, 1.0, 1.5, std::log(2.0));
  CHECK(check_modulation_bound(constant_activity(sq, kBeta1, 0.2), 200, 11));
}

TEST_CASE("contraction bound for random boundary pairs") {
  PairPotential rod = hard_sphere(1, 1.0);
  TemperednessConstants k = temperedness_constants(rod, kBeta1);
  auto opt = solve_optimizer(k, k.c_phi);
  Region1D box = Region1D::interval(0.0, 1.5);
  ActivityField a = constant_activity(rod, kBeta1, std::min(0.5, opt.lambda_tilde));
  double m = m_max(k, opt.z_tilde_sq);
  auto res = check_contraction_bound(a, box, 1, 0.75, opt.z_tilde_sq, opt.lambda_tilde, m, 2.0, 50,
                                     5, coarse_config());
  CHECK(res.ok);
  CHECK(res.trials == 50);
  CHECK(res.worst_violation <= 0.0);
}

TEST_CASE("zero free scan below the threshold") {
  PairPotential rod = hard_sphere(1, 1.0);
  auto rep = zero_free_scan(rod, kBeta1, Region1D::interval(0.0, 1.5), 0.5, 64, 8);
  CHECK_FALSE(rep.zero_found);
  CHECK(rep.min_abs_z > 0.1);
  CHECK(std::isfinite(rep.max_log_ratio));
  CHECK(rep.max_log_ratio > 0.0);
}

TEST_CASE("tonks pressure") {
  CHECK(tonks_reference(1.0, 0.0) == 0.0);
  CHECK(tonks_reference(1.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  for (double lam : {0.1, 0.5, 2.0}) {
    double bp = tonks_reference(1.0, lam);
    CHECK(bp * std::exp(bp) == doctest::Approx(lam).epsilon(1e-12));
    double bp2 = tonks_reference(2.0, lam);
    CHECK(bp2 * std::exp(2.0 * bp2) * 2.0 == doctest::Approx(2.0 * lam).epsilon(1e-12));
  }
}

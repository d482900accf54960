#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gasbound/potential.hpp"

using namespace gasbound;

TEST_CASE("hard rod evaluation") {
  PairPotential p = hard_sphere(1, 1.0);
  ThermoState t{1.0};
  CHECK(std::isinf(p.evaluate(0.5)));
  CHECK(p.evaluate(1.0) == 0.0);
  CHECK(p.evaluate(3.7) == 0.0);
  CHECK(boltzmann(p, t, 0.99) == 0.0);
  CHECK(boltzmann(p, t, 1.0) == 1.0);
  CHECK(mayer(p, t, 0.3) == 1.0);
  CHECK(mayer(p, t, 2.0) == 0.0);
  CHECK(p.purely_repulsive());
  CHECK(p.local_stability_unit == 0.0);
  CHECK(p.tail_extent(1.0) == 1.0);
}

TEST_CASE("square well evaluation and stability energy") {
  double eps = std::log(2.0);
  PairPotential p = square_well(1, 1.0, 1.5, eps);
  ThermoState t{1.0};
  CHECK(p.evaluate(1.2) == doctest::Approx(-eps));
  CHECK(p.evaluate(1.5) == 0.0);
  CHECK(boltzmann(p, t, 1.2) == doctest::Approx(2.0));
  CHECK(mayer_abs(p, t, 1.2) == doctest::Approx(1.0));
  CHECK_FALSE(p.purely_repulsive());
  // one admissible neighbor per side within well range 1.5
  CHECK(p.local_stability_unit == doctest::Approx(2.0 * eps));
  auto b = p.tail_breakpoints();
  CHECK(std::find(b.begin(), b.end(), 1.0) != b.end());
  CHECK(std::find(b.begin(), b.end(), 1.5) != b.end());
  CHECK(p.tail_extent(1.0) == 1.5);
  CHECK(square_well(1, 1.0, 1.5, -0.3).purely_repulsive());
}

TEST_CASE("kac tail") {
  PairPotential p = kac_exponential(1.0, 1.0, 1.0);
  CHECK(p.evaluate(2.0) == doctest::Approx(-0.5 * std::exp(-2.0)));
  CHECK_FALSE(p.purely_repulsive());
  double q = std::exp(-1.0);
  CHECK(p.local_stability_unit == doctest::Approx(q / (1.0 - q)));
  CHECK(p.tail_extent(1.0) > 1.0);
  // truncation radius grows as the tolerance shrinks
  CHECK(p.tail_extent(1.0, 1e-14) > p.tail_extent(1.0, 1e-8));
}

TEST_CASE("tabulated tail interpolates") {
  PairPotential p = tabulated_potential(1.0, {1.0, 2.0, 3.0}, {0.4, 0.2, 0.0}, 1.0);
  CHECK(p.evaluate(1.5) == doctest::Approx(0.3));
  CHECK(p.evaluate(3.5) == 0.0);
  CHECK(std::isinf(p.evaluate(0.2)));
  CHECK(p.purely_repulsive());
  CHECK_THROWS(tabulated_potential(1.0, {2.0, 1.0}, {0.1, 0.2}, 0.0));
  CHECK_THROWS(tabulated_potential(1.0, {1.0}, {0.1, 0.2}, 0.0));
}

TEST_CASE("config parsing") {
  const char* path = "test_potential_config.txt";
  {
    std::ofstream f(path);
    f << "# comment line\n";
    f << "kind = square_well\n";
    f << "core_radius = 1.0\n";
    f << "well_range = 1.5  # inline comment\n";
    f << "well_depth = 0.25\n";
    f << "label = demo\n";
  }
  PairPotential p = load_potential(path);
  CHECK(p.tail == TailKind::SquareWell);
  CHECK(p.well_depth == doctest::Approx(0.25));
  CHECK(p.label == "demo");
  std::remove(path);

  {
    std::ofstream f(path);
    f << "core_radius = 1.0\n";
  }
  CHECK_THROWS(load_potential(path));
  {
    std::ofstream f(path);
    f << "kind = mystery\n";
  }
  CHECK_THROWS(load_potential(path));
  std::remove(path);
  CHECK_THROWS(load_potential("no_such_file.txt"));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS(hard_sphere(0, 1.0));
  CHECK_THROWS(hard_sphere(1, 0.0));
  CHECK_THROWS(square_well(1, 1.0, 0.9, 0.1));
  CHECK_THROWS(kac_exponential(1.0, 1.0, 0.0));
}

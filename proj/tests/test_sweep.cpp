#include <cmath>

#include "bcb/sweep.hpp"
#include "doctest.h"

using namespace bcb;

TEST_SUITE("sweep") {

TEST_CASE("empty grid yields an empty table") {
  SweepGrid grid;
  grid.a = {};
  grid.a0 = {0.0};
  CHECK(run_sweep(grid).empty());
}

TEST_CASE("a0 = 0 column reproduces the sign-of-a existence rule") {
  SweepGrid grid;
  grid.mu = {2.0};
  grid.lambda = {0.5};
  grid.a = {-0.5, 0.5};
  grid.a0 = {0.0};
  const auto cells = run_sweep(grid);
  REQUIRE(cells.size() == 2);
  REQUIRE(cells[0].prop1_exists.has_value());
  CHECK(*cells[0].prop1_exists);
  CHECK(cells[0].prop1_rho == doctest::Approx(2.0));
  CHECK_FALSE(*cells[1].prop1_exists);
  // The a0 != 0 families are not evaluated in this column.
  CHECK_FALSE(cells[0].prop2a_exists.has_value());
  CHECK_FALSE(cells[0].prop2b_exists.has_value());
}

TEST_CASE("sign quadrants reproduce the two a0 != 0 existence regions") {
  // lambda = 0.6 keeps every cell strictly off the existence boundary.
  SweepGrid grid;
  grid.mu = {1.0};
  grid.lambda = {0.6};
  grid.a = {-0.5, 0.5};
  grid.a0 = {-0.5, 0.5};
  const auto cells = run_sweep(grid);
  REQUIRE(cells.size() == 4);
  for (const SweepCell& cell : cells) {
    REQUIRE(cell.error.empty());
    REQUIRE(cell.prop2a_exists.has_value());
    const bool mix = (1.0 - cell.lambda) * cell.a + cell.lambda * cell.a0 < 0.0;
    CHECK(*cell.prop2a_exists == mix);
    REQUIRE(cell.prop2b_exists.has_value());
    CHECK(*cell.prop2b_exists == (cell.a0 < 0.0 && cell.a > 0.0 && mix));
  }
  // Only the a > 0, a0 < 0 quadrant hosts the stacked family here.
  int count_2b = 0;
  for (const SweepCell& cell : cells) count_2b += *cell.prop2b_exists ? 1 : 0;
  CHECK(count_2b == 1);
}

TEST_CASE("per-cell errors are recorded without aborting the sweep") {
  SweepGrid grid;
  grid.mu = {1.0, -1.0};  // the second gain is invalid
  grid.lambda = {0.5};
  grid.a = {-0.5};
  grid.a0 = {0.2};
  const auto cells = run_sweep(grid);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].error.empty());
  CHECK_FALSE(cells[1].error.empty());
}

TEST_CASE("simulated cells report a circling verdict") {
  SweepGrid grid;
  grid.mu = {1.0};
  grid.lambda = {0.5};
  grid.a = {-0.4};
  grid.a0 = {0.2};
  grid.simulate = true;
  grid.t_max = 25.0;
  grid.perturb = 0.0;  // start on the equilibrium
  const auto cells = run_sweep(grid);
  REQUIRE(cells.size() == 1);
  REQUIRE(cells[0].sim_converged.has_value());
  CHECK(*cells[0].sim_converged);
  CHECK(*cells[0].simulated_class == std::string("prop2a"));
  CHECK(*cells[0].sim_terminal_rho == doctest::Approx(10.0).epsilon(1e-6));
}

}  // TEST_SUITE

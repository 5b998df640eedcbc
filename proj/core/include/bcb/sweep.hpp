#ifndef BCB_SWEEP_HPP
#define BCB_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcb/params.hpp"

namespace bcb {

/// Cartesian parameter grid for existence-condition classification. When
/// `simulate` is set, each cell that admits an equilibrium is additionally
/// integrated from a perturbed embedding and checked for circling.
struct SweepGrid {
  std::vector<double> mu{1.0};
  std::vector<double> lambda{0.5};
  std::vector<double> a;
  std::vector<double> a0;
  bool simulate{false};
  double t_max{50.0};
  double dt{1e-3};
  double perturb{0.01};
  std::uint64_t seed{0};
  double window{20.0};
  double tolerance{1e-3};
};

/// One grid cell: which equilibrium families exist there and their predicted
/// values. Families whose domain excludes the cell (a0 = 0 vs a0 != 0) stay
/// unset. Errors are recorded per cell, never aborting the sweep.
struct SweepCell {
  double mu, lambda, a, a0;
  std::optional<bool> prop1_exists;
  std::optional<double> prop1_rho;
  std::optional<bool> prop2a_exists;
  std::optional<double> prop2a_rho_1b;
  std::optional<double> prop2a_rho;
  std::optional<bool> prop2b_exists;
  std::optional<double> prop2b_rho_1b;
  std::optional<double> prop2b_rho;
  std::optional<std::string> simulated_class;  // which equilibrium was integrated
  std::optional<bool> sim_converged;
  std::optional<double> sim_terminal_rho;
  std::string error;  // empty when the cell evaluated cleanly
};

/// Evaluates every cell of the grid; cells are independent and run in
/// parallel. The returned order is deterministic: mu outermost, then lambda,
/// a, a0.
std::vector<SweepCell> run_sweep(const SweepGrid& grid);

}  // namespace bcb

#endif  // BCB_SWEEP_HPP

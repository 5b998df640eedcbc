#include "bcb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "bcb/analysis.hpp"
#include "bcb/dynamics.hpp"
#include "bcb/equilibria.hpp"
#include "bcb/rng.hpp"

namespace bcb {

namespace {

void evaluate_cell(SweepCell& cell, const SweepGrid& grid) {
  const ControlParams params = ControlParams::common(cell.mu, cell.lambda, cell.a,
                                                     cell.a0);
  std::optional<EquilibriumSpec> to_simulate;
  if (cell.a0 == 0.0) {
    const ExistenceCondition cond = prop1_condition(params);
    cell.prop1_exists = cond.holds;
    if (cond.holds) {
      // The beacon distance is free; evaluate at rho so the triangle exists.
      const double rho = 2.0 * params.lambda() /
                         ((1.0 - params.lambda()) * params.mu() * (-params.a()));
      auto spec = prop1_equilibrium(params, rho);
      cell.prop1_rho = spec->shape.rho;
      to_simulate = spec;
    }
  } else {
    cell.prop2a_exists = prop2a_condition(params).holds;
    if (*cell.prop2a_exists) {
      auto spec = prop2a_equilibrium(params);
      cell.prop2a_rho_1b = spec->shape.rho_1b;
      cell.prop2a_rho = spec->shape.rho;
      to_simulate = spec;
    }
    cell.prop2b_exists = prop2b_equilibrium(params).has_value();
    if (*cell.prop2b_exists) {
      auto spec = prop2b_equilibrium(params);
      cell.prop2b_rho_1b = spec->shape.rho_1b;
      cell.prop2b_rho = spec->shape.rho;
      if (!to_simulate) to_simulate = spec;
    }
  }

  if (grid.simulate && to_simulate) {
    cell.simulated_class = to_string(to_simulate->cls);
    Rng rng(grid.seed);
    WorldState initial = embed_shape(to_simulate->shape);
    if (grid.perturb > 0.0) {
      initial = perturb_state(initial, grid.perturb, rng);
    }
    const TrajectoryRecord record = integrate(initial, params, grid.t_max, grid.dt);
    if (record.termination != Termination::Completed) {
      cell.error = "simulation terminated early: " + record.termination_detail;
      return;
    }
    const CirclingReport report =
        detect_circling(record, grid.window, grid.tolerance);
    cell.sim_converged = report.converged;
    cell.sim_terminal_rho = report.terminal_shape.rho;
  }
}

}  // namespace

std::vector<SweepCell> run_sweep(const SweepGrid& grid) {
  std::vector<SweepCell> cells;
  for (double mu : grid.mu)
    for (double lambda : grid.lambda)
      for (double a : grid.a)
        for (double a0 : grid.a0) {
          SweepCell cell;
          cell.mu = mu;
          cell.lambda = lambda;
          cell.a = a;
          cell.a0 = a0;
          cells.push_back(cell);
        }

  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(cells.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          evaluate_cell(cells[i], grid);
        } catch (const std::exception& e) {
          cells[i].error = e.what();
        }
      }
    }));
  }
  for (auto& f : futures) f.get();
  return cells;
}

}  // namespace bcb

#ifndef BCB_PARAMS_HPP
#define BCB_PARAMS_HPP

#include "bcb/errors.hpp"

namespace bcb {

/// Gains and bearing-offset parameters of the beacon-referenced CB law for
/// both agents. Validated on construction (fail fast; evaluation sits in the
/// integrator hot loop):
///  - gains mu_1, mu_2, mu_1b, mu_2b strictly positive
///  - lambda strictly inside (0, 1)
///  - offsets a_1, a_2, a_1b, a_2b in [-1, 1]
class ControlParams {
public:
  ControlParams(double mu_1, double mu_2, double mu_1b, double mu_2b,
                double lambda, double a_1, double a_2, double a_1b, double a_2b);

  /// Common-parameter form: one gain for all four channels, one neighbor
  /// offset, one beacon offset.
  static ControlParams common(double mu, double lambda, double a, double a0);

  double mu_1() const { return mu_1_; }
  double mu_2() const { return mu_2_; }
  double mu_1b() const { return mu_1b_; }
  double mu_2b() const { return mu_2b_; }
  double lambda() const { return lambda_; }
  double a_1() const { return a_1_; }
  double a_2() const { return a_2_; }
  double a_1b() const { return a_1b_; }
  double a_2b() const { return a_2b_; }

  /// True when gains and offsets are common across agents and channels
  /// (mu_1 = mu_2 = mu_1b = mu_2b, a_1 = a_2, a_1b = a_2b).
  bool symmetric() const;

  /// Throws AssumptionViolation unless symmetric().
  void require_symmetric() const;

  // Accessors for the symmetric case; call require_symmetric() first or be
  // sure by construction.
  double mu() const { return mu_1_; }
  double a() const { return a_1_; }
  double a0() const { return a_1b_; }

  // Per-agent accessors, 1-based index in {1, 2}.
  double mu(int i) const { return i == 1 ? mu_1_ : mu_2_; }
  double mu_b(int i) const { return i == 1 ? mu_1b_ : mu_2b_; }
  double a(int i) const { return i == 1 ? a_1_ : a_2_; }
  double a_b(int i) const { return i == 1 ? a_1b_ : a_2b_; }

private:
  double mu_1_, mu_2_, mu_1b_, mu_2b_;
  double lambda_;
  double a_1_, a_2_, a_1b_, a_2b_;
};

}  // namespace bcb

#endif  // BCB_PARAMS_HPP

#include "bcb/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace bcb {

const char* to_string(EquilibriumClass c) {
  switch (c) {
    case EquilibriumClass::Prop1:
      return "prop1";
    case EquilibriumClass::Prop2a:
      return "prop2a";
    case EquilibriumClass::Prop2b:
      return "prop2b";
  }
  return "?";
}

namespace {

void require_zero_a0(const ControlParams& p) {
  p.require_symmetric();
  if (p.a0() != 0.0) {
    throw ParameterViolation("this equilibrium family requires a0 = 0 (got " +
                             std::to_string(p.a0()) + ")");
  }
}

void require_nonzero_a0(const ControlParams& p) {
  p.require_symmetric();
  if (p.a0() == 0.0) {
    throw ParameterViolation("this equilibrium family requires a0 != 0");
  }
}

}  // namespace

ExistenceCondition prop1_condition(const ControlParams& params) {
  require_zero_a0(params);
  return ExistenceCondition{"a < 0 (with a0 = 0)", params.a(), params.a() < 0.0};
}

ExistenceCondition prop2a_condition(const ControlParams& params) {
  require_nonzero_a0(params);
  const double lhs = (1.0 - params.lambda()) * params.a() + params.lambda() * params.a0();
  return ExistenceCondition{"(1-lambda)*a + lambda*a0 < 0", lhs, lhs < 0.0};
}

ExistenceCondition prop2b_condition(const ControlParams& params) {
  require_nonzero_a0(params);
  const double mix = (1.0 - params.lambda()) * params.a() + params.lambda() * params.a0();
  const bool holds = params.a0() < 0.0 && params.a() > 0.0 && mix < 0.0;
  return ExistenceCondition{"a0 < 0 and a > 0 and (1-lambda)*a + lambda*a0 < 0", mix,
                            holds};
}

std::optional<EquilibriumSpec> prop1_equilibrium(const ControlParams& params,
                                                 double rho_1b_choice) {
  const ExistenceCondition cond = prop1_condition(params);
  if (!cond.holds) {
    return std::nullopt;
  }
  const double rho =
      2.0 * params.lambda() / ((1.0 - params.lambda()) * params.mu() * (-params.a()));
  if (rho_1b_choice < rho / 2.0) {
    throw UnrealizableShape("rho_1b_choice " + std::to_string(rho_1b_choice) +
                            " is below rho/2 = " + std::to_string(rho / 2.0) +
                            "; no triangle realizes this equilibrium");
  }
  EquilibriumSpec spec;
  spec.cls = EquilibriumClass::Prop1;
  spec.shape = EffectiveShape{rho, rho_1b_choice, rho_1b_choice, 0.0, 0.0,
                              0.0, 0.0, -1.0};
  spec.rho_1b_is_free_parameter = true;
  spec.existence = cond;
  return spec;
}

std::optional<EquilibriumSpec> prop2a_equilibrium(const ControlParams& params) {
  const ExistenceCondition cond = prop2a_condition(params);
  if (!cond.holds) {
    return std::nullopt;
  }
  const double rho_1b = params.lambda() / (-params.mu() * cond.lhs);
  EquilibriumSpec spec;
  spec.cls = EquilibriumClass::Prop2a;
  spec.shape =
      EffectiveShape{2.0 * rho_1b, rho_1b, rho_1b, 0.0, 0.0, 0.0, 0.0, -1.0};
  spec.existence = cond;
  return spec;
}

std::optional<EquilibriumSpec> prop2b_equilibrium(const ControlParams& params) {
  const ExistenceCondition cond = prop2b_condition(params);
  if (!cond.holds) {
    return std::nullopt;
  }
  const double lam = params.lambda();
  const double a = params.a();
  const double a0 = params.a0();
  const double denom =
      params.mu() * ((1.0 - lam) * (1.0 - lam) * a * a - lam * lam * a0 * a0);
  const double rho_1b = lam * a0 / denom;
  const double rho = -2.0 * (1.0 - lam) * a / denom;

  // Non-collinearity of the resulting triangle, strict by construction when
  // the existence condition holds: ((1-lambda)/lambda) * (-a/a0) < 1.
  const double collinearity_ratio = ((1.0 - lam) / lam) * (-a / a0);
  if (!(collinearity_ratio < 1.0)) {
    return std::nullopt;
  }

  EquilibriumSpec spec;
  spec.cls = EquilibriumClass::Prop2b;
  spec.shape = EffectiveShape{rho, rho_1b, rho_1b, 0.0, 0.0, 0.0, 0.0, 1.0};
  spec.existence = cond;
  return spec;
}

std::array<double, 5> nullcline_rhs(const EffectiveShape& s,
                                    const ControlParams& params,
                                    double nullcline_tol) {
  params.require_symmetric();
  if (std::abs(s.xbar_2 + s.xbar_1) > nullcline_tol ||
      std::abs(s.xbar_1b) > nullcline_tol || std::abs(s.xbar_2b) > nullcline_tol) {
    throw NullclineViolation(
        "shape is off the rho-nullcline (requires xbar_2 = -xbar_1, "
        "xbar_1b = xbar_2b = 0)");
  }
  if (s.rho < tol::kSeparation || s.rho_1b < tol::kSeparation ||
      s.rho_2b < tol::kSeparation) {
    throw SingularConfiguration("shape has a near-zero separation");
  }

  const double mu = params.mu();
  const double lam = params.lambda();
  const double a = params.a();
  const double a0 = params.a0();
  const double x1 = s.xbar_1;
  const double rho = s.rho, r1b = s.rho_1b, r2b = s.rho_2b;
  const double xt = s.xtilde;

  const double c1 = (r1b * r1b + rho * rho - r2b * r2b) / (2.0 * rho * r1b);
  const double c2 = (r2b * r2b + rho * rho - r1b * r1b) / (2.0 * rho * r2b);
  const double one_m_lam = 1.0 - lam;

  const double d_x1 = -one_m_lam * mu * (x1 - a) * (1.0 - x1 * x1) +
                      lam * mu * a0 * c1 + (lam / rho) * (1.0 - xt);
  const double d_x2 = -one_m_lam * mu * (-x1 - a) * (1.0 - x1 * x1) +
                      lam * mu * a0 * c2 + (lam / rho) * (1.0 - xt);
  const double d_x1b =
      -one_m_lam * (mu * (x1 - a) + (1.0 - xt) / rho) * c1 -
      one_m_lam * x1 * x1 / r1b + lam * mu * a0 + 1.0 / r1b;
  const double d_x2b =
      -one_m_lam * (mu * (-x1 - a) + (1.0 - xt) / rho) * c2 -
      one_m_lam * x1 * x1 / r2b + lam * mu * a0 + 1.0 / r2b;
  // Restriction of the full xtilde dynamics to the nullcline: the CB part
  // carries the factor (1 - xtilde) and the beacon part the sign making it
  // consistent with the unreduced equations.
  const double d_xt =
      -mu * x1 * (2.0 * one_m_lam * (1.0 - xt) * x1 +
                  lam * a0 * rho * (r1b - r2b) / (r1b * r2b));

  return {d_x1, d_x2, d_x1b, d_x2b, d_xt};
}

double residual_at(const EffectiveShape& shape, const ControlParams& params) {
  const auto d = shape_rhs(shape, params);
  double m = 0.0;
  for (double v : d) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace bcb

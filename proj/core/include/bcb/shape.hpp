#ifndef BCB_SHAPE_HPP
#define BCB_SHAPE_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bcb/params.hpp"
#include "bcb/state.hpp"

namespace bcb {

/// The eight scalars parametrizing the 7-dimensional effective shape space
/// (one codimension-1 constraint ties xtilde to the others).
///
/// Sign conventions: xbar_1 is taken against r_12 = r_1 - r_2, xbar_2
/// against r_21, xbar_ib against r_ib = r_i - r_beacon.
struct EffectiveShape {
  double rho{0.0};
  double rho_1b{0.0};
  double rho_2b{0.0};
  double xbar_1{0.0};
  double xbar_2{0.0};
  double xbar_1b{0.0};
  double xbar_2b{0.0};
  double xtilde{0.0};

  static constexpr std::size_t kDim = 8;

  std::array<double, kDim> as_array() const {
    return {rho, rho_1b, rho_2b, xbar_1, xbar_2, xbar_1b, xbar_2b, xtilde};
  }
  static EffectiveShape from_array(const std::array<double, kDim>& a) {
    return EffectiveShape{a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]};
  }
};

/// Variable names in as_array() order; used by reports and CSV columns.
inline constexpr std::array<const char*, EffectiveShape::kDim> kShapeVarNames = {
    "rho", "rho1b", "rho2b", "xbar1", "xbar2", "xbar1b", "xbar2b", "xtilde"};

/// Extracts the effective shape of a configuration.
/// Throws SingularConfiguration if any separation is below min_sep.
EffectiveShape effective_shape(const WorldState& state,
                               double min_sep = tol::kSeparation);

/// Signed slacks of the realizability constraints (nonnegative when the
/// shape is geometrically consistent) plus collinearity indicators.
/// Reports only; never throws.
struct ConstraintReport {
  double projection_1_slack;   // rho_2b - |rho_1b xbar_1b - rho xbar_1|
  double projection_2_slack;   // rho_1b - |rho_2b xbar_2b - rho xbar_2|
  double triangle_upper_slack; // rho_1b + rho_2b - rho
  double triangle_lower_slack; // rho - |rho_1b - rho_2b|
  double collinear_sum;        // |rho_1b + rho_2b - rho| (beacon between agents)
  double collinear_diff;       // ||rho_1b - rho_2b| - rho| (beacon outside)

  double min_slack() const;
  bool realizable(double slack_tol = tol::kPrecheckSlack) const {
    return min_slack() >= -slack_tol;
  }
  bool collinear(double tol_abs) const {
    return collinear_sum <= tol_abs || collinear_diff <= tol_abs;
  }
};

ConstraintReport constraint_residuals(const EffectiveShape& shape);

/// The two heading alignments x_1 . x_2 admitted by a non-collinear shape:
/// the headings are fixed up to reflection across the triangle plane, so
/// xtilde takes the same-side value or the opposite-side value.
///
/// shape.xtilde is ignored. Throws CollinearConfiguration on a degenerate
/// triangle and NoIntersection when either heading-constraint circle pair
/// fails to intersect on the unit sphere.
struct XtildeCandidates {
  double same_side;      // both headings on the same side of the triangle plane
  double opposite_side;  // headings mirrored across the plane
};

XtildeCandidates xtilde_candidates(const EffectiveShape& shape,
                                   double tol_abs = tol::kEquality);

/// Time derivative of the eight shape variables under the closed loop with
/// common parameters (requires ControlParams::symmetric()).
/// Order matches EffectiveShape::as_array().
std::array<double, EffectiveShape::kDim> shape_rhs(const EffectiveShape& shape,
                                                   const ControlParams& params,
                                                   double min_sep = tol::kSeparation);

/// Which of the two reflection branches embed_shape realizes for agent 1.
/// PPrime puts agent 1's heading on the +z side of the triangle plane.
enum class EmbedBranch { PPrime, PDoublePrime };

/// Reconstructs a configuration with the given shape: beacon at the origin,
/// triangle in the z = 0 plane (r1 on the +x axis), headings built to match
/// the five dot products, frames completed deterministically.
///
/// Throws UnrealizableShape when constraints fail or shape.xtilde is not
/// within xtilde_tol of an admissible candidate.
WorldState embed_shape(const EffectiveShape& shape,
                       EmbedBranch branch = EmbedBranch::PPrime,
                       double xtilde_tol = 1e-9);

/// One recorded sample of a reduced-space integration.
struct ShapeSample {
  double t;
  EffectiveShape shape;
  ConstraintReport constraints;
};

enum class ShapeTermination { Completed, ManifoldEscape, Singular };

struct ShapeTrajectory {
  std::vector<ShapeSample> samples;
  ShapeTermination termination{ShapeTermination::Completed};
  std::string termination_detail;
  double min_slack{0.0};

  const ShapeSample& back() const { return samples.back(); }
};

/// Fixed-step RK4 on the eight shape scalars. Terminates early (with reason)
/// if a constraint slack drops below escape_slack -- the trajectory has left
/// the realizable manifold beyond integration error -- or if a separation
/// becomes singular.
ShapeTrajectory integrate_shape(const EffectiveShape& initial,
                                const ControlParams& params, double t_max, double dt,
                                double escape_slack = -1e-6);

}  // namespace bcb

#endif  // BCB_SHAPE_HPP

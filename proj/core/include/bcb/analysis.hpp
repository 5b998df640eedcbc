#ifndef BCB_ANALYSIS_HPP
#define BCB_ANALYSIS_HPP

#include <array>
#include <optional>
#include <vector>

#include "bcb/dynamics.hpp"
#include "bcb/shape.hpp"
#include "bcb/vec3.hpp"

namespace bcb {

/// Least-squares circle in 3D: plane fit (principal components) followed by
/// an in-plane algebraic circle fit. rms is the root-mean-square distance of
/// the points to the fitted circle as a space curve.
struct CircleFit {
  Vec3 center;
  Vec3 normal;  // unit
  double radius;
  double rms;
};

/// Throws DegenerateData for fewer than 4 points or (near-)collinear input.
CircleFit fit_circle_3d(const std::vector<Vec3>& points);

/// Circling-equilibrium detection over the trailing `window` seconds of a
/// trajectory. Convergence is decided on shape variables (positions never
/// settle at a circling equilibrium; shape does): beacon bearings and the
/// bearing sum stay below tol and no shape variable drifts more than tol
/// across the window. Circle fits and axis geometry are measured and
/// reported regardless of the verdict.
struct CirclingReport {
  bool converged{false};
  std::optional<CircleFit> circle1;
  std::optional<CircleFit> circle2;
  double max_beacon_bearing{0.0};    // max |xbar_1b|, |xbar_2b| over window
  double max_bearing_sum{0.0};       // max |xbar_1 + xbar_2| over window
  double max_shape_drift{0.0};       // max per-variable (max - min) over window
  double normal_angle{0.0};          // angle between fitted circle normals (rad)
  double common_axis_deviation{0.0}; // beacon distance to the common axis
  double plane_separation{0.0};      // distance between the two circle planes
  EffectiveShape terminal_shape;
  double window{0.0};
  double tol{0.0};
};

CirclingReport detect_circling(const TrajectoryRecord& trajectory,
                               double window = 20.0, double tolerance = 1e-3);

/// Deviation between the shape sequence extracted from a full-space run and
/// a direct integration of the reduced dynamics from the same initial shape
/// with the same step size.
struct ComparisonReport {
  std::array<double, EffectiveShape::kDim> rms_per_variable{};
  double max_abs_deviation{0.0};
  double horizon{0.0};
};

ComparisonReport compare_representations(const TrajectoryRecord& full,
                                         const ControlParams& params);

}  // namespace bcb

#endif  // BCB_ANALYSIS_HPP

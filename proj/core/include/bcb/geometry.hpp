#ifndef BCB_GEOMETRY_HPP
#define BCB_GEOMETRY_HPP

#include "bcb/errors.hpp"
#include "bcb/vec3.hpp"

namespace bcb {

/// Module-wide default tolerances. Every operation that uses one accepts an
/// override argument.
namespace tol {
inline constexpr double kEquality = 1e-12;      // geometric equality checks
inline constexpr double kPrecheckSlack = 1e-12; // precondition slack
inline constexpr double kSeparation = 1e-9;     // minimum usable distance
}  // namespace tol

/// Right-handed orthonormal triad attached to a unit-speed agent.
///
/// Invariants (restored by renormalize()):
///  - each axis has unit norm within 1e-12
///  - pairwise dot products vanish within 1e-12
///  - x_axis x y_axis = z_axis within 1e-12
struct Frame {
  Vec3 x_axis{1.0, 0.0, 0.0};
  Vec3 y_axis{0.0, 1.0, 0.0};
  Vec3 z_axis{0.0, 0.0, 1.0};

  static constexpr Frame identity() { return Frame{}; }

  /// Worst deviation from orthonormality: max over |axis norms - 1| and
  /// pairwise dots. Zero for an exact frame.
  double orthonormality_violation() const;
};

/// Gram-Schmidt pass that keeps the x axis direction exactly (normalization
/// only), corrects y within span{x, y}, and rebuilds z = x cross y.
///
/// Throws DegenerateFrame when the axes are numerically dependent
/// (Gram matrix determinant <= det_tol).
Frame renormalize(const Frame& frame, double det_tol = tol::kEquality);

/// Deterministic orthonormal completion of a unit heading: y is built from
/// the coordinate axis least aligned with x, z = x cross y.
Frame frame_from_heading(const Vec3& heading);

/// Planar triangle realizing given side lengths, beacon at the origin.
/// r1 lies on the +x axis, r2 in the z = 0 half-plane with y >= 0.
struct Triangle {
  Vec3 r1;
  Vec3 r2;
};

/// Constructs the beacon-agent-agent triangle from side lengths
/// (|r1| = rho_1b, |r2| = rho_2b, |r1 - r2| = rho).
///
/// Throws TriangleInequalityViolated if the sides fail
/// |rho_1b - rho_2b| <= rho <= rho_1b + rho_2b beyond `slack`
/// (scaled by the largest side).
Triangle triangle_from_sides(double rho_1b, double rho_2b, double rho,
                             double slack = tol::kPrecheckSlack);

}  // namespace bcb

#endif  // BCB_GEOMETRY_HPP

#include "bcb/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace bcb {

double Frame::orthonormality_violation() const {
  double v = 0.0;
  v = std::max(v, std::abs(x_axis.norm() - 1.0));
  v = std::max(v, std::abs(y_axis.norm() - 1.0));
  v = std::max(v, std::abs(z_axis.norm() - 1.0));
  v = std::max(v, std::abs(dot(x_axis, y_axis)));
  v = std::max(v, std::abs(dot(x_axis, z_axis)));
  v = std::max(v, std::abs(dot(y_axis, z_axis)));
  return v;
}

Frame renormalize(const Frame& frame, double det_tol) {
  const Vec3& x = frame.x_axis;
  const Vec3& y = frame.y_axis;
  const Vec3& z = frame.z_axis;

  // Gram determinant = det([x y z])^2; vanishes iff the axes are dependent.
  const double det = dot(x, cross(y, z));
  if (det * det <= det_tol) {
    throw DegenerateFrame("frame axes are numerically dependent (Gram determinant " +
                          std::to_string(det * det) + ")");
  }

  Frame out;
  out.x_axis = normalized(x);
  const Vec3 y_perp = y - dot(y, out.x_axis) * out.x_axis;
  const double y_norm = y_perp.norm();
  if (!(y_norm > 0.0) || !y_perp.finite()) {
    throw DegenerateFrame("y axis is parallel to x axis");
  }
  out.y_axis = y_perp / y_norm;
  out.z_axis = cross(out.x_axis, out.y_axis);
  return out;
}

Frame frame_from_heading(const Vec3& heading) {
  const Vec3 x = normalized(heading);
  // Pick the coordinate axis least aligned with x as the seed for y.
  const double ax = std::abs(x.x), ay = std::abs(x.y), az = std::abs(x.z);
  Vec3 seed{0.0, 0.0, 0.0};
  if (ax <= ay && ax <= az) {
    seed = {1.0, 0.0, 0.0};
  } else if (ay <= az) {
    seed = {0.0, 1.0, 0.0};
  } else {
    seed = {0.0, 0.0, 1.0};
  }
  const Vec3 y = normalized(seed - dot(seed, x) * x);
  return Frame{x, y, cross(x, y)};
}

Triangle triangle_from_sides(double rho_1b, double rho_2b, double rho, double slack) {
  if (!(rho_1b > 0.0) || !(rho_2b > 0.0) || !(rho > 0.0)) {
    throw TriangleInequalityViolated("all side lengths must be positive");
  }
  const double scale = std::max({rho_1b, rho_2b, rho, 1.0});
  const double tol_abs = slack * scale;
  if (rho > rho_1b + rho_2b + tol_abs || rho < std::abs(rho_1b - rho_2b) - tol_abs) {
    throw TriangleInequalityViolated(
        "side lengths violate |rho_1b - rho_2b| <= rho <= rho_1b + rho_2b");
  }

  // r2.x from the law of cosines; r2.y chosen so |r2| = rho_2b holds exactly
  // up to one sqrt rounding.
  const double r2x = (rho_1b * rho_1b + rho_2b * rho_2b - rho * rho) / (2.0 * rho_1b);
  const double y_sq = std::max(0.0, rho_2b * rho_2b - r2x * r2x);
  return Triangle{Vec3{rho_1b, 0.0, 0.0}, Vec3{r2x, std::sqrt(y_sq), 0.0}};
}

}  // namespace bcb

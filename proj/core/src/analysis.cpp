#include "bcb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "bcb/errors.hpp"

namespace bcb {

namespace {

/// Jacobi eigendecomposition of a symmetric 3x3 matrix. Returns eigenvalues
/// ascending with matching unit eigenvectors.
struct EigenSym3 {
  std::array<double, 3> values;
  std::array<Vec3, 3> vectors;
};

EigenSym3 eigen_sym3(std::array<std::array<double, 3>, 3> a) {
  std::array<std::array<double, 3>, 3> v = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  EigenSym3 out;
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[i][i] < a[j][j]; });
  for (int k = 0; k < 3; ++k) {
    const int i = order[k];
    out.values[k] = a[i][i];
    out.vectors[k] = Vec3{v[0][i], v[1][i], v[2][i]};
  }
  return out;
}

/// Gaussian elimination with partial pivoting for a 3x3 system.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    std::swap(m[col], m[pivot]);
    if (m[col][col] == 0.0) {
      throw DegenerateData("singular normal equations in circle fit");
    }
    for (int row = col + 1; row < 3; ++row) {
      const double f = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
    }
  }
  std::array<double, 3> x{};
  for (int row = 2; row >= 0; --row) {
    double acc = m[row][3];
    for (int k = row + 1; k < 3; ++k) acc -= m[row][k] * x[k];
    x[row] = acc / m[row][row];
  }
  return x;
}

}  // namespace

CircleFit fit_circle_3d(const std::vector<Vec3>& points) {
  const std::size_t n = points.size();
  if (n < 4) {
    throw DegenerateData("circle fit needs at least 4 points (got " +
                         std::to_string(n) + ")");
  }

  Vec3 centroid{0, 0, 0};
  for (const Vec3& p : points) centroid += p;
  centroid = centroid / static_cast<double>(n);

  std::array<std::array<double, 3>, 3> cov{};
  for (const Vec3& p : points) {
    const Vec3 d = p - centroid;
    const double e[3] = {d.x, d.y, d.z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cov[i][j] += e[i] * e[j];
  }
  for (auto& row : cov)
    for (double& x : row) x /= static_cast<double>(n);

  const EigenSym3 eig = eigen_sym3(cov);
  // Collinear points have a single significant principal direction.
  if (eig.values[1] <= 1e-12 * std::max(eig.values[2], 1e-300)) {
    throw DegenerateData("points are (near-)collinear; no circle fit");
  }
  const Vec3 normal = normalized(eig.vectors[0]);
  const Vec3 e1 = normalized(eig.vectors[2]);
  const Vec3 e2 = cross(normal, e1);

  // In-plane algebraic (Kasa) fit: xi^2 + eta^2 + D xi + E eta + F = 0.
  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0;
  double sxz = 0, syz = 0, sz = 0;
  for (const Vec3& p : points) {
    const Vec3 d = p - centroid;
    const double xi = dot(d, e1), eta = dot(d, e2);
    const double zsq = xi * xi + eta * eta;
    sxx += xi * xi;
    sxy += xi * eta;
    syy += eta * eta;
    sx += xi;
    sy += eta;
    sxz += xi * zsq;
    syz += eta * zsq;
    sz += zsq;
  }
  const auto sol = solve3({{{sxx, sxy, sx, -sxz},
                            {sxy, syy, sy, -syz},
                            {sx, sy, static_cast<double>(n), -sz}}});
  const double cx = -sol[0] / 2.0, cy = -sol[1] / 2.0;
  const double r_sq = cx * cx + cy * cy - sol[2];
  if (!(r_sq > 0.0)) {
    throw DegenerateData("circle fit produced a nonpositive radius");
  }
  const double radius = std::sqrt(r_sq);

  double ss = 0.0;
  for (const Vec3& p : points) {
    const Vec3 d = p - centroid;
    const double xi = dot(d, e1) - cx, eta = dot(d, e2) - cy;
    const double in_plane = std::sqrt(xi * xi + eta * eta) - radius;
    const double off_plane = dot(d, normal);
    ss += in_plane * in_plane + off_plane * off_plane;
  }

  CircleFit fit;
  fit.center = centroid + cx * e1 + cy * e2;
  fit.normal = normal;
  fit.radius = radius;
  fit.rms = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

CirclingReport detect_circling(const TrajectoryRecord& trajectory, double window,
                               double tolerance) {
  const auto& samples = trajectory.samples;
  if (samples.size() < 4 || trajectory.t_end() - samples.front().t < window) {
    throw InsufficientData("trajectory shorter than the detection window");
  }
  const double t_start = trajectory.t_end() - window;
  std::size_t first = 0;
  while (first < samples.size() && samples[first].t < t_start - 1e-12) ++first;

  CirclingReport report;
  report.window = window;
  report.tol = tolerance;
  report.terminal_shape = samples.back().shape;

  std::array<double, EffectiveShape::kDim> lo{}, hi{};
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  std::vector<Vec3> pts1, pts2;
  pts1.reserve(samples.size() - first);
  pts2.reserve(samples.size() - first);
  for (std::size_t i = first; i < samples.size(); ++i) {
    const EffectiveShape& s = samples[i].shape;
    report.max_beacon_bearing = std::max(
        {report.max_beacon_bearing, std::abs(s.xbar_1b), std::abs(s.xbar_2b)});
    report.max_bearing_sum =
        std::max(report.max_bearing_sum, std::abs(s.xbar_1 + s.xbar_2));
    const auto arr = s.as_array();
    for (std::size_t k = 0; k < arr.size(); ++k) {
      lo[k] = std::min(lo[k], arr[k]);
      hi[k] = std::max(hi[k], arr[k]);
    }
    pts1.push_back(samples[i].state.agent1.r);
    pts2.push_back(samples[i].state.agent2.r);
  }
  for (std::size_t k = 0; k < lo.size(); ++k) {
    report.max_shape_drift = std::max(report.max_shape_drift, hi[k] - lo[k]);
  }
  report.converged = report.max_beacon_bearing < tolerance &&
                     report.max_bearing_sum < tolerance &&
                     report.max_shape_drift < tolerance;

  try {
    report.circle1 = fit_circle_3d(pts1);
  } catch (const DegenerateData&) {
  }
  try {
    report.circle2 = fit_circle_3d(pts2);
  } catch (const DegenerateData&) {
  }

  if (report.circle1 && report.circle2) {
    Vec3 n1 = report.circle1->normal;
    Vec3 n2 = report.circle2->normal;
    if (dot(n1, n2) < 0.0) n2 = -n2;  // fitted normal sign is arbitrary
    report.normal_angle = std::acos(clamp_unit(dot(n1, n2)));
    const Vec3 axis_dir = normalized(n1 + n2);
    const Vec3 axis_point = (report.circle1->center + report.circle2->center) * 0.5;
    const Vec3 to_beacon = samples.back().state.beacon - axis_point;
    report.common_axis_deviation =
        (to_beacon - dot(to_beacon, axis_dir) * axis_dir).norm();
    report.plane_separation =
        std::abs(dot(report.circle1->center - report.circle2->center, axis_dir));
  }
  return report;
}

ComparisonReport compare_representations(const TrajectoryRecord& full,
                                         const ControlParams& params) {
  if (full.termination != Termination::Completed) {
    throw ValidationError(
        "cannot compare representations: the full run terminated early (" +
        full.termination_detail + ")");
  }
  if (full.samples.size() < 2) {
    ComparisonReport report;
    report.horizon = full.t_end();
    return report;
  }
  const double dt = full.samples[1].t - full.samples[0].t;

  // Same step size and horizon as the full run; termination escapes propagate.
  const ShapeTrajectory reduced =
      integrate_shape(full.samples.front().shape, params, full.t_end(), dt);
  if (reduced.termination != ShapeTermination::Completed) {
    throw ValidationError("reduced-space integration terminated early: " +
                          reduced.termination_detail);
  }

  ComparisonReport report;
  report.horizon = full.t_end();
  const std::size_t n = std::min(full.samples.size(), reduced.samples.size());
  std::array<double, EffectiveShape::kDim> ss{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = full.samples[i].shape.as_array();
    const auto b = reduced.samples[i].shape.as_array();
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = a[k] - b[k];
      ss[k] += d * d;
      report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(d));
    }
  }
  for (std::size_t k = 0; k < ss.size(); ++k) {
    report.rms_per_variable[k] = std::sqrt(ss[k] / static_cast<double>(n));
  }
  return report;
}

}  // namespace bcb

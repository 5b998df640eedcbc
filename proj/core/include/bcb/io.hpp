#ifndef BCB_IO_HPP
#define BCB_IO_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "bcb/dynamics.hpp"
#include "bcb/shape.hpp"

namespace bcb {

/// Renders a double with 17 significant digits (lossless round-trip).
std::string fmt17(double v);

/// Trajectory CSV column contract. Numbers use fmt17, rows end with '\n'.
inline constexpr const char* kTrajectoryCsvHeader =
    "t,r1x,r1y,r1z,x1x,x1y,x1z,y1x,y1y,y1z,z1x,z1y,z1z,"
    "r2x,r2y,r2z,x2x,x2y,x2z,y2x,y2y,y2z,z2x,z2y,z2z,"
    "u1,v1,u2,v2,rho,rho1b,rho2b,xbar1,xbar2,xbar1b,xbar2b,xtilde";

inline constexpr std::size_t kTrajectoryCsvColumns = 37;

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record);
void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record);

/// Shape-only CSV: t plus the eight shape variables.
void write_shape_csv(std::ostream& out, const TrajectoryRecord& record);
void write_shape_csv(std::ostream& out, const ShapeTrajectory& trajectory);
void write_shape_csv(const std::string& path, const TrajectoryRecord& record);
void write_shape_csv(const std::string& path, const ShapeTrajectory& trajectory);

/// One parsed trajectory row in column order.
struct TrajectoryRow {
  std::array<double, kTrajectoryCsvColumns> values;

  double t() const { return values[0]; }
  Vec3 vec(std::size_t first) const {
    return Vec3{values[first], values[first + 1], values[first + 2]};
  }
  AgentState agent1() const { return AgentState{vec(1), Frame{vec(4), vec(7), vec(10)}}; }
  AgentState agent2() const {
    return AgentState{vec(13), Frame{vec(16), vec(19), vec(22)}};
  }
  EffectiveShape shape() const {
    return EffectiveShape{values[29], values[30], values[31], values[32],
                          values[33], values[34], values[35], values[36]};
  }
};

/// Parses a trajectory CSV; validates the header and column counts.
/// Throws ParseError (with line number) or IoError.
std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path);

/// Row-by-row invariant check of an emitted trajectory file: frame
/// orthonormality and unit speed within `frame_tol`, beacon-independent shape
/// columns match recomputation from the state columns, and the recorded shape
/// satisfies the realizability constraints.
struct VerifyReport {
  std::size_t rows{0};
  double max_frame_violation{0.0};
  double max_shape_mismatch{0.0};
  double min_constraint_slack{0.0};
  bool ok{false};
};

VerifyReport verify_trajectory_rows(const std::vector<TrajectoryRow>& rows,
                                    double frame_tol = 1e-9,
                                    double constraint_slack = -1e-6);

}  // namespace bcb

#endif  // BCB_IO_HPP

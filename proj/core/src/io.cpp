#include "bcb/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bcb/errors.hpp"

namespace bcb {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void append_vec(std::string& row, const Vec3& v) {
  row += ',';
  row += fmt17(v.x);
  row += ',';
  row += fmt17(v.y);
  row += ',';
  row += fmt17(v.z);
}

void append_agent(std::string& row, const AgentState& a) {
  append_vec(row, a.r);
  append_vec(row, a.frame.x_axis);
  append_vec(row, a.frame.y_axis);
  append_vec(row, a.frame.z_axis);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record) {
  out << kTrajectoryCsvHeader << '\n';
  std::string row;
  for (const TrajectorySample& s : record.samples) {
    row.clear();
    row += fmt17(s.t);
    append_agent(row, s.state.agent1);
    append_agent(row, s.state.agent2);
    row += ',';
    row += fmt17(s.input1.u);
    row += ',';
    row += fmt17(s.input1.v);
    row += ',';
    row += fmt17(s.input2.u);
    row += ',';
    row += fmt17(s.input2.v);
    for (double v : s.shape.as_array()) {
      row += ',';
      row += fmt17(v);
    }
    row += '\n';
    out << row;
  }
  if (!out) {
    throw IoError("trajectory CSV write failed");
  }
}

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& record) {
  auto out = open_out(path);
  write_trajectory_csv(out, record);
}

namespace {

void write_shape_header(std::ostream& out) {
  out << 't';
  for (const char* name : kShapeVarNames) out << ',' << name;
  out << '\n';
}

void write_shape_row(std::ostream& out, double t, const EffectiveShape& s) {
  out << fmt17(t);
  for (double v : s.as_array()) out << ',' << fmt17(v);
  out << '\n';
}

}  // namespace

void write_shape_csv(std::ostream& out, const TrajectoryRecord& record) {
  write_shape_header(out);
  for (const TrajectorySample& s : record.samples) write_shape_row(out, s.t, s.shape);
  if (!out) throw IoError("shape CSV write failed");
}

void write_shape_csv(std::ostream& out, const ShapeTrajectory& trajectory) {
  write_shape_header(out);
  for (const ShapeSample& s : trajectory.samples) write_shape_row(out, s.t, s.shape);
  if (!out) throw IoError("shape CSV write failed");
}

void write_shape_csv(const std::string& path, const TrajectoryRecord& record) {
  auto out = open_out(path);
  write_shape_csv(out, record);
}

void write_shape_csv(const std::string& path, const ShapeTrajectory& trajectory) {
  auto out = open_out(path);
  write_shape_csv(out, trajectory);
}

std::vector<TrajectoryRow> read_trajectory_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(1, "empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryCsvHeader) {
    throw ParseError(1, "unexpected header (not a trajectory CSV)");
  }

  std::vector<TrajectoryRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    TrajectoryRow row;
    const char* p = line.c_str();
    for (std::size_t col = 0; col < kTrajectoryCsvColumns; ++col) {
      char* end = nullptr;
      row.values[col] = std::strtod(p, &end);
      if (end == p) {
        throw ParseError(line_no, "malformed number in column " + std::to_string(col + 1));
      }
      p = end;
      if (col + 1 < kTrajectoryCsvColumns) {
        if (*p != ',') {
          throw ParseError(line_no, "expected ',' after column " + std::to_string(col + 1));
        }
        ++p;
      }
    }
    if (*p != '\0') {
      throw ParseError(line_no, "trailing characters after last column");
    }
    rows.push_back(row);
  }
  return rows;
}

VerifyReport verify_trajectory_rows(const std::vector<TrajectoryRow>& rows,
                                    double frame_tol, double constraint_slack) {
  VerifyReport report;
  report.rows = rows.size();
  report.min_constraint_slack = std::numeric_limits<double>::infinity();
  for (const TrajectoryRow& row : rows) {
    const AgentState a1 = row.agent1();
    const AgentState a2 = row.agent2();
    report.max_frame_violation =
        std::max({report.max_frame_violation, a1.frame.orthonormality_violation(),
                  a2.frame.orthonormality_violation()});

    // Beacon-independent shape columns can be recomputed from the state
    // columns; the beacon-relative ones are checked via constraint slacks.
    const EffectiveShape s = row.shape();
    const Vec3 r12 = a1.r - a2.r;
    const double rho = r12.norm();
    const double mismatch = std::max(
        {std::abs(rho - s.rho), std::abs(dot(a1.frame.x_axis, r12) / rho - s.xbar_1),
         std::abs(dot(a2.frame.x_axis, -r12) / rho - s.xbar_2),
         std::abs(dot(a1.frame.x_axis, a2.frame.x_axis) - s.xtilde)});
    report.max_shape_mismatch = std::max(report.max_shape_mismatch, mismatch);
    report.min_constraint_slack =
        std::min(report.min_constraint_slack, constraint_residuals(s).min_slack());
  }
  if (rows.empty()) report.min_constraint_slack = 0.0;
  report.ok = report.max_frame_violation <= frame_tol &&
              report.max_shape_mismatch <= frame_tol &&
              report.min_constraint_slack >= constraint_slack;
  return report;
}

}  // namespace bcb

#ifndef BCB_VEC3_HPP
#define BCB_VEC3_HPP

#include <cmath>

namespace bcb {

/// Fixed-dimension 3-vector. Positions are in meters; directions are
/// dimensionless unit vectors.
struct Vec3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  constexpr double squared_norm() const { return x * x + y * y + z * z; }

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Returns v / |v|. The caller guarantees |v| is bounded away from zero;
/// a genuinely zero vector yields non-finite components the caller must
/// guard against upstream.
inline Vec3 normalized(const Vec3& v) { return v / v.norm(); }

/// Clamp a cosine-like quantity into [-1, 1] before acos-style use.
/// Raw values are kept wherever they feed dynamics.
constexpr double clamp_unit(double c) {
  return c < -1.0 ? -1.0 : (c > 1.0 ? 1.0 : c);
}

}  // namespace bcb

#endif  // BCB_VEC3_HPP

#include "bcb/rng.hpp"

#include <cmath>

#include "bcb/errors.hpp"

namespace bcb {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

Vec3 Rng::unit_vector() {
  for (;;) {
    const double u = uniform(-1.0, 1.0);
    const double v = uniform(-1.0, 1.0);
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = 2.0 * std::sqrt(1.0 - s);
    return Vec3{u * f, v * f, 1.0 - 2.0 * s};
  }
}

Vec3 rotate(const Vec3& v, const Vec3& unit_axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return v * c + cross(unit_axis, v) * s + unit_axis * (dot(unit_axis, v) * (1.0 - c));
}

WorldState sample_world_state(Rng& rng, const SampleOptions& options) {
  const double L = options.box_halfwidth;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const Vec3 r1 = options.beacon + Vec3{rng.uniform(-L, L), rng.uniform(-L, L),
                                          rng.uniform(-L, L)};
    const Vec3 r2 = options.beacon + Vec3{rng.uniform(-L, L), rng.uniform(-L, L),
                                          rng.uniform(-L, L)};
    const Vec3 x1 = rng.unit_vector();
    const Vec3 x2 = rng.unit_vector();

    const double rho = (r1 - r2).norm();
    const double rho_1b = (r1 - options.beacon).norm();
    const double rho_2b = (r2 - options.beacon).norm();
    if (rho < options.min_separation || rho_1b < options.min_separation ||
        rho_2b < options.min_separation) {
      continue;
    }
    const Vec3 u1 = (r1 - r2) / rho;
    const Vec3 w1 = (r1 - options.beacon) / rho_1b;
    const Vec3 w2 = (r2 - options.beacon) / rho_2b;
    if (cross(u1, w1).norm() < options.min_triangle_sine ||
        cross(u1, w2).norm() < options.min_triangle_sine) {
      continue;
    }

    return WorldState{AgentState{r1, frame_from_heading(x1)},
                      AgentState{r2, frame_from_heading(x2)}, options.beacon};
  }
  throw ValidationError("sample_world_state: rejection sampling did not converge; "
                        "box/min-separation options are inconsistent");
}

WorldState perturb_state(const WorldState& state, double magnitude, Rng& rng) {
  WorldState out = state;
  for (int i = 1; i <= 2; ++i) {
    AgentState& agent = out.agent(i);
    const double scale = (agent.r - state.beacon).norm();
    agent.r += magnitude * scale * rng.unit_vector();
    const Vec3 axis = rng.unit_vector();
    agent.frame = frame_from_heading(rotate(agent.frame.x_axis, axis, magnitude));
  }
  return out;
}

}  // namespace bcb

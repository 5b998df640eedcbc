#ifndef BCB_RNG_HPP
#define BCB_RNG_HPP

#include <array>
#include <cstdint>

#include "bcb/state.hpp"
#include "bcb/vec3.hpp"

namespace bcb {

/// xoshiro256++ generator (Blackman & Vigna), seeded through splitmix64.
/// Chosen over std::mt19937 + <random> distributions because the standard
/// distributions are implementation-defined; this generator plus the helpers
/// below pins the exact byte stream across platforms, which the reproducible
/// CSV contract relies on. The algorithm is documented in the README.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53 random bits: (next_u64() >> 11) * 2^-53.
  double uniform01();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform direction on the unit sphere (Marsaglia 1972 rejection scheme;
  /// consumes a deterministic number of draws per accepted pair).
  Vec3 unit_vector();

private:
  std::array<std::uint64_t, 4> s_;
};

/// Rodrigues rotation of v about a unit axis by angle (radians).
Vec3 rotate(const Vec3& v, const Vec3& unit_axis, double angle);

/// Randomized initial configurations: positions uniform in a cube of
/// half-width `box_halfwidth` centered on the beacon, headings uniform on the
/// sphere, frames completed deterministically from the heading. Draws are
/// rejected until all separations exceed `min_separation` and the
/// agent-beacon triangle has vertex angles with sine at least
/// `min_triangle_sine` (keeps the shape-embedding geometry well conditioned).
struct SampleOptions {
  double box_halfwidth{5.0};
  double min_separation{1.0};
  double min_triangle_sine{0.05};
  Vec3 beacon{0.0, 0.0, 0.0};
  int max_attempts{100000};
};

WorldState sample_world_state(Rng& rng, const SampleOptions& options = {});

/// Perturbs a configuration: each position moves by `magnitude` times its
/// beacon distance in a random direction, each heading tilts by `magnitude`
/// radians about a random axis. Frames are recompleted from the headings.
WorldState perturb_state(const WorldState& state, double magnitude, Rng& rng);

}  // namespace bcb

#endif  // BCB_RNG_HPP

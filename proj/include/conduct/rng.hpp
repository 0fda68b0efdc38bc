#pragma once

#include <cstdint>
#include <random>

namespace conduct {

// splitmix64 finalizer. Used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

// Seed for stream `index` under `base`: mix64(base ^ mix64(index + 1)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; uniforms take the top 53 bits and
// normals use the Marsaglia polar transform implemented here, so a seed pins
// every draw on every conforming platform.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform on [0, 1).
  double uniform();

  // Standard normal. Draws come in pairs; the second is cached.
  double standard_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// mean + sd * z with z standard normal; throws NegativeSd for sd < 0. A draw
// is consumed even when sd == 0, so the stream position does not depend on sd.
double draw_normal(RngState& rng, double mean, double sd);

}  // namespace conduct

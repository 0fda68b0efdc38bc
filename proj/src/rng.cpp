#include "conduct/rng.hpp"

#include <cmath>
#include <string>

#include "conduct/error.hpp"

namespace conduct {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index + 1));
}

double RngState::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngState::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double draw_normal(RngState& rng, double mean, double sd) {
  if (!(sd >= 0.0)) throw Error(Errc::NegativeSd, "sd = " + std::to_string(sd));
  const double z = rng.standard_normal();
  return sd == 0.0 ? mean : mean + sd * z;
}

}  // namespace conduct

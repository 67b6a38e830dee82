// SPDX-License-Identifier: Apache-2.0
#include "qsm/random.hpp"

#include <cmath>
#include <numbers>

namespace qsm {

namespace {

// splitmix64; used only for seed derivation.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), eng_(seed) {}

RandomStream RandomStream::substream(std::uint64_t index) const {
  // Child seed depends only on (parent seed, index), never on parent state,
  // so trial i gets the same stream regardless of scheduling.
  return RandomStream(mix(seed_ ^ mix(index + 0x632BE59BD9B4E019ull)));
}

std::uint64_t RandomStream::bits() { return eng_(); }

double RandomStream::uniform() {
  return static_cast<double>(bits() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  // Box-Muller on our own uniforms; std::normal_distribution is not
  // bit-portable across standard libraries.
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);  // log(0) guard
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

cxd RandomStream::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return cxd(re, im) / std::sqrt(2.0);
}

}  // namespace qsm

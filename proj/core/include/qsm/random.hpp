// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "qsm/common.hpp"

namespace qsm {

// Deterministic random stream. All randomized operations take one of these
// explicitly; there is no ambient RNG. Gaussian variates use our own
// Box-Muller on top of the (standardized) mt19937_64 bit stream, so output
// is byte-identical across platforms and standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Independent child stream; children with distinct indices are
  // statistically independent of each other and of the parent tail.
  RandomStream substream(std::uint64_t index) const;

  std::uint64_t bits();                  // 64 raw bits
  double uniform();                      // [0,1), 53-bit resolution
  double gaussian();                     // N(0,1)
  cxd complex_gaussian();                // N(0,1/2) + i N(0,1/2), E|z|^2 = 1

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qsm

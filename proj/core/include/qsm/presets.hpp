// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/random.hpp"
#include "qsm/states.hpp"

namespace qsm {

// Named example states on labels (A, B, R). Dims beyond the preset's own are
// ignored except for "random"/"product", which honor {d_a, d_b, d_r}.
//
//   epr      maximally entangled pair on A,B; R trivial (dim 1)
//   epr-ar   maximally entangled pair on A,R; B a fresh |0> qubit
//   ghz3     (|000> + |111>)/sqrt(2) on A,B,R
//   ghz4     4-party GHZ on A,B,C,R
//   product  |0...0> on A,B,R with the given dims
//   pure-ab  sqrt(1/4)|00> + sqrt(3/4)|11> on A,B; R trivial
//   random   Haar-random pure state with the given dims (uses rng)
PureState make_preset(const std::string& name, Index d_a, Index d_b, Index d_r,
                      RandomStream* rng);

std::vector<std::string> preset_names();

// Maximally entangled state of Schmidt rank k on two fresh labels.
PureState maximally_entangled(Index k, const std::string& label_a, const std::string& label_b);

}  // namespace qsm

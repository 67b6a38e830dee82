// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/states.hpp"

namespace qsm {

struct DecoderResult {
  Isometry v;                     // acts on the actual state's movable labels
  double achieved_fidelity = 0;   // |<target|(I (x) V)|actual>|^2
};

// Optimal isometry on the movable subsystems taking |actual> as close to
// |target> as purity allows. `fixed` are labels shared by both states (same
// dims, untouched); `movable_target` is the target's remaining labels in the
// order used for the output space (must be exactly the target's non-fixed
// labels). The actual state's movable labels are its non-fixed labels in
// layout order. Requires dim(movable_target) >= dim(movable_actual).
//
// Construction: reshape both states to (fixed x movable) matrices A, B;
// the cross-overlap X = B^dag A has SVD X = W S Z^dag, and V = conj(W) Z^T
// attains overlap = sum of singular values, so achieved fidelity equals the
// fidelity of the two reduced states on the fixed labels (Uhlmann).
DecoderResult uhlmann_decoder(const PureState& actual, const PureState& target,
                              const std::vector<std::string>& fixed,
                              const std::vector<std::string>& movable_target);

// Convenience overload: movable_target = target's non-fixed labels in layout order.
DecoderResult uhlmann_decoder(const PureState& actual, const PureState& target,
                              const std::vector<std::string>& fixed);

}  // namespace qsm

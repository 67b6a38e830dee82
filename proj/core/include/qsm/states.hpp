// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "qsm/common.hpp"
#include "qsm/layout.hpp"

namespace qsm {

// Pure state: complex unit vector over a labeled tensor-product space.
// Normalization is enforced at construction unless `subnormalized` is set
// (used for projected, not-yet-renormalized vectors).
struct PureState {
  Vec amp;
  SubsystemLayout layout;
  bool subnormalized = false;

  PureState() = default;
  PureState(Vec amplitudes, SubsystemLayout lay, bool subnorm = false);

  Index dim() const { return amp.size(); }
  double norm2() const;  // <psi|psi>
};

// Density operator: Hermitian, PSD, unit trace (subnormalized variant is
// flagged and only requires trace <= 1).
struct DensityOperator {
  Mat mat;
  SubsystemLayout layout;
  bool subnormalized = false;

  DensityOperator() = default;
  DensityOperator(Mat m, SubsystemLayout lay, bool subnorm = false);

  Index dim() const { return mat.rows(); }
  double trace() const;
};

// Isometry between labeled spaces: matrix with rows = output dim >= cols =
// input dim and V^dag V = I.
struct Isometry {
  Mat mat;
  SubsystemLayout input;
  SubsystemLayout output;

  Isometry() = default;
  Isometry(Mat m, SubsystemLayout in, SubsystemLayout out);
};

// Channel in Kraus form: sum_k K^dag K = I on the input space.
struct KrausChannel {
  std::vector<Mat> kraus;
  SubsystemLayout input;
  SubsystemLayout output;

  KrausChannel() = default;
  KrausChannel(std::vector<Mat> ops, SubsystemLayout in, SubsystemLayout out);
};

DensityOperator density_from_pure(const PureState& psi);

}  // namespace qsm

// SPDX-License-Identifier: Apache-2.0
#include "qsm/uhlmann.hpp"

#include <Eigen/SVD>
#include <algorithm>

#include "qsm/linalg.hpp"

namespace qsm {

namespace {

// Reshape |psi> as a (fixed x movable) matrix with both groups in the
// caller's label order; requires fixed + movable to cover every label.
Mat side_matrix(const PureState& psi, const std::vector<std::string>& fixed,
                const std::vector<std::string>& movable) {
  std::vector<std::string> order = fixed;
  order.insert(order.end(), movable.begin(), movable.end());
  PureState p = permute_subsystems(psi, order);  // throws if not a cover
  const Index rows = psi.layout.dim_of(fixed);
  const Index cols = p.dim() / rows;
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = p.amp[r * cols + c];
  return m;
}

}  // namespace

DecoderResult uhlmann_decoder(const PureState& actual, const PureState& target,
                              const std::vector<std::string>& fixed,
                              const std::vector<std::string>& movable_target) {
  for (const auto& l : fixed)
    if (actual.layout.dim_of(l) != target.layout.dim_of(l))
      throw invalid_input("uhlmann_decoder: fixed subsystem '" + l +
                          "' differs between the two states");
  const auto movable_actual = actual.layout.labels_except(fixed);
  if (movable_actual.empty())
    throw invalid_input("uhlmann_decoder: nothing left to act on");

  Mat ma = side_matrix(actual, fixed, movable_actual);
  Mat mt = side_matrix(target, fixed, movable_target);
  if (mt.cols() < ma.cols())
    throw invalid_input(
        "uhlmann_decoder: target side smaller than the side being decoded; "
        "pad the target with a junk subsystem first");

  // Maximize |<target|(1 (x) V)|actual>| = |tr(X V^T)| with X = Mt^dag Ma.
  Mat x = mt.adjoint() * ma;
  Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Mat v = svd.matrixU().conjugate() * svd.matrixV().transpose();

  DecoderResult out;
  const double s = svd.singularValues().sum();
  out.achieved_fidelity = std::min(s * s, 1.0);
  out.v = Isometry(std::move(v), actual.layout.select(movable_actual),
                   target.layout.select(movable_target));
  return out;
}

DecoderResult uhlmann_decoder(const PureState& actual, const PureState& target,
                              const std::vector<std::string>& fixed) {
  return uhlmann_decoder(actual, target, fixed, target.layout.labels_except(fixed));
}

}  // namespace qsm

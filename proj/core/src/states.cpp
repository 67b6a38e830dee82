// SPDX-License-Identifier: Apache-2.0
#include "qsm/states.hpp"

#include <cmath>

namespace qsm {

PureState::PureState(Vec amplitudes, SubsystemLayout lay, bool subnorm)
    : amp(std::move(amplitudes)), layout(std::move(lay)), subnormalized(subnorm) {
  if (amp.size() != layout.total_dim())
    throw invalid_input("amplitude length " + std::to_string(amp.size()) +
                        " != layout dim " + std::to_string(layout.total_dim()) +
                        " (" + layout.to_string() + ")");
  const double n2 = amp.squaredNorm();
  if (subnormalized) {
    if (n2 > 1.0 + tol::state_norm)
      throw invalid_input("subnormalized state has norm^2 > 1");
  } else if (std::abs(n2 - 1.0) > tol::state_norm) {
    throw invalid_input("pure state not normalized: |norm^2 - 1| = " +
                        std::to_string(std::abs(n2 - 1.0)));
  }
}

double PureState::norm2() const { return amp.squaredNorm(); }

DensityOperator::DensityOperator(Mat m, SubsystemLayout lay, bool subnorm)
    : mat(std::move(m)), layout(std::move(lay)), subnormalized(subnorm) {
  if (mat.rows() != mat.cols()) throw invalid_input("density operator must be square");
  if (mat.rows() != layout.total_dim())
    throw invalid_input("density dim " + std::to_string(mat.rows()) +
                        " != layout dim " + std::to_string(layout.total_dim()));
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol::density)
    throw invalid_input("density operator not Hermitian within tolerance");
  const double tr = mat.trace().real();
  if (subnormalized) {
    if (tr > 1.0 + tol::density || tr < -tol::density)
      throw invalid_input("subnormalized density trace outside [0,1]");
  } else if (std::abs(tr - 1.0) > tol::density) {
    throw invalid_input("density trace != 1: " + std::to_string(tr));
  }
  // PSD within drift tolerance. An eigensolve per construction is acceptable
  // at the dimensions this library targets; it catches sign errors early.
  Eigen::SelfAdjointEigenSolver<Mat> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::density)
    throw invalid_input("density operator has eigenvalue < -1e-10");
}

double DensityOperator::trace() const { return mat.trace().real(); }

Isometry::Isometry(Mat m, SubsystemLayout in, SubsystemLayout out)
    : mat(std::move(m)), input(std::move(in)), output(std::move(out)) {
  if (mat.cols() != input.total_dim() || mat.rows() != output.total_dim())
    throw invalid_input("isometry shape does not match layouts");
  if (mat.rows() < mat.cols())
    throw invalid_input("isometry output dim must be >= input dim");
  Mat gram = mat.adjoint() * mat;
  gram -= Mat::Identity(mat.cols(), mat.cols());
  if (gram.cwiseAbs().maxCoeff() > tol::isometry)
    throw invalid_input("V^dag V != I within tolerance");
}

KrausChannel::KrausChannel(std::vector<Mat> ops, SubsystemLayout in, SubsystemLayout out)
    : kraus(std::move(ops)), input(std::move(in)), output(std::move(out)) {
  if (kraus.empty()) throw invalid_input("channel needs at least one Kraus operator");
  const Index din = input.total_dim(), dout = output.total_dim();
  Mat sum = Mat::Zero(din, din);
  for (const auto& k : kraus) {
    if (k.rows() != dout || k.cols() != din)
      throw invalid_input("Kraus operator shape does not match layouts");
    sum += k.adjoint() * k;
  }
  sum -= Mat::Identity(din, din);
  if (sum.cwiseAbs().maxCoeff() > tol::isometry)
    throw invalid_input("sum K^dag K != I within tolerance");
}

DensityOperator density_from_pure(const PureState& psi) {
  return DensityOperator(psi.amp * psi.amp.adjoint(), psi.layout, psi.subnormalized);
}

}  // namespace qsm
